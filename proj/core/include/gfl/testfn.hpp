#ifndef GFL_TESTFN_HPP
#define GFL_TESTFN_HPP

#include <array>

#include "gfl/grushin.hpp"

namespace gfl::testfn {

/// Smooth nonincreasing cutoffs realized as quintic smoothsteps:
///   Phi = 1 on (-inf,1], 0 on [2,inf), C^2, |Phi'| <= 4, |Phi''| <= 16;
///   eta = 1 on (-inf,1/2], 0 on [1,inf), same construction on [1/2,1].
struct CutoffProfile {
    /// (Phi, Phi', Phi'') at xi.
    static std::array<double, 3> phi_derivatives(double xi);
    /// (eta, eta', eta'') at xi.
    static std::array<double, 3> eta_derivatives(double xi);
};

struct RhsT1 {
    double total;
    std::array<double, 5> terms;  // time-derivative term, then the four spatial ones
};

/// The five right-hand integrals of the rescaled weak formulation without
/// memory, with cutoffs Phi(|x|/T^(1/2)), Phi(|y|/T), eta(t/T) and exponent
/// l = 2p/(p-1). Every term scales like T^(-p' + N/2 + k + 1).
RhsT1 weak_rhs_T1(double T, double p, const grushin::GrushinDims& dims);

struct RhsT2 {
    double termA;  // T^(1-(1+alpha)p') R^(N/2+k) group
    double termB;  // T^(1-alpha p') R^(-p'+N/2+k) group
};

/// The two aggregate right-hand groups of the memory-case weak formulation,
/// with cutoffs Phi(|x|/R^(1/2)), Phi(|y|/R), (1-t/T)_+ and the time factors
/// taken from the closed-form weight moments (orders alpha and 1+alpha,
/// alpha = 1-gamma).
RhsT2 weak_rhs_T2(double T, double R, double p, double gamma, const grushin::GrushinDims& dims);

struct CriticalExponents {
    double p_c1;  // 1 + 2/(N+2k)
    double p_0;   // 1 + 2(2-gamma)/(N+2k-2+2gamma)
    double p_c2;  // max(p_0, 1/gamma); +infinity at gamma = 0
};

CriticalExponents critical_exponents(const grushin::GrushinDims& dims, double gamma);

/// Least-squares slope of log(value) against log(scale).
double fit_log_slope(const std::vector<double>& scales, const std::vector<double>& values);

}  // namespace gfl::testfn

#endif
