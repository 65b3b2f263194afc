#include "gfl/testfn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gfl/fraccalc.hpp"
#include "gfl/quadrature.hpp"
#include "gfl/util.hpp"

namespace gfl::testfn {

namespace {

// radial integral of f(xi) xi^(d-1) over [0, 2] including the sphere area
double radial_integral(const std::function<double(double)>& f, int d) {
    auto g = [&](double xi) { return f(xi) * std::pow(xi, d - 1); };
    return gfl::unit_sphere_area(d) * gfl::quad::integral(g, 0.0, 2.0, 1e-11, 1e-15);
}

}  // namespace

std::array<double, 3> CutoffProfile::phi_derivatives(double xi) {
    if (xi <= 1.0) return {1.0, 0.0, 0.0};
    if (xi >= 2.0) return {0.0, 0.0, 0.0};
    const double u = xi - 1.0;
    return {1.0 - gfl::smoothstep5(u), -gfl::smoothstep5_d1(u), -gfl::smoothstep5_d2(u)};
}

std::array<double, 3> CutoffProfile::eta_derivatives(double xi) {
    if (xi <= 0.5) return {1.0, 0.0, 0.0};
    if (xi >= 1.0) return {0.0, 0.0, 0.0};
    const double u = 2.0 * (xi - 0.5);
    return {1.0 - gfl::smoothstep5(u), -2.0 * gfl::smoothstep5_d1(u), -4.0 * gfl::smoothstep5_d2(u)};
}

RhsT1 weak_rhs_T1(double T, double p, const grushin::GrushinDims& dims) {
    if (!(T >= 1.0)) throw std::invalid_argument("weak_rhs_T1: T >= 1");
    if (!(p > 1.0)) throw std::invalid_argument("weak_rhs_T1: p > 1");
    const double pp = p / (p - 1.0);
    const double ell = 2.0 * pp;
    const int N = dims.N, k = dims.k;

    auto phi = [](double xi) { return CutoffProfile::phi_derivatives(xi); };

    // scale-free profile factors
    const double x_plateau = radial_integral([&](double xi) { return std::pow(phi(xi)[0], ell); }, N);
    const double y_plateau = radial_integral([&](double xi) { return std::pow(phi(xi)[0], ell); }, k);
    const double t_plateau = gfl::quad::integral(
        [&](double tau) { return std::pow(CutoffProfile::eta_derivatives(tau)[0], ell); }, 0.0, 1.0);

    const double t_deriv = gfl::quad::integral(
        [&](double tau) {
            const auto e = CutoffProfile::eta_derivatives(tau);
            return std::pow(e[0], pp) * std::pow(std::abs(e[1]), pp);
        },
        0.0, 1.0);
    const double x_grad = radial_integral(
        [&](double xi) { return std::pow(std::abs(phi(xi)[1]), 2.0 * pp); }, N);
    const double x_lap = radial_integral(
        [&](double xi) {
            const auto v = phi(xi);
            const double lap = v[2] + (N - 1) * (xi > 0.0 ? v[1] / xi : 0.0);
            return std::pow(v[0], pp) * std::pow(std::abs(lap), pp);
        },
        N);
    const double x_plateau_weighted = radial_integral(
        [&](double xi) { return std::pow(xi, 2.0 * pp) * std::pow(phi(xi)[0], ell); }, N);
    const double y_grad = radial_integral(
        [&](double xi) { return std::pow(std::abs(phi(xi)[1]), 2.0 * pp); }, k);
    const double y_lap = radial_integral(
        [&](double xi) {
            const auto v = phi(xi);
            const double lap = v[2] + (k - 1) * (xi > 0.0 ? v[1] / xi : 0.0);
            return std::pow(v[0], pp) * std::pow(std::abs(lap), pp);
        },
        k);

    // anisotropic scalings: |x| ~ T^(1/2), |y| ~ T, t ~ T
    const double sx = std::pow(T, 0.5 * N);
    const double sy = std::pow(T, static_cast<double>(k));
    RhsT1 out{};
    out.terms[0] = std::pow(T, 1.0 - pp) * t_deriv * sx * x_plateau * sy * y_plateau;
    out.terms[1] = std::pow(T, -pp) * x_grad * sx * sy * y_plateau * T * t_plateau;
    out.terms[2] = std::pow(T, -pp) * x_lap * sx * sy * y_plateau * T * t_plateau;
    out.terms[3] = std::pow(T, pp) * x_plateau_weighted * sx * std::pow(T, -2.0 * pp) * y_grad * sy *
                   T * t_plateau;
    out.terms[4] = std::pow(T, pp) * x_plateau_weighted * sx * std::pow(T, -2.0 * pp) * y_lap * sy *
                   T * t_plateau;
    out.total = out.terms[0] + out.terms[1] + out.terms[2] + out.terms[3] + out.terms[4];
    return out;
}

RhsT2 weak_rhs_T2(double T, double R, double p, double gamma, const grushin::GrushinDims& dims) {
    if (!(T >= 1.0 && R >= 1.0)) throw std::invalid_argument("weak_rhs_T2: T, R >= 1");
    if (!(p > 1.0)) throw std::invalid_argument("weak_rhs_T2: p > 1");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("weak_rhs_T2: gamma in (0,1)");
    const double alpha = 1.0 - gamma;
    const double pp = p / (p - 1.0);
    const double ell = 2.0 * pp;
    const int N = dims.N, k = dims.k;

    // time factors: the cutoff (1-t/T)_+^l is the closed-form weight with
    // sigma = l, so the two groups carry its weighted moments of orders
    // 1+alpha and alpha.
    const fraccalc::WeightW1 w(T, ell);
    const fraccalc::FracOrder order(alpha);
    const double timeA = fraccalc::w1_lp_moment(w, 1, order, p).value;
    const double timeB = fraccalc::w1_lp_moment(w, 0, order, p).value;

    auto phi = [](double xi) { return CutoffProfile::phi_derivatives(xi); };
    const double x_plateau = radial_integral([&](double xi) { return std::pow(phi(xi)[0], ell); }, N);
    const double y_plateau = radial_integral([&](double xi) { return std::pow(phi(xi)[0], ell); }, k);
    const double x_grad = radial_integral(
        [&](double xi) { return std::pow(std::abs(phi(xi)[1]), 2.0 * pp); }, N);
    const double x_lap = radial_integral(
        [&](double xi) {
            const auto v = phi(xi);
            const double lap = v[2] + (N - 1) * (xi > 0.0 ? v[1] / xi : 0.0);
            return std::pow(v[0], pp) * std::pow(std::abs(lap), pp);
        },
        N);
    const double x_plateau_weighted = radial_integral(
        [&](double xi) { return std::pow(xi, 2.0 * pp) * std::pow(phi(xi)[0], ell); }, N);
    const double y_grad = radial_integral(
        [&](double xi) { return std::pow(std::abs(phi(xi)[1]), 2.0 * pp); }, k);
    const double y_lap = radial_integral(
        [&](double xi) {
            const auto v = phi(xi);
            const double lap = v[2] + (k - 1) * (xi > 0.0 ? v[1] / xi : 0.0);
            return std::pow(v[0], pp) * std::pow(std::abs(lap), pp);
        },
        k);

    const double sx = std::pow(R, 0.5 * N);
    const double sy = std::pow(R, static_cast<double>(k));

    RhsT2 out{};
    out.termA = timeA * sx * x_plateau * sy * y_plateau;
    const double spatial =
        std::pow(R, -pp) * x_grad * y_plateau + std::pow(R, -pp) * x_lap * y_plateau +
        std::pow(R, pp) * x_plateau_weighted * std::pow(R, -2.0 * pp) * y_grad +
        std::pow(R, pp) * x_plateau_weighted * std::pow(R, -2.0 * pp) * y_lap;
    out.termB = timeB * sx * sy * spatial;
    return out;
}

CriticalExponents critical_exponents(const grushin::GrushinDims& dims, double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::invalid_argument("critical_exponents: gamma in [0,1)");
    const double Q = dims.homogeneous_dimension();
    CriticalExponents e{};
    e.p_c1 = 1.0 + 2.0 / Q;
    e.p_0 = 1.0 + 2.0 * (2.0 - gamma) / (Q - 2.0 + 2.0 * gamma);
    const double inv_gamma =
        gamma > 0.0 ? 1.0 / gamma : std::numeric_limits<double>::infinity();
    e.p_c2 = std::max(e.p_0, inv_gamma);
    return e;
}

double fit_log_slope(const std::vector<double>& scales, const std::vector<double>& values) {
    if (scales.size() != values.size() || scales.size() < 2)
        throw std::invalid_argument("fit_log_slope: need matching samples, at least two");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const double x = std::log(scales[i]);
        const double y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace gfl::testfn
