#ifndef GFL_QUADRATURE_HPP
#define GFL_QUADRATURE_HPP

#include <functional>

namespace gfl::quad {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;  // accumulated local Kronrod-Gauss differences
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (7,15) integration of f over [a, b].
/// Terminates when every subinterval satisfies the mixed tolerance
/// |GK15 - G7| <= abs_tol_local + rel_tol * |running integral|.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 1e-14,
                 int max_subdivisions = 4000);

/// Convenience wrapper returning just the value.
double integral(const std::function<double(double)>& f, double a, double b,
                double rel_tol = 1e-10, double abs_tol = 1e-14);

/// Integrates f(s) * (b - s)^(mu - 1) over [a, b] for mu in (0, 1]; the
/// endpoint singularity at s = b is removed by the substitution
/// u = (b - s)^mu before handing off to the adaptive rule.
double integral_right_singular(const std::function<double(double)>& f,
                               double a, double b, double mu,
                               double rel_tol = 1e-10, double abs_tol = 1e-14);

/// Same with the singular factor (s - a)^(mu - 1) at the left endpoint.
double integral_left_singular(const std::function<double(double)>& f,
                              double a, double b, double mu,
                              double rel_tol = 1e-10, double abs_tol = 1e-14);

}  // namespace gfl::quad

#endif
