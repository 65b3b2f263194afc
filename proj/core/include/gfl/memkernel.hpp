#ifndef GFL_MEMKERNEL_HPP
#define GFL_MEMKERNEL_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace gfl::memkernel {

/// Piecewise-constant product-integration weights for the kernel (t-s)^-gamma
/// on the first n intervals of a uniform step grid:
///   w_j = [(t_n - t_j)^(1-gamma) - (t_n - t_(j+1))^(1-gamma)] / (1-gamma).
/// Their sum telescopes to t_n^(1-gamma)/(1-gamma) exactly.
std::vector<double> kernel_weights(std::size_t n, double dt, double gamma);

/// Same weights on an arbitrary realized schedule times[0..n] (evaluation
/// time is times[n]).
std::vector<double> kernel_weights_at(std::span<const double> times, double gamma);

/// Coefficients c_j such that the piecewise-LINEAR product integration of
/// integral (t_n - s)^-gamma g(s) ds over [t_0, t_n] equals sum c_j g(t_j).
/// times[0..n] with t_n the evaluation time; returns n+1 coefficients.
std::vector<double> linear_convolution_coefficients(std::span<const double> times, double gamma);

/// Scalar convolution integral (t_n - s)^-gamma g(s) ds with the
/// piecewise-linear rule; g aligned with times, evaluation at times.back().
double convolve(std::span<const double> times, std::span<const double> g, double gamma);

/// Sum-of-exponentials compression of t^-gamma built from the log-trapezoid
/// discretization of its Laplace representation. Valid on [tau_min, tau_max].
class ExpSumKernel {
  public:
    ExpSumKernel(double gamma, double tau_min, double tau_max, std::size_t modes);

    std::size_t modes() const { return lambda_.size(); }
    const std::vector<double>& rates() const { return lambda_; }
    const std::vector<double>& weights() const { return weight_; }

    /// Approximate kernel value sum w_m exp(-lambda_m tau).
    double eval(double tau) const;
    /// Largest relative deviation from tau^-gamma over a log sample of
    /// [tau_min, tau_max].
    double relative_error() const;

    double tau_min() const { return tau_min_; }
    double tau_max() const { return tau_max_; }

  private:
    double gamma_;
    double tau_min_, tau_max_;
    std::vector<double> lambda_;
    std::vector<double> weight_;
};

/// History state for one exponential mode: y = integral over [0, t_(n-1)] of
/// exp(-lambda (t_n - s)) g(s) ds, advanced one interval at a time with
/// piecewise-linear g. Scalar version; the field stepper keeps one value per
/// node per mode.
struct ExpMoments {
    double decay;  // exp(-lambda delta)
    double c0;     // coefficient of g at the interval start
    double c1;     // coefficient of g at the interval end
};

/// Closed-form moments of exp(-lambda (t_end - s)) against the linear
/// interpolant on an interval of length delta ending at t_end.
ExpMoments exp_moments(double lambda, double delta);

}  // namespace gfl::memkernel

#endif
