#ifndef GFL_FRACCALC_HPP
#define GFL_FRACCALC_HPP

#include <functional>
#include <utility>
#include <vector>

namespace gfl::fraccalc {

/// Fractional order restricted to (0,1); construction throws otherwise.
class FracOrder {
  public:
    explicit FracOrder(double alpha);
    double value() const { return alpha_; }

  private:
    double alpha_;
};

/// Strictly increasing time nodes spanning [c, d], at least 3 of them.
class TimeGrid {
  public:
    explicit TimeGrid(std::vector<double> nodes);
    static TimeGrid uniform(double c, double d, std::size_t count);

    double c() const { return nodes_.front(); }
    double d() const { return nodes_.back(); }
    std::size_t size() const { return nodes_.size(); }
    double node(std::size_t i) const { return nodes_[i]; }
    const std::vector<double>& nodes() const { return nodes_; }

  private:
    std::vector<double> nodes_;
};

/// Function samples aligned with a TimeGrid; all values must be finite.
struct SampledFunction {
    TimeGrid grid;
    std::vector<double> values;

    SampledFunction(TimeGrid g, std::vector<double> v);
    static SampledFunction sample(const TimeGrid& g, const std::function<double(double)>& f);
    bool shares_grid_with(const SampledFunction& other) const;
};

/// The decaying weight (1 - t/T)_+^sigma used by the time cutoffs.
struct WeightW1 {
    double T;
    double sigma;

    WeightW1(double T_, double sigma_);
    double operator()(double t) const;
};

/// Smallest sigma that keeps every moment integral below integrable with
/// margin >= 1: max(12, ceil(2(m+alpha)p/(p-1) + 2)).
double default_sigma(int m, double alpha, double p);

/// Left-sided fractional integral of order alpha at t in (c, d]: product
/// integration with the sampled function piecewise linear and the kernel
/// (t-s)^(alpha-1) integrated exactly on every subinterval.
double rl_left_integral(const SampledFunction& f, FracOrder alpha, double t);

/// Right-sided counterpart (kernel (s-t)^(alpha-1) over [t, d)), t in [c, d).
double rl_right_integral(const SampledFunction& f, FracOrder alpha, double t);

/// Left-sided fractional derivative d/dt I^(1-alpha) f at t, by a central
/// difference with h = max(1e-6, 1e-4 (d-c)). The stencil must fit inside
/// (c, d]; throws a domain error otherwise. The sampled f must be smooth
/// enough that the order-(1-alpha) integral is differentiable at t.
double rl_left_derivative(const SampledFunction& f, FracOrder alpha, double t);

/// Right-sided fractional derivative -d/dt I^(1-alpha) over [t, d).
double rl_right_derivative(const SampledFunction& f, FracOrder alpha, double t);

/// Closed form of the right-sided derivative of order m+alpha of WeightW1:
///   Gamma(sigma+1)/Gamma(sigma+1-m-alpha) T^-(m+alpha) (1-t/T)^(sigma-alpha-m)
/// for 0 <= t <= T.
double w1_right_derivative(double t, const WeightW1& w, int m, FracOrder alpha);

struct MomentResult {
    double value;
    double constant;
};

/// Weighted L^(p') moment of the order-(m+alpha) derivative of w1:
///   integral over [0,T] of w1^(-1/(p-1)) |D^(m+alpha) w1|^(p/(p-1)) dt
/// = constant * T^(1-(m+alpha)p/(p-1)),
/// constant = [Gamma(sigma+1)/Gamma(sigma+1-m-alpha)]^(p/(p-1))
///            / (sigma - (m+alpha)p/(p-1) + 1).
/// Requires sigma - (m+alpha)p/(p-1) > -1.
MomentResult w1_lp_moment(const WeightW1& w, int m, FracOrder alpha, double p);

/// Mean of the order-(m+alpha) derivative of w1 over [0,T]:
///   (1/T) integral D^(m+alpha) w1 dt
/// = constant * T^-(m+alpha), constant = Gamma(sigma+1)/Gamma(sigma+2-m-alpha).
/// Requires sigma - m - alpha > -1.
MomentResult w1_mean_derivative(const WeightW1& w, int m, FracOrder alpha);

/// | integral f D^alpha_left g - integral g D^alpha_right f | on the shared
/// grid, both sides by composite trapezoid over pointwise fractional
/// derivatives. Small for continuous pairs whose fractional derivatives are
/// continuous on [c,d] (for this 1/p + 1/q <= 1 + alpha suffices).
double ibp_residual(const SampledFunction& f, const SampledFunction& g, FracOrder alpha);

/// Residual of -(d/dt) D^alpha w1 = D^(1+alpha) w1, both orders from the
/// closed form, d/dt by a second-order central stencil on the grid; returns
/// the max over interior nodes (the t = T endpoint is excluded).
double ddt_right_derivative_residual(const WeightW1& w, FracOrder alpha, const TimeGrid& grid);

}  // namespace gfl::fraccalc

#endif
