#include "gfl/fraccalc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gfl/util.hpp"

namespace gfl::fraccalc {

namespace {

double fd_step(const TimeGrid& g) { return std::max(1e-6, 1e-4 * (g.d() - g.c())); }

}  // namespace

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("FracOrder: alpha must lie in (0,1)");
}

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 3) throw std::invalid_argument("TimeGrid: need at least 3 nodes");
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        if (!(nodes_[i] < nodes_[i + 1]))
            throw std::invalid_argument("TimeGrid: nodes must be strictly increasing");
    }
    if (!std::isfinite(nodes_.front()) || !std::isfinite(nodes_.back()))
        throw std::invalid_argument("TimeGrid: endpoints must be finite");
}

TimeGrid TimeGrid::uniform(double c, double d, std::size_t count) {
    if (!(c < d)) throw std::invalid_argument("TimeGrid::uniform: c < d required");
    if (count < 3) throw std::invalid_argument("TimeGrid::uniform: count >= 3");
    std::vector<double> nodes(count);
    const double h = (d - c) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) nodes[i] = c + h * static_cast<double>(i);
    nodes.back() = d;
    return TimeGrid(std::move(nodes));
}

SampledFunction::SampledFunction(TimeGrid g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size())
        throw std::invalid_argument("SampledFunction: values/nodes count mismatch");
    for (double x : values)
        if (!std::isfinite(x)) throw std::invalid_argument("SampledFunction: non-finite value");
}

SampledFunction SampledFunction::sample(const TimeGrid& g, const std::function<double(double)>& f) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.node(i));
    return SampledFunction(g, std::move(v));
}

bool SampledFunction::shares_grid_with(const SampledFunction& other) const {
    return grid.nodes() == other.grid.nodes();
}

WeightW1::WeightW1(double T_, double sigma_) : T(T_), sigma(sigma_) {
    if (!(T > 0.0)) throw std::invalid_argument("WeightW1: T must be positive");
    if (!(sigma > 0.0)) throw std::invalid_argument("WeightW1: sigma must be positive");
}

double WeightW1::operator()(double t) const {
    const double x = 1.0 - t / T;
    return x > 0.0 ? std::pow(x, sigma) : 0.0;
}

double default_sigma(int m, double alpha, double p) {
    const double pprime = p / (p - 1.0);
    return std::max(12.0, std::ceil(2.0 * (m + alpha) * pprime + 2.0));
}

double rl_left_integral(const SampledFunction& f, FracOrder alpha, double t) {
    const TimeGrid& g = f.grid;
    if (!(t > g.c() && t <= g.d()))
        throw std::domain_error("rl_left_integral: t must lie in (c, d]");
    const double mu = alpha.value();
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < g.size(); ++j) {
        const double a = g.node(j);
        if (a >= t) break;
        const double b_full = g.node(j + 1);
        const double b = std::min(b_full, t);
        const double slope = (f.values[j + 1] - f.values[j]) / (b_full - a);
        const auto m = gfl::power_moments_descending(b >= t ? 0.0 : t - b, b - a, mu);
        acc += f.values[j] * m.m0 + slope * (b - a) * m.m1_avg;
    }
    return acc / std::tgamma(mu);
}

double rl_right_integral(const SampledFunction& f, FracOrder alpha, double t) {
    const TimeGrid& g = f.grid;
    if (!(t >= g.c() && t < g.d()))
        throw std::domain_error("rl_right_integral: t must lie in [c, d)");
    const double mu = alpha.value();
    double acc = 0.0;
    // mirror: integrate (s-t)^(mu-1) over cells to the right of t
    for (std::size_t j = g.size() - 1; j-- > 0;) {
        const double b_full = g.node(j + 1);
        if (b_full <= t) break;
        const double a_full = g.node(j);
        const double a = std::max(a_full, t);
        const double slope = (f.values[j + 1] - f.values[j]) / (b_full - a_full);
        const auto m = gfl::power_moments_ascending(a <= t ? 0.0 : a - t, b_full - a, mu);
        // the first moment pairs with (s - a); shift to the origin a_full
        acc += f.values[j] * m.m0 + slope * ((b_full - a) * m.m1_avg + (a - a_full) * m.m0);
    }
    return acc / std::tgamma(mu);
}

double rl_left_derivative(const SampledFunction& f, FracOrder alpha, double t) {
    const TimeGrid& g = f.grid;
    const double h = fd_step(g);
    if (!(t - h > g.c() && t + h <= g.d()))
        throw std::domain_error("rl_left_derivative: t too close to an endpoint for the stencil");
    const FracOrder complement(1.0 - alpha.value());
    const double lo = rl_left_integral(f, complement, t - h);
    const double hi = rl_left_integral(f, complement, t + h);
    return (hi - lo) / (2.0 * h);
}

double rl_right_derivative(const SampledFunction& f, FracOrder alpha, double t) {
    const TimeGrid& g = f.grid;
    const double h = fd_step(g);
    if (!(t - h >= g.c() && t + h < g.d()))
        throw std::domain_error("rl_right_derivative: t too close to an endpoint for the stencil");
    const FracOrder complement(1.0 - alpha.value());
    const double lo = rl_right_integral(f, complement, t - h);
    const double hi = rl_right_integral(f, complement, t + h);
    return -(hi - lo) / (2.0 * h);
}

double w1_right_derivative(double t, const WeightW1& w, int m, FracOrder alpha) {
    if (m < 0) throw std::invalid_argument("w1_right_derivative: m >= 0");
    if (!(t >= 0.0 && t <= w.T)) throw std::domain_error("w1_right_derivative: t outside [0, T]");
    const double a = alpha.value();
    const double order = static_cast<double>(m) + a;
    if (!(w.sigma - order > -1.0))
        throw std::domain_error("w1_right_derivative: sigma - m - alpha must exceed -1");
    const double ratio = gfl::gamma_ratio(w.sigma + 1.0, w.sigma + 1.0 - order);
    const double x = 1.0 - t / w.T;
    return ratio * std::pow(w.T, -order) * std::pow(x, w.sigma - order);
}

MomentResult w1_lp_moment(const WeightW1& w, int m, FracOrder alpha, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("w1_lp_moment: p > 1 required");
    const double a = alpha.value();
    const double order = static_cast<double>(m) + a;
    const double pprime = p / (p - 1.0);
    const double tail = w.sigma - order * pprime;  // exponent of (1 - t/T) in the integrand
    if (!(tail > -1.0))
        throw std::domain_error("w1_lp_moment: sigma too small for integrability");
    const double ratio = gfl::gamma_ratio(w.sigma + 1.0, w.sigma + 1.0 - order);
    const double C = std::pow(ratio, pprime) / (tail + 1.0);
    return {C * std::pow(w.T, 1.0 - order * pprime), C};
}

MomentResult w1_mean_derivative(const WeightW1& w, int m, FracOrder alpha) {
    const double a = alpha.value();
    const double order = static_cast<double>(m) + a;
    if (!(w.sigma - order > -1.0))
        throw std::domain_error("w1_mean_derivative: sigma - m - alpha must exceed -1");
    const double C = gfl::gamma_ratio(w.sigma + 1.0, w.sigma + 2.0 - order);
    return {C * std::pow(w.T, -order), C};
}

double ibp_residual(const SampledFunction& f, const SampledFunction& g, FracOrder alpha) {
    if (!f.shares_grid_with(g)) throw std::invalid_argument("ibp_residual: grids differ");
    const TimeGrid& grid = f.grid;
    const std::size_t n = grid.size();
    const double h = fd_step(grid);
    const FracOrder complement(1.0 - alpha.value());

    // Pointwise fractional derivatives with the central stencil clamped to a
    // one-sided difference in the h-bands at the ends; the bands are O(1e-4)
    // of the interval, so their first-order error is immaterial after the
    // final integration.
    auto left_deriv = [&](const SampledFunction& fn, double t) {
        double lo = std::max(grid.c(), t - h);
        double hi = std::min(grid.d(), t + h);
        auto I = [&](double s) {
            return s <= grid.c() ? 0.0 : rl_left_integral(fn, complement, s);
        };
        return (I(hi) - I(lo)) / (hi - lo);
    };
    auto right_deriv = [&](const SampledFunction& fn, double t) {
        double lo = std::max(grid.c(), t - h);
        double hi = std::min(grid.d(), t + h);
        auto I = [&](double s) {
            return s >= grid.d() ? 0.0 : rl_right_integral(fn, complement, s);
        };
        return -(I(hi) - I(lo)) / (hi - lo);
    };

    std::vector<double> lhs(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = grid.node(i);
        lhs[i] = f.values[i] * left_deriv(g, t);
        rhs[i] = g.values[i] * right_deriv(f, t);
    }
    auto trapz = [&](const std::vector<double>& v) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            acc += 0.5 * (v[i] + v[i + 1]) * (grid.node(i + 1) - grid.node(i));
        return acc;
    };
    return std::abs(trapz(lhs) - trapz(rhs));
}

double ddt_right_derivative_residual(const WeightW1& w, FracOrder alpha, const TimeGrid& grid) {
    if (!(grid.c() >= 0.0 && grid.d() <= w.T))
        throw std::domain_error("ddt_right_derivative_residual: grid must lie inside [0, T]");
    const std::size_t n = grid.size();
    std::vector<double> lower(n);
    for (std::size_t i = 0; i < n; ++i)
        lower[i] = w1_right_derivative(grid.node(i), w, 0, alpha);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (grid.node(i) >= w.T) continue;
        const double hm = grid.node(i) - grid.node(i - 1);
        const double hp = grid.node(i + 1) - grid.node(i);
        // second-order three-point derivative, valid on mildly nonuniform grids
        const double ddt = (lower[i + 1] * hm * hm - lower[i - 1] * hp * hp +
                            lower[i] * (hp * hp - hm * hm)) /
                           (hm * hp * (hm + hp));
        const double higher = w1_right_derivative(grid.node(i), w, 1, alpha);
        worst = std::max(worst, std::abs(-ddt - higher));
    }
    return worst;
}

}  // namespace gfl::fraccalc
