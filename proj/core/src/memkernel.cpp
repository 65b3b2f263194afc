#include "gfl/memkernel.hpp"

#include <cmath>
#include <stdexcept>

#include "gfl/util.hpp"

namespace gfl::memkernel {

namespace {

void check_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::invalid_argument("memory kernel: gamma must lie in [0,1)");
}

// (exp(-z) - 1 + z)/z^2, stable near zero.
double phi2(double z) {
    if (std::abs(z) < 1e-5) return 0.5 - z / 6.0 + z * z / 24.0;
    return (std::expm1(-z) + z) / (z * z);
}

}  // namespace

std::vector<double> kernel_weights(std::size_t n, double dt, double gamma) {
    check_gamma(gamma);
    if (n < 1) throw std::invalid_argument("kernel_weights: n >= 1");
    const double beta = 1.0 - gamma;
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double gap = static_cast<double>(n - j - 1) * dt;  // t_n - t_(j+1)
        w[j] = gfl::power_moments_ascending(gap, dt, beta).m0;
    }
    return w;
}

std::vector<double> kernel_weights_at(std::span<const double> times, double gamma) {
    check_gamma(gamma);
    if (times.size() < 2) throw std::invalid_argument("kernel_weights_at: need >= 2 times");
    const double beta = 1.0 - gamma;
    const double tn = times.back();
    std::vector<double> w(times.size() - 1);
    for (std::size_t j = 0; j + 1 < times.size(); ++j) {
        const double gap = j + 2 == times.size() ? 0.0 : tn - times[j + 1];
        w[j] = gfl::power_moments_ascending(gap, times[j + 1] - times[j], beta).m0;
    }
    return w;
}

std::vector<double> linear_convolution_coefficients(std::span<const double> times, double gamma) {
    check_gamma(gamma);
    if (times.size() < 2)
        throw std::invalid_argument("linear_convolution_coefficients: need >= 2 times");
    const double beta = 1.0 - gamma;
    const double tn = times.back();
    std::vector<double> c(times.size(), 0.0);
    for (std::size_t j = 0; j + 1 < times.size(); ++j) {
        const double delta = times[j + 1] - times[j];
        const double gap = j + 2 == times.size() ? 0.0 : tn - times[j + 1];
        const auto m = gfl::power_moments_descending(gap, delta, beta);
        c[j] += m.m0 - m.m1_avg;
        c[j + 1] += m.m1_avg;
    }
    return c;
}

double convolve(std::span<const double> times, std::span<const double> g, double gamma) {
    if (times.size() != g.size()) throw std::invalid_argument("convolve: size mismatch");
    const auto c = linear_convolution_coefficients(times, gamma);
    double acc = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) acc += c[j] * g[j];
    return acc;
}

ExpSumKernel::ExpSumKernel(double gamma, double tau_min, double tau_max, std::size_t modes)
    : gamma_(gamma), tau_min_(tau_min), tau_max_(tau_max) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("ExpSumKernel: gamma in (0,1) (gamma = 0 needs no compression)");
    if (!(tau_min > 0.0 && tau_min < tau_max)) throw std::invalid_argument("ExpSumKernel: bad tau range");
    if (modes < 8) throw std::invalid_argument("ExpSumKernel: at least 8 modes");
    // Laplace representation tau^-gamma = (1/Gamma(gamma)) int lambda^(gamma-1)
    // exp(-lambda tau) dlambda, discretized by the trapezoid rule in
    // v = log(lambda). The low-lambda cutoff controls the error at tau_max
    // (power-gamma truncation), the high end the error at tau_min.
    const double low_tol = 1e-6 * std::tgamma(gamma + 1.0);
    const double lambda_min = std::pow(low_tol, 1.0 / gamma) / tau_max;
    const double lambda_max = 36.0 / tau_min;
    const double v_min = std::log(lambda_min), v_max = std::log(lambda_max);
    const double dv = (v_max - v_min) / static_cast<double>(modes - 1);
    lambda_.resize(modes);
    weight_.resize(modes);
    const double norm = dv / std::tgamma(gamma);
    for (std::size_t m = 0; m < modes; ++m) {
        const double v = v_min + dv * static_cast<double>(m);
        lambda_[m] = std::exp(v);
        double w = norm * std::pow(lambda_[m], gamma);
        if (m == 0 || m + 1 == modes) w *= 0.5;
        weight_[m] = w;
    }
}

double ExpSumKernel::eval(double tau) const {
    double acc = 0.0;
    for (std::size_t m = 0; m < lambda_.size(); ++m)
        acc += weight_[m] * std::exp(-lambda_[m] * tau);
    return acc;
}

double ExpSumKernel::relative_error() const {
    const int samples = 400;
    const double lmin = std::log(tau_min_), lmax = std::log(tau_max_);
    double worst = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double tau = std::exp(lmin + (lmax - lmin) * i / static_cast<double>(samples));
        const double exact = std::pow(tau, -gamma_);
        worst = std::max(worst, std::abs(eval(tau) - exact) / exact);
    }
    return worst;
}

ExpMoments exp_moments(double lambda, double delta) {
    const double z = lambda * delta;
    ExpMoments m;
    m.decay = std::exp(-z);
    const double i0 = delta * gfl::phi1(z);
    const double i1 = delta * delta * phi2(z);
    m.c0 = i0 - i1 / delta;
    m.c1 = i1 / delta;
    return m;
}

}  // namespace gfl::memkernel
