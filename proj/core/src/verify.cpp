#include "gfl/verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "gfl/fraccalc.hpp"
#include "gfl/grushin.hpp"
#include "gfl/quadrature.hpp"
#include "gfl/testfn.hpp"
#include "gfl/util.hpp"

namespace gfl::verify {

namespace {

Check make_check(std::string id, double measured, double tolerance, bool at_least = false) {
    Check c{std::move(id), measured, tolerance, at_least, false};
    c.pass = at_least ? (measured >= tolerance) : (measured <= tolerance);
    return c;
}

double scaled(double tol, double scale) { return tol * scale; }

// ---------------------------------------------------------------- fraccalc

double w1_value(double t, double T, double sigma) {
    const double x = 1.0 - t / T;
    return x > 0.0 ? std::pow(x, sigma) : 0.0;
}

// I^(1-alpha) of the weight from t (may be negative) to T, by adaptive
// quadrature with the left-endpoint singularity substituted away.
double right_integral_of_w1(double t, double T, double sigma, double eta) {
    auto f = [&](double s) { return w1_value(s, T, sigma); };
    const double integral = quad::integral_left_singular(f, t, T, eta, 1e-12, 1e-18);
    return integral / std::tgamma(eta);
}

struct FracCase {
    double sigma, alpha, T;
    int m;
};

std::vector<FracCase> frac_grid() {
    std::vector<FracCase> grid;
    for (double sigma : {10.0, 14.0})
        for (int m : {0, 1})
            for (double alpha : {0.25, 0.5, 0.75})
                for (double T : {1.0, 2.0}) grid.push_back({sigma, alpha, T, m});
    return grid;
}

std::vector<Check> fraccalc_suite(double scale) {
    std::vector<Check> checks;

    // closed-form derivative of the weight vs quadrature + differencing
    {
        double worst = 0.0;
        for (const auto& c : frac_grid()) {
            const fraccalc::WeightW1 w(c.T, c.sigma);
            const fraccalc::FracOrder order(c.alpha);
            for (double frac : {0.0, 0.25, 0.5}) {
                const double t = frac * c.T;
                const double exact = fraccalc::w1_right_derivative(t, w, c.m, order);
                const double probe = w1_right_derivative_oracle(t, c.T, c.sigma, c.m, c.alpha);
                worst = std::max(worst, std::abs(probe - exact) / std::abs(exact));
            }
        }
        checks.push_back(make_check("fraccalc.w1-derivative-closed-vs-quadrature", worst,
                                    scaled(1e-4, scale)));
    }

    // weighted Lp moment: closed form vs direct quadrature of the integrand
    {
        double worst = 0.0;
        for (const auto& c : frac_grid()) {
            const fraccalc::WeightW1 w(c.T, c.sigma);
            const fraccalc::FracOrder order(c.alpha);
            for (double p : {1.5, 2.0}) {
                const double pprime = p / (p - 1.0);
                const auto closed = fraccalc::w1_lp_moment(w, c.m, order, p);
                auto integrand = [&](double t) {
                    const double weight = std::pow(w1_value(t, c.T, c.sigma), -1.0 / (p - 1.0));
                    const double deriv = fraccalc::w1_right_derivative(t, w, c.m, order);
                    return weight * std::pow(std::abs(deriv), pprime);
                };
                const double probe = quad::integral(integrand, 0.0, c.T, 1e-11, 1e-18);
                worst = std::max(worst, std::abs(probe - closed.value) / std::abs(closed.value));
            }
        }
        checks.push_back(make_check("fraccalc.w1-lp-moment-vs-quadrature", worst, scaled(1e-8, scale)));
    }

    // mean derivative of the weight: closed form vs averaged quadrature
    {
        double worst = 0.0;
        for (const auto& c : frac_grid()) {
            const fraccalc::WeightW1 w(c.T, c.sigma);
            const fraccalc::FracOrder order(c.alpha);
            const auto closed = fraccalc::w1_mean_derivative(w, c.m, order);
            auto integrand = [&](double t) { return fraccalc::w1_right_derivative(t, w, c.m, order); };
            const double probe = quad::integral(integrand, 0.0, c.T, 1e-11, 1e-18) / c.T;
            worst = std::max(worst, std::abs(probe - closed.value) / std::abs(closed.value));
        }
        checks.push_back(
            make_check("fraccalc.w1-mean-derivative-vs-quadrature", worst, scaled(1e-8, scale)));
    }

    // T-scaling laws hold exactly for the closed forms
    {
        double worst_lp = 0.0, worst_mean = 0.0;
        for (const auto& c : frac_grid()) {
            const fraccalc::FracOrder order(c.alpha);
            const double order_total = c.m + c.alpha;
            for (double p : {1.5, 2.0}) {
                const double pprime = p / (p - 1.0);
                const auto v1 = fraccalc::w1_lp_moment(fraccalc::WeightW1(c.T, c.sigma), c.m, order, p);
                const auto v2 =
                    fraccalc::w1_lp_moment(fraccalc::WeightW1(2.0 * c.T, c.sigma), c.m, order, p);
                const double expected = std::pow(2.0, 1.0 - order_total * pprime);
                worst_lp = std::max(worst_lp, std::abs(v2.value / v1.value / expected - 1.0));
            }
            const auto m1 = fraccalc::w1_mean_derivative(fraccalc::WeightW1(c.T, c.sigma), c.m, order);
            const auto m4 =
                fraccalc::w1_mean_derivative(fraccalc::WeightW1(4.0 * c.T, c.sigma), c.m, order);
            const double expected = std::pow(4.0, -order_total);
            worst_mean = std::max(worst_mean, std::abs(m4.value / m1.value / expected - 1.0));
        }
        checks.push_back(make_check("fraccalc.w1-lp-moment-T-scaling", worst_lp, scaled(1e-12, scale)));
        checks.push_back(
            make_check("fraccalc.w1-mean-derivative-T-scaling", worst_mean, scaled(1e-12, scale)));
    }

    // inversion: derivative of the integral returns the sampled function
    {
        const auto grid = fraccalc::TimeGrid::uniform(0.0, 1.0, 2048);
        auto smooth = [](double s) { return std::sin(2.0 * s) + 1.2; };
        double worst = 0.0;
        for (double a : {0.3, 0.5, 0.7}) {
            const fraccalc::FracOrder order(a);
            std::vector<double> g(grid.size(), 0.0);
            const auto f = fraccalc::SampledFunction::sample(grid, smooth);
            for (std::size_t i = 1; i < grid.size(); ++i)
                g[i] = fraccalc::rl_left_integral(f, order, grid.node(i));
            const fraccalc::SampledFunction gf(grid, std::move(g));
            for (int j = 0; j <= 200; ++j) {
                const double t = 0.02 + (0.98 - 0.02) * j / 200.0;
                const double back = fraccalc::rl_left_derivative(gf, order, t);
                worst = std::max(worst, std::abs(back - smooth(t)));
            }
        }
        checks.push_back(make_check("fraccalc.inversion-residual", worst, scaled(1e-3, scale)));
    }

    // integration by parts, both sides through independent quadratures; the
    // test pairs keep both one-sided derivatives continuous on [c,d] (the
    // sufficient condition for the identity), so each integrand is smooth.
    {
        const auto grid = fraccalc::TimeGrid::uniform(0.0, 1.0, 2048);
        const fraccalc::FracOrder order(0.5);
        const auto sine =
            fraccalc::SampledFunction::sample(grid, [](double t) { return std::sin(M_PI * t); });
        const double residual_sym = fraccalc::ibp_residual(sine, sine, order);

        auto h = [](double s) { return std::cos(1.5 * s) + 0.5; };
        const auto hs = fraccalc::SampledFunction::sample(grid, h);
        std::vector<double> g(grid.size(), 0.0);
        for (std::size_t i = 1; i < grid.size(); ++i)
            g[i] = fraccalc::rl_left_integral(hs, order, grid.node(i));
        const fraccalc::SampledFunction gf(grid, std::move(g));
        const fraccalc::WeightW1 w(1.0, 12.0);
        const auto wf =
            fraccalc::SampledFunction::sample(grid, [&](double t) { return w(t); });
        const double residual_pair = fraccalc::ibp_residual(wf, gf, order);
        checks.push_back(make_check("fraccalc.ibp-residual", std::max(residual_sym, residual_pair),
                                    scaled(1e-3, scale)));
    }

    // -(d/dt) of the order-alpha derivative equals the order-(1+alpha) one
    {
        const fraccalc::WeightW1 w(1.0, 10.0);
        const auto grid = fraccalc::TimeGrid::uniform(0.0, 1.0, 1024);
        const double residual =
            fraccalc::ddt_right_derivative_residual(w, fraccalc::FracOrder(0.5), grid);
        checks.push_back(make_check("fraccalc.ddt-identity-residual", residual, scaled(1e-3, scale)));
    }

    return checks;
}

// ----------------------------------------------------------------- grushin

std::vector<Check> grushin_suite(double scale) {
    std::vector<Check> checks;

    // pointwise comparison-function inequality over low-discrepancy samples
    {
        double worst_slack = -1e300;
        const grushin::GrushinDims dim_cases[] = {{1, 1}, {2, 1}, {2, 2}, {3, 2}};
        for (const auto dims : dim_cases) {
            const double eps = 1.0 / (2.0 * (dims.N + 2) + dims.k);
            for (double A : {1.0, 10.0}) {
                const grushin::ThetaParams params(eps, A, 1.0);
                const double margin = grushin::theta_inequality_margin(params, dims, 100000);
                worst_slack = std::max(worst_slack, -margin);
            }
        }
        checks.push_back(make_check("grushin.theta-margin-slack", worst_slack, scaled(1e-12, scale)));
    }

    // discrete operator against the analytic image of the comparison function
    {
        const grushin::GrushinDims dims{1, 1};
        const auto params = grushin::ThetaParams::defaults(dims);
        std::vector<double> errors;
        for (std::size_t n : {64u, 128u, 256u}) {
            const grushin::BiRadialGrid grid(dims, 8.0, 8.0, n, n);
            const auto op = grushin::assemble(grid);
            const auto theta = grushin::sample_theta(grid, params);
            const auto image = grushin::apply(op, theta);
            double max_err = 0.0, max_val = 0.0;
            for (std::size_t i = 1; i + 1 < grid.n_r; ++i) {
                for (std::size_t j = 1; j + 1 < grid.n_s; ++j) {
                    const double exact =
                        grushin::grushin_theta_analytic(params, dims, grid.r(i), grid.s(j));
                    max_err = std::max(max_err, std::abs(image.at(i, j) - exact));
                    max_val = std::max(max_val, std::abs(exact));
                }
            }
            errors.push_back(max_err / max_val);
        }
        const double order1 = std::log2(errors[0] / errors[1]);
        const double order2 = std::log2(errors[1] / errors[2]);
        checks.push_back(
            make_check("grushin.operator-theta-order", std::min(order1, order2), 1.8, true));
    }

    // stencil is exact on the low-degree bi-radial polynomials
    {
        const grushin::GrushinDims dims{2, 2};
        const grushin::BiRadialGrid grid(dims, 8.0, 8.0, 64, 64);
        const auto op = grushin::assemble(grid);
        double worst = 0.0;
        auto probe = [&](auto field_fn, auto exact_fn) {
            grushin::Field u(grid);
            for (std::size_t i = 0; i < grid.n_r; ++i)
                for (std::size_t j = 0; j < grid.n_s; ++j)
                    u.at(i, j) = field_fn(grid.r(i), grid.s(j));
            const auto image = grushin::apply(op, u);
            double max_err = 0.0, max_val = 1.0;
            for (std::size_t i = 0; i + 1 < grid.n_r; ++i)
                for (std::size_t j = 0; j + 1 < grid.n_s; ++j) {
                    const double exact = exact_fn(grid.r(i), grid.s(j));
                    max_err = std::max(max_err, std::abs(image.at(i, j) - exact));
                    max_val = std::max(max_val, std::abs(exact));
                }
            worst = std::max(worst, max_err / max_val);
        };
        const double N = dims.N, k = dims.k;
        probe([](double, double) { return 1.0; }, [](double, double) { return 0.0; });
        probe([](double r, double) { return r * r; }, [&](double, double) { return 2.0 * N; });
        probe([](double, double s) { return s * s; }, [&](double r, double) { return 2.0 * k * r * r; });
        probe([](double r, double s) { return r * r * s * s; },
              [&](double r, double s) { return 2.0 * N * s * s + 2.0 * k * r * r * r * r; });
        checks.push_back(make_check("grushin.operator-polynomial-exactness", worst, scaled(1e-9, scale)));
    }

    // normalized comparison function integrates to one on a wide grid
    {
        const grushin::GrushinDims dims{1, 1};
        const double eps = 1.0 / 7.0;
        const auto params = grushin::ThetaParams::normalized(dims, eps, 1.0);
        const double extent = 40.0 / eps;
        const grushin::BiRadialGrid grid(dims, extent, extent, 1024, 512);
        const auto theta = grushin::sample_theta(grid, params);
        const double mass = grushin::biradial_integral(theta);
        checks.push_back(make_check("grushin.theta-normalized-mass", std::abs(mass - 1.0),
                                    scaled(1e-3, scale)));
    }

    // nonpositive quadratic form on random fields (weighted inner product)
    {
        const grushin::GrushinDims dims{2, 1};
        const grushin::BiRadialGrid grid(dims, 8.0, 8.0, 32, 32);
        const auto op = grushin::assemble(grid);
        std::mt19937 rng(20240531u);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        double worst = -1e300;
        for (int trial = 0; trial < 20; ++trial) {
            grushin::Field u(grid);
            for (double& v : u.values) v = dist(rng);
            const auto lu = grushin::apply(op, u);
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < grid.n_r; ++i)
                for (std::size_t j = 0; j < grid.n_s; ++j) {
                    const double w = grid.cell_weight(i, j);
                    num += w * u.at(i, j) * lu.at(i, j);
                    den += w * u.at(i, j) * u.at(i, j);
                }
            worst = std::max(worst, num / den);
        }
        checks.push_back(make_check("grushin.quadratic-form-nonpositive", worst, scaled(1e-12, scale)));
    }

    return checks;
}

// ------------------------------------------------------------------ testfn

std::vector<Check> testfn_suite(double scale) {
    std::vector<Check> checks;
    const grushin::GrushinDims dims{1, 1};
    std::vector<double> Ts;
    for (int e = 4; e <= 10; ++e) Ts.push_back(std::pow(2.0, e));

    {
        double worst = 0.0, worst_terms = 0.0;
        for (double p : {1.3, 5.0 / 3.0, 2.5}) {
            const double pprime = p / (p - 1.0);
            const double expected = -pprime + 0.5 * dims.N + dims.k + 1.0;
            std::vector<double> totals;
            std::vector<std::vector<double>> terms(5);
            for (double T : Ts) {
                const auto rhs = testfn::weak_rhs_T1(T, p, dims);
                totals.push_back(rhs.total);
                for (int i = 0; i < 5; ++i) terms[i].push_back(rhs.terms[i]);
            }
            worst = std::max(worst, std::abs(testfn::fit_log_slope(Ts, totals) - expected));
            for (int i = 0; i < 5; ++i)
                worst_terms =
                    std::max(worst_terms, std::abs(testfn::fit_log_slope(Ts, terms[i]) - expected));
        }
        checks.push_back(make_check("testfn.t1-total-slope", worst, scaled(0.02, scale)));
        checks.push_back(make_check("testfn.t1-term-slopes", worst_terms, scaled(0.02, scale)));
    }

    {
        const double gamma = 0.5, alpha = 1.0 - gamma;
        double worstA = 0.0, worstB = 0.0;
        for (double p : {2.0, 2.5, 3.0}) {
            const double pprime = p / (p - 1.0);
            const double expectedA = 1.0 - (1.0 + alpha) * pprime + 0.5 * dims.N + dims.k;
            const double expectedB = 1.0 - alpha * pprime - pprime + 0.5 * dims.N + dims.k;
            std::vector<double> As, Bs;
            for (double T : Ts) {
                const auto rhs = testfn::weak_rhs_T2(T, T, p, gamma, dims);
                As.push_back(rhs.termA);
                Bs.push_back(rhs.termB);
            }
            worstA = std::max(worstA, std::abs(testfn::fit_log_slope(Ts, As) - expectedA));
            worstB = std::max(worstB, std::abs(testfn::fit_log_slope(Ts, Bs) - expectedB));
        }
        checks.push_back(make_check("testfn.t2-termA-slope", worstA, scaled(0.02, scale)));
        checks.push_back(make_check("testfn.t2-termB-slope", worstB, scaled(0.02, scale)));
    }

    {
        // spatial factor separates: doubling R multiplies termA by 2^(N/2+k)
        const auto a1 = testfn::weak_rhs_T2(64.0, 32.0, 2.0, 0.5, dims);
        const auto a2 = testfn::weak_rhs_T2(64.0, 64.0, 2.0, 0.5, dims);
        const double expected = std::pow(2.0, 0.5 * dims.N + dims.k);
        const double dev = std::abs(a2.termA / a1.termA / expected - 1.0);
        checks.push_back(make_check("testfn.t2-R-separation", dev, scaled(1e-12, scale)));
    }

    {
        // critical balances: the fitted exponents vanish at the closed-form
        // critical powers
        const auto e = testfn::critical_exponents(dims, 0.5);
        const double pp_c1 = e.p_c1 / (e.p_c1 - 1.0);
        const double delta1 = pp_c1 - (0.5 * dims.N + dims.k + 1.0);
        const double pp_0 = e.p_0 / (e.p_0 - 1.0);
        const double delta2 = (1.0 + 0.5) * pp_0 - (0.5 * dims.N + dims.k + 1.0);
        checks.push_back(make_check("testfn.critical-balance-identities",
                                    std::max(std::abs(delta1), std::abs(delta2)),
                                    scaled(1e-12, scale)));
    }

    return checks;
}

}  // namespace

double w1_right_derivative_oracle(double t, double T, double sigma, int m, double alpha) {
    const double eta = 1.0 - alpha;
    auto I = [&](double tt) { return right_integral_of_w1(tt, T, sigma, eta); };
    if (m == 0) {
        const double h = 1e-4 * T;
        return -(I(t + h) - I(t - h)) / (2.0 * h);
    }
    if (m == 1) {
        const double h = 7e-4 * T;
        return (I(t + h) - 2.0 * I(t) + I(t - h)) / (h * h);
    }
    throw std::invalid_argument("w1_right_derivative_oracle: m in {0,1}");
}

const std::vector<std::string>& module_names() {
    static const std::vector<std::string> names{"fraccalc", "grushin", "testfn"};
    return names;
}

std::vector<Check> run_module(const std::string& module, double tol_scale) {
    if (module == "fraccalc") return fraccalc_suite(tol_scale);
    if (module == "grushin") return grushin_suite(tol_scale);
    if (module == "testfn") return testfn_suite(tol_scale);
    throw std::invalid_argument("verify: unknown module '" + module + "'");
}

std::vector<Check> run_all(double tol_scale) {
    std::vector<Check> all;
    for (const auto& name : module_names()) {
        auto checks = run_module(name, tol_scale);
        all.insert(all.end(), checks.begin(), checks.end());
    }
    return all;
}

}  // namespace gfl::verify
