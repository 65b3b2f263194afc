#include "gfl/odereduce.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gfl/memkernel.hpp"
#include "gfl/util.hpp"

namespace gfl::odereduce {

namespace {

struct Stepper {
    const OdeConfig& cfg;
    double t = 0.0;
    double f;
    double dt;
    std::vector<double> times;
    std::vector<double> powers;  // f^p1 history for the memory integral
    double running = 0.0;        // gamma = 0 trapezoid of f^p1
    std::vector<double> recent;  // last accepted f values (for the underflow rule)

    explicit Stepper(const OdeConfig& c) : cfg(c), f(c.f0), dt(c.dt) {
        times.push_back(0.0);
        powers.push_back(std::pow(c.f0, c.p1));
        recent.push_back(f);
    }

    double memory() const {
        if (cfg.b == 0.0 || times.size() < 2) return cfg.gamma == 0.0 ? running : 0.0;
        if (cfg.gamma == 0.0) return running;
        return memkernel::convolve(times, powers, cfg.gamma);
    }

    // one accepted step; false on dt underflow
    bool advance() {
        const double mem = memory();
        for (;;) {
            const double step = std::min(dt, cfg.horizon - t);
            const double forcing = cfg.b * mem + cfg.c * std::pow(f, cfg.p2);
            const double z = cfg.a * step;
            const double next = std::exp(-z) * f + step * gfl::phi1(z) * forcing;
            const bool ok = std::isfinite(next) && !(f > 0.0 && next > 2.0 * f);
            if (ok) {
                t += step;
                f = next;
                break;
            }
            dt *= 0.5;
            const double floor = std::max(cfg.dt_min,
                                          4.0 * std::numeric_limits<double>::epsilon() * std::max(t, 1.0));
            if (dt < floor) return false;
        }
        if (cfg.gamma == 0.0) {
            const double g = std::pow(f, cfg.p1);
            running += 0.5 * (t - times.back()) * (powers.back() + g);
            times.push_back(t);
            powers.push_back(g);
        } else {
            times.push_back(t);
            powers.push_back(std::pow(f, cfg.p1));
        }
        recent.push_back(f);
        if (recent.size() > 11) recent.erase(recent.begin());
        if (cfg.dt_growth) dt = std::min(dt * 1.25, std::max(cfg.dt, cfg.growth_cap * t));
        return true;
    }

    bool monotone_growth() const {
        if (recent.size() < 11) return false;
        for (std::size_t i = 1; i < recent.size(); ++i)
            if (recent[i] < recent[i - 1]) return false;
        return recent.back() > recent.front();
    }
};

}  // namespace

void OdeConfig::validate() const {
    if (!(a >= 0.0 && b >= 0.0 && c >= 0.0)) throw std::invalid_argument("OdeConfig: a, b, c >= 0");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("OdeConfig: gamma in [0,1)");
    if (!(p1 > 1.0 && p2 > 1.0)) throw std::invalid_argument("OdeConfig: p1, p2 > 1");
    if (!(f0 > 0.0)) throw std::invalid_argument("OdeConfig: f0 > 0");
    if (!(dt > 0.0 && horizon > 0.0 && dt <= horizon)) throw std::invalid_argument("OdeConfig: 0 < dt <= horizon");
    if (!(blowup_threshold > f0)) throw std::invalid_argument("OdeConfig: threshold must exceed f0");
    if (!(growth_cap > 0.0 && growth_cap < 1.0)) throw std::invalid_argument("OdeConfig: growth_cap in (0,1)");
}

OdeOutcome run_ode(const OdeConfig& config) {
    config.validate();
    OdeOutcome out;
    Stepper st(config);
    out.series.push_back({0.0, st.f, st.dt});
    // Series thinning: long slow-phase runs take ~1e4-1e5 steps; keep every
    // accepted point while they are few, then sample geometrically.
    double next_record = 0.0;
    while (st.t < config.horizon) {
        if (!st.advance()) {
            if (st.monotone_growth()) {
                out.kind = OdeOutcomeKind::BlownUp;
                out.t_star = st.t;
            } else {
                out.kind = OdeOutcomeKind::GlobalToHorizon;
                out.t_star = st.t;
            }
            return out;
        }
        if (st.t >= next_record || st.f > config.blowup_threshold) {
            out.series.push_back({st.t, st.f, st.dt});
            next_record = (out.series.size() > 4096) ? st.t * 1.01 : 0.0;
        }
        if (st.f > config.blowup_threshold) {
            out.kind = OdeOutcomeKind::BlownUp;
            out.t_star = st.t;
            return out;
        }
    }
    out.kind = OdeOutcomeKind::GlobalToHorizon;
    out.t_star = config.horizon;
    out.series.push_back({st.t, st.f, st.dt});
    return out;
}

std::optional<double> blowup_time(const OdeConfig& config) {
    OdeOutcome coarse = run_ode(config);
    OdeConfig refined = config;
    refined.dt *= 0.5;
    OdeOutcome fine = run_ode(refined);
    if (coarse.kind != OdeOutcomeKind::BlownUp || fine.kind != OdeOutcomeKind::BlownUp)
        return std::nullopt;
    if (std::abs(coarse.t_star - fine.t_star) > 0.1 * fine.t_star) return std::nullopt;
    return fine.t_star;
}

ThresholdResult lemma_threshold(double a, double b, double gamma, double p) {
    if (!(a > 0.0 && b > 0.0 && p > 1.0))
        throw std::invalid_argument("lemma_threshold: a, b > 0 and p > 1");
    OdeConfig probe;
    probe.a = a;
    probe.b = b;
    probe.c = 0.0;
    probe.gamma = gamma;
    probe.p1 = p;
    probe.p2 = 2.0;  // unused with c = 0
    probe.dt = 2e-4;
    probe.horizon = 1.0;
    probe.blowup_threshold = 1e12;
    auto blows = [&](double f0) {
        probe.f0 = f0;
        return run_ode(probe).kind == OdeOutcomeKind::BlownUp;
    };
    double lo = 1e-8, hi = 1e6;
    if (!blows(hi)) {
        return {std::numeric_limits<double>::infinity(),
                "no blow-up before t = 1 for any f0 up to 1e6"};
    }
    if (blows(lo)) return {lo, "blow-up before t = 1 already at the smallest probed f0"};
    for (int iter = 0; iter < 60 && hi / lo > 1.0 + 1e-3; ++iter) {
        const double mid = std::sqrt(lo * hi);
        (blows(mid) ? hi : lo) = mid;
    }
    return {hi, ""};
}

}  // namespace gfl::odereduce
