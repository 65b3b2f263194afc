#ifndef GFL_ODEREDUCE_HPP
#define GFL_ODEREDUCE_HPP

#include <optional>
#include <string>
#include <vector>

namespace gfl::odereduce {

/// Scalar reduction f'(t) + a f(t) = b int_0^t (t-s)^-gamma f^p1(s) ds + c f^p2(t),
/// integrated as an equality (the extremal driving of the inequality it
/// mirrors).
struct OdeConfig {
    double a = 1.0, b = 1.0, c = 0.0;
    double gamma = 0.5;
    double p1 = 2.0, p2 = 2.0;
    double f0 = 1.0;
    double dt = 1e-3;
    double horizon = 1e2;
    double blowup_threshold = 1e12;
    double dt_min = 1e-12;
    /// When set, dt may grow geometrically up to growth_cap * t after calm
    /// steps; needed to traverse the slow pre-blow-up plateaus, which span
    /// many decades of t. Cross-checks against the field solver switch it
    /// off to match schedules exactly.
    bool dt_growth = true;
    double growth_cap = 0.05;

    void validate() const;
};

enum class OdeOutcomeKind { BlownUp, GlobalToHorizon };

struct OdeSeriesPoint {
    double t, f, dt;
};

struct OdeOutcome {
    OdeOutcomeKind kind = OdeOutcomeKind::GlobalToHorizon;
    double t_star = 0.0;  // blow-up time, or horizon
    std::vector<OdeSeriesPoint> series;
};

/// Product-integration stepping with the shared (t-s)^-gamma quadrature; the
/// linear a-term is folded in with its exact integrating factor so the step
/// stays stable at every dt, and the nonlinearities stay explicit. dt halves
/// whenever a step would more than double f.
OdeOutcome run_ode(const OdeConfig& config);

/// Runs at dt and dt/2; returns the finer blow-up time when the two agree
/// within 10%, nothing otherwise.
std::optional<double> blowup_time(const OdeConfig& config);

struct ThresholdResult {
    double f0 = 0.0;  // +infinity when no bracketing blow-up was found
    std::string diagnostic;
};

/// Empirical least f0 whose equality-ODE solution (c = 0) blows up before
/// t = 1; lower-bounds the data-size constant of the underlying comparison
/// lemma. Log-bisection over f0 in [1e-8, 1e6].
ThresholdResult lemma_threshold(double a, double b, double gamma, double p);

}  // namespace gfl::odereduce

#endif
