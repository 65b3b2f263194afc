#ifndef GFL_MEMSOLVER_HPP
#define GFL_MEMSOLVER_HPP

#include <cstddef>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfl/grushin.hpp"
#include "gfl/linsolve.hpp"
#include "gfl/memkernel.hpp"

namespace gfl::memsolver {

struct InitialData {
    enum class Profile { GaussianBump, Plateau };
    Profile profile = Profile::GaussianBump;
    double amplitude = 1.0;
    double extent = 1.0;  // bump width, or plateau radius
};

struct MemoryMode {
    enum class Kind { Exact, SumOfExponentials };
    Kind kind = Kind::Exact;
    std::size_t modes = 96;
};

/// Full problem specification for one time integration of
///   u_t - L u = kappa1 int_0^t (t-s)^-gamma |u|^(p1-1) u(s) ds
///               + kappa2 |u|^(p2-1) u.
struct SimConfig {
    grushin::GrushinDims dims{1, 1};
    double r_max = 16.0, s_max = 16.0;
    std::size_t n_r = 128, n_s = 128;
    double gamma = 0.5;
    double p1 = 2.0, p2 = 2.0;
    double kappa1 = 0.0, kappa2 = 0.0;  // signed; the classified regimes use {0, 1}
    InitialData initial;
    double dt = 1e-2;
    double horizon = 10.0;
    double blowup_threshold = 1e10;
    double dt_min = 1e-12;
    MemoryMode memory;
    bool disable_diffusion = false;

    grushin::BiRadialGrid make_grid() const;
    void validate() const;
};

enum class OutcomeKind { BlownUp, GlobalToHorizon, Undecided };

std::string to_string(OutcomeKind kind);

struct SeriesPoint {
    double t, sup_norm, l1_norm, dt;
};

struct Outcome {
    OutcomeKind kind = OutcomeKind::Undecided;
    double t_star = 0.0;  // blow-up time, or the horizon for global runs
    std::string reason;   // populated for Undecided
    std::vector<SeriesPoint> series;
    std::optional<grushin::Field> final_field;
};

/// Reaction history g = |u|^(p1-1) u at accepted steps: either full snapshots
/// (piecewise-linear product integration, O(n) per evaluation) or the
/// sum-of-exponentials compression (O(modes) per step).
class MemoryLedger {
  public:
    MemoryLedger(const SimConfig& config, const grushin::BiRadialGrid& grid);

    /// Appends the accepted state's reaction; t must exceed the last time.
    void record(double t, const std::vector<double>& g);
    /// Memory integral evaluated at the most recent recorded time.
    grushin::Field memory_term() const;

    std::size_t snapshots() const { return times_.size(); }
    double bytes() const;

  private:
    const SimConfig* config_;
    grushin::BiRadialGrid grid_;
    std::vector<double> times_;
    std::vector<std::vector<double>> history_;  // exact mode
    // gamma = 0: the kernel is 1 and the memory is a running trapezoid
    std::vector<double> running_;
    // SOE mode state
    std::optional<memkernel::ExpSumKernel> kernel_;
    std::vector<std::vector<double>> mode_state_;  // [mode][node]
    std::vector<double> last_g_, prev_g_;
};

/// Time stepping state; run() drives this, tests may drive it directly.
class Simulation {
  public:
    enum class Event { Accepted, ThresholdCrossed, DtUnderflow, SolverFailure };

    explicit Simulation(const SimConfig& config);

    Event advance();

    double time() const { return t_; }
    double dt() const { return dt_; }
    const grushin::Field& field() const { return u_; }
    const std::vector<SeriesPoint>& series() const { return series_; }
    const std::string& failure_reason() const { return failure_reason_; }
    /// Monotone sup-norm growth over the last 10 accepted steps.
    bool recent_monotone_growth() const;

  private:
    SimConfig config_;
    grushin::BiRadialGrid grid_;
    grushin::OperatorMatrix op_;
    lin::ShiftedOperatorSolver solver_;
    MemoryLedger ledger_;
    grushin::Field u_;
    grushin::Field memory_cache_;
    double t_ = 0.0;
    double dt_;
    std::vector<SeriesPoint> series_;
    std::deque<double> recent_sup_;
    std::string failure_reason_;

    std::vector<double> reaction(const std::vector<double>& u) const;
    void refresh_memory();
    void push_series();
};

Outcome run(const SimConfig& config);

/// (sup |u|, bi-radial L1 norm of |u|).
std::pair<double, double> norms(const grushin::Field& u);

grushin::Field initial_field(const SimConfig& config);

}  // namespace gfl::memsolver

#endif
