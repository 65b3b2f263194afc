#include "gfl/memsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gfl/util.hpp"

namespace gfl::memsolver {

namespace {

double signed_power(double u, double p) {
    if (u == 0.0) return 0.0;
    const double mag = std::pow(std::abs(u), p);
    return u > 0.0 ? mag : -mag;
}

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

constexpr double kLedgerBudgetBytes = 4.0e9;

}  // namespace

grushin::BiRadialGrid SimConfig::make_grid() const {
    return grushin::BiRadialGrid(dims, r_max, s_max, n_r, n_s);
}

void SimConfig::validate() const {
    if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("SimConfig: gamma in [0,1)");
    if (!(p1 > 1.0 && p2 > 1.0)) throw std::invalid_argument("SimConfig: p1, p2 > 1");
    if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt > 0");
    if (!(horizon > 0.0 && dt <= horizon)) throw std::invalid_argument("SimConfig: dt <= horizon");
    if (!(blowup_threshold > 0.0)) throw std::invalid_argument("SimConfig: threshold > 0");
    if (!(initial.amplitude >= 0.0)) throw std::invalid_argument("SimConfig: amplitude >= 0");
    if (!(initial.extent > 0.0)) throw std::invalid_argument("SimConfig: initial extent > 0");
    if (memory.kind == MemoryMode::Kind::SumOfExponentials && memory.modes < 8)
        throw std::invalid_argument("SimConfig: sum-of-exponentials needs >= 8 modes");
    if (!(blowup_threshold > initial.amplitude))
        throw std::invalid_argument("SimConfig: threshold must exceed the initial sup-norm");
    make_grid();  // grid invariants
    if (kappa1 != 0.0 && gamma > 0.0 && memory.kind == MemoryMode::Kind::Exact) {
        const double projected = (horizon / dt) * static_cast<double>(n_r * n_s) * 8.0;
        if (projected > kLedgerBudgetBytes)
            throw std::invalid_argument(
                "SimConfig: exact memory ledger would exceed 4 GB; use the "
                "sum-of-exponentials memory mode for this run");
    }
}

std::string to_string(OutcomeKind kind) {
    switch (kind) {
        case OutcomeKind::BlownUp: return "BlownUp";
        case OutcomeKind::GlobalToHorizon: return "GlobalToHorizon";
        default: return "Undecided";
    }
}

grushin::Field initial_field(const SimConfig& config) {
    const auto grid = config.make_grid();
    grushin::Field u(grid);
    const double A = config.initial.amplitude;
    const double w = config.initial.extent;
    for (std::size_t i = 0; i < grid.n_r; ++i) {
        for (std::size_t j = 0; j < grid.n_s; ++j) {
            const double r = grid.r(i), s = grid.s(j);
            switch (config.initial.profile) {
                case InitialData::Profile::GaussianBump:
                    u.at(i, j) = A * std::exp(-(r * r + s * s) / (w * w));
                    break;
                case InitialData::Profile::Plateau: {
                    const double rho = std::sqrt(r * r + s * s);
                    u.at(i, j) = A * (1.0 - gfl::smoothstep5(rho - w));
                    break;
                }
            }
        }
    }
    return u;
}

MemoryLedger::MemoryLedger(const SimConfig& config, const grushin::BiRadialGrid& grid)
    : config_(&config), grid_(grid) {
    if (config.memory.kind == MemoryMode::Kind::SumOfExponentials && config.gamma > 0.0) {
        const double tau_min = config.dt * 1e-2;
        const double tau_max = config.horizon * 1.01;
        kernel_.emplace(config.gamma, tau_min, tau_max, config.memory.modes);
        mode_state_.assign(kernel_->modes(), std::vector<double>(grid.nodes(), 0.0));
    }
    if (config.gamma == 0.0) running_.assign(grid.nodes(), 0.0);
}

void MemoryLedger::record(double t, const std::vector<double>& g) {
    if (!times_.empty() && !(t > times_.back()))
        throw std::invalid_argument("MemoryLedger::record: times must increase");
    if (g.size() != grid_.nodes()) throw std::invalid_argument("MemoryLedger::record: size mismatch");

    if (config_->gamma == 0.0) {
        if (!times_.empty()) {
            const double h = t - times_.back();
            for (std::size_t i = 0; i < g.size(); ++i)
                running_[i] += 0.5 * h * (last_g_[i] + g[i]);
        }
        times_.push_back(t);
        prev_g_ = std::move(last_g_);
        last_g_ = g;
        return;
    }

    if (kernel_) {
        // modes hold the integral up to the PREVIOUS node; fold the interval
        // that ends there before decaying across the new one.
        const std::size_t n = times_.size();
        if (n >= 1) {
            const double delta_new = t - times_.back();
            if (n >= 2) {
                const double delta_prev = times_[n - 1] - times_[n - 2];
                for (std::size_t m = 0; m < kernel_->modes(); ++m) {
                    const auto mom = memkernel::exp_moments(kernel_->rates()[m], delta_prev);
                    const double decay_new = std::exp(-kernel_->rates()[m] * delta_new);
                    auto& z = mode_state_[m];
                    for (std::size_t i = 0; i < z.size(); ++i)
                        z[i] = decay_new * (z[i] + mom.c0 * prev_g_[i] + mom.c1 * last_g_[i]);
                }
            } else {
                for (std::size_t m = 0; m < kernel_->modes(); ++m) {
                    const double decay_new = std::exp(-kernel_->rates()[m] * delta_new);
                    for (double& zi : mode_state_[m]) zi *= decay_new;
                }
            }
        }
        times_.push_back(t);
        prev_g_ = std::move(last_g_);
        last_g_ = g;
        return;
    }

    // exact mode: keep full snapshots
    times_.push_back(t);
    history_.push_back(g);
    prev_g_ = std::move(last_g_);
    last_g_ = g;
}

grushin::Field MemoryLedger::memory_term() const {
    grushin::Field m(grid_);
    const std::size_t n = times_.size();
    if (n < 2) return m;

    if (config_->gamma == 0.0) {
        m.values = running_;
        return m;
    }

    if (kernel_) {
        // local interval, integrated exactly against the linear interpolant
        const double span[2] = {times_[n - 2], times_[n - 1]};
        const auto c = memkernel::linear_convolution_coefficients(span, config_->gamma);
        for (std::size_t i = 0; i < m.values.size(); ++i)
            m.values[i] = c[0] * prev_g_[i] + c[1] * last_g_[i];
        for (std::size_t mm = 0; mm < kernel_->modes(); ++mm) {
            const double w = kernel_->weights()[mm];
            const auto& z = mode_state_[mm];
            for (std::size_t i = 0; i < m.values.size(); ++i) m.values[i] += w * z[i];
        }
        return m;
    }

    const auto c = memkernel::linear_convolution_coefficients(times_, config_->gamma);
    for (std::size_t j = 0; j < n; ++j) {
        const double cj = c[j];
        if (cj == 0.0) continue;
        const auto& gj = history_[j];
        for (std::size_t i = 0; i < m.values.size(); ++i) m.values[i] += cj * gj[i];
    }
    return m;
}

double MemoryLedger::bytes() const {
    if (kernel_) return 8.0 * static_cast<double>(mode_state_.size() * grid_.nodes());
    if (config_->gamma == 0.0) return 8.0 * static_cast<double>(grid_.nodes());
    return 8.0 * static_cast<double>(history_.size() * grid_.nodes());
}

Simulation::Simulation(const SimConfig& config)
    : config_(config),
      grid_((config.validate(), config.make_grid())),
      op_(grid_),
      solver_(op_),
      ledger_(config_, grid_),
      u_(initial_field(config)),
      memory_cache_(grid_),
      dt_(config.dt) {
    ledger_.record(0.0, reaction(u_.values));
    refresh_memory();
    push_series();
    recent_sup_.push_back(sup_norm(u_.values));
}

std::vector<double> Simulation::reaction(const std::vector<double>& u) const {
    std::vector<double> g(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) g[i] = signed_power(u[i], config_.p1);
    return g;
}

void Simulation::refresh_memory() {
    if (config_.kappa1 != 0.0) memory_cache_ = ledger_.memory_term();
}

void Simulation::push_series() {
    const auto [sup, l1] = norms(u_);
    series_.push_back({t_, sup, l1, dt_});
}

bool Simulation::recent_monotone_growth() const {
    if (recent_sup_.size() < 11) return false;
    for (std::size_t i = 1; i < recent_sup_.size(); ++i)
        if (recent_sup_[i] < recent_sup_[i - 1]) return false;
    return recent_sup_.back() > recent_sup_.front();
}

Simulation::Event Simulation::advance() {
    const std::size_t nodes = grid_.nodes();
    std::vector<double> rhs(nodes), next;
    const double sup_prev = sup_norm(u_.values);

    for (;;) {
        const double step = std::min(dt_, config_.horizon - t_);
        for (std::size_t i = 0; i < nodes; ++i) {
            double force = 0.0;
            if (config_.kappa1 != 0.0) force += config_.kappa1 * memory_cache_.values[i];
            if (config_.kappa2 != 0.0) force += config_.kappa2 * signed_power(u_.values[i], config_.p2);
            rhs[i] = u_.values[i] + step * force;
        }
        if (config_.disable_diffusion) {
            next = rhs;
        } else {
            next = u_.values;  // warm start
            const auto stats = solver_.solve(step, rhs, next, 1e-10);
            if (!stats.converged) {
                failure_reason_ = "linear solver stalled at relative residual " +
                                  std::to_string(stats.relative_residual);
                return Event::SolverFailure;
            }
        }
        const bool finite = all_finite(next);
        const double sup_next = finite ? sup_norm(next) : std::numeric_limits<double>::infinity();
        const bool too_fast = sup_prev > 0.0 && sup_next > 2.0 * sup_prev;
        if (finite && !too_fast) {
            t_ += step;
            break;
        }
        dt_ *= 0.5;  // never re-grown
        const double floor = std::max(config_.dt_min, 4.0 * std::numeric_limits<double>::epsilon() * std::max(t_, 1.0));
        if (dt_ < floor) return Event::DtUnderflow;
    }

    u_.values = std::move(next);
    ledger_.record(t_, reaction(u_.values));
    refresh_memory();
    push_series();
    recent_sup_.push_back(sup_norm(u_.values));
    while (recent_sup_.size() > 11) recent_sup_.pop_front();

    if (ledger_.bytes() > kLedgerBudgetBytes) {
        failure_reason_ = "memory ledger exceeded the 4 GB budget";
        return Event::SolverFailure;
    }
    if (sup_norm(u_.values) > config_.blowup_threshold) return Event::ThresholdCrossed;
    return Event::Accepted;
}

Outcome run(const SimConfig& config) {
    config.validate();  // configuration defects throw; only runtime trouble is Undecided
    Outcome out;
    try {
        Simulation sim(config);
        while (sim.time() < config.horizon) {
            const auto event = sim.advance();
            if (event == Simulation::Event::Accepted) continue;
            out.series = sim.series();
            out.final_field = sim.field();
            switch (event) {
                case Simulation::Event::ThresholdCrossed:
                    out.kind = OutcomeKind::BlownUp;
                    out.t_star = sim.time();
                    return out;
                case Simulation::Event::DtUnderflow:
                    if (sim.recent_monotone_growth()) {
                        out.kind = OutcomeKind::BlownUp;
                        out.t_star = sim.time();
                    } else {
                        out.kind = OutcomeKind::Undecided;
                        out.reason = "time step underflow without sustained growth";
                    }
                    return out;
                default:
                    out.kind = OutcomeKind::Undecided;
                    out.reason = sim.failure_reason();
                    return out;
            }
        }
        out.kind = OutcomeKind::GlobalToHorizon;
        out.t_star = config.horizon;
        out.series = sim.series();
        out.final_field = sim.field();
        return out;
    } catch (const std::exception& err) {
        out.kind = OutcomeKind::Undecided;
        out.reason = err.what();
        return out;
    }
}

std::pair<double, double> norms(const grushin::Field& u) {
    double sup = 0.0;
    grushin::Field abs_field(u.grid);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double a = std::abs(u.values[i]);
        sup = std::max(sup, a);
        abs_field.values[i] = a;
    }
    return {sup, grushin::biradial_integral(abs_field)};
}

}  // namespace gfl::memsolver
