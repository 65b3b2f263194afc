#ifndef GFL_EXPERIMENTS_HPP
#define GFL_EXPERIMENTS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gfl/config.hpp"
#include "gfl/verify.hpp"

namespace gfl::experiments {

/// Writes verify_report.txt ("<check-id> <measured> <tolerance> PASS|FAIL",
/// one line per check) into out_dir and echoes it to `log`. Returns the
/// number of failing checks. `only` empty means every module.
int run_verify(const std::string& only, double tol_scale, const std::string& out_dir,
               std::ostream& log);

/// Field simulation: writes series.csv (t,sup_norm,l1_norm,dt) and final.csv
/// (r,s,u) into out_dir, prints the OUTCOME line to `log`, and returns the
/// outcome kind string.
std::string run_simulate(const config::SimInput& input, std::ostream& log);

/// Scalar reduction: writes series.csv (t,f,dt), prints the OUTCOME line.
std::string run_simulate_ode(const config::OdeInput& input, std::ostream& log);

struct SweepRow {
    double gamma;
    double p;
    std::string outcome;
    double t_star_or_horizon;
    std::string config_hash;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::string csv_path;
};

/// Classifies every (gamma, p) grid point with the configured fixed datum,
/// distributing points over `workers` threads (GFL_WORKERS overrides) and
/// aggregating in grid order. Worker failures become Undecided rows.
SweepReport run_sweep(const config::SweepInput& input, std::ostream& log);

struct DecayReport {
    grushin::GrushinDims dims{1, 1};
    double fitted_slope = 0.0;
    double expected_slope = 0.0;
    std::string csv_path;
};

/// Pure-diffusion run (kappa1 = kappa2 = 0) with a log-log sup-norm slope fit
/// over t in [1, 50].
DecayReport run_decay(const grushin::GrushinDims& dims, const std::string& out_dir,
                      std::ostream& log);

/// Worker count resolution: explicit count, overridden by GFL_WORKERS.
std::size_t resolve_workers(std::size_t configured);

}  // namespace gfl::experiments

#endif
