#include "gfl/experiments.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "gfl/memsolver.hpp"
#include "gfl/odereduce.hpp"
#include "gfl/testfn.hpp"

namespace gfl::experiments {

namespace fs = std::filesystem;

namespace {

std::string format_double(double v) {
    std::ostringstream ss;
    ss << std::setprecision(17) << v;
    return ss.str();
}

std::ofstream open_out(const std::string& dir, const std::string& name, std::string* path_out) {
    fs::create_directories(dir);
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    if (path_out) *path_out = path.string();
    return out;
}

}  // namespace

int run_verify(const std::string& only, double tol_scale, const std::string& out_dir,
               std::ostream& log) {
    std::vector<verify::Check> checks =
        only.empty() ? verify::run_all(tol_scale) : verify::run_module(only, tol_scale);
    std::string path;
    auto out = open_out(out_dir, "verify_report.txt", &path);
    int failures = 0;
    for (const auto& c : checks) {
        std::ostringstream line;
        line << c.id << " " << format_double(c.measured) << " " << format_double(c.tolerance)
             << " " << (c.pass ? "PASS" : "FAIL");
        out << line.str() << "\n";
        log << line.str() << "\n";
        if (!c.pass) ++failures;
    }
    log << (failures == 0 ? "verify: all checks passed" : "verify: FAILURES present") << " ("
        << checks.size() << " checks, report " << path << ")\n";
    return failures;
}

std::string run_simulate(const config::SimInput& input, std::ostream& log) {
    const auto outcome = memsolver::run(input.sim);
    {
        auto out = open_out(input.output_dir, "series.csv", nullptr);
        out << "t,sup_norm,l1_norm,dt\n";
        for (const auto& p : outcome.series)
            out << format_double(p.t) << "," << format_double(p.sup_norm) << ","
                << format_double(p.l1_norm) << "," << format_double(p.dt) << "\n";
    }
    if (outcome.final_field) {
        auto out = open_out(input.output_dir, "final.csv", nullptr);
        out << "r,s,u\n";
        const auto& f = *outcome.final_field;
        for (std::size_t i = 0; i < f.grid.n_r; ++i)
            for (std::size_t j = 0; j < f.grid.n_s; ++j)
                out << format_double(f.grid.r(i)) << "," << format_double(f.grid.s(j)) << ","
                    << format_double(f.at(i, j)) << "\n";
    }
    const std::string kind = memsolver::to_string(outcome.kind);
    log << "OUTCOME " << kind << " ";
    if (outcome.kind == memsolver::OutcomeKind::Undecided)
        log << outcome.reason << "\n";
    else
        log << format_double(outcome.t_star) << "\n";
    return kind;
}

std::string run_simulate_ode(const config::OdeInput& input, std::ostream& log) {
    const auto outcome = odereduce::run_ode(input.ode);
    auto out = open_out(input.output_dir, "series.csv", nullptr);
    out << "t,f,dt\n";
    for (const auto& p : outcome.series)
        out << format_double(p.t) << "," << format_double(p.f) << "," << format_double(p.dt)
            << "\n";
    const std::string kind =
        outcome.kind == odereduce::OdeOutcomeKind::BlownUp ? "BlownUp" : "GlobalToHorizon";
    log << "OUTCOME " << kind << " " << format_double(outcome.t_star) << "\n";
    return kind;
}

std::size_t resolve_workers(std::size_t configured) {
    if (const char* env = std::getenv("GFL_WORKERS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) return static_cast<std::size_t>(parsed);
    }
    return configured >= 1 ? configured : 1;
}

SweepReport run_sweep(const config::SweepInput& input, std::ostream& log) {
    struct Point {
        double gamma, p;
    };
    std::vector<Point> points;
    for (std::size_t gi = 0; gi < input.gamma_count; ++gi) {
        const double gamma =
            input.gamma_count == 1
                ? input.gamma_min
                : input.gamma_min + (input.gamma_max - input.gamma_min) * gi / (input.gamma_count - 1.0);
        for (std::size_t pi = 0; pi < input.p_count; ++pi) {
            const double p =
                input.p_count == 1
                    ? input.p_min
                    : input.p_min + (input.p_max - input.p_min) * pi / (input.p_count - 1.0);
            points.push_back({gamma, p});
        }
    }

    std::vector<SweepRow> rows(points.size());
    std::atomic<std::size_t> cursor{0};
    const std::size_t workers = std::min(resolve_workers(input.workers), points.size());
    auto work = [&]() {
        for (;;) {
            const std::size_t idx = cursor.fetch_add(1);
            if (idx >= points.size()) return;
            memsolver::SimConfig cfg = input.base;
            cfg.gamma = points[idx].gamma;
            (input.vary == "p1" ? cfg.p1 : cfg.p2) = points[idx].p;
            SweepRow row;
            row.gamma = cfg.gamma;
            row.p = points[idx].p;
            row.config_hash = config::hash_sim(cfg);
            try {
                const auto outcome = memsolver::run(cfg);
                row.outcome = memsolver::to_string(outcome.kind);
                row.t_star_or_horizon = outcome.t_star;
            } catch (const std::exception&) {
                row.outcome = "Undecided";
                row.t_star_or_horizon = 0.0;
            }
            rows[idx] = std::move(row);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    SweepReport report;
    report.rows = rows;
    auto out = open_out(input.output_dir, "sweep.csv", &report.csv_path);
    out << "# one-sided sweep: each point runs ONE fixed datum, so BlownUp rows are\n";
    out << "# evidence for the blow-up region while GlobalToHorizon rows are not\n";
    out << "# counterexamples (the classified statements quantify over all data).\n";
    out << "gamma,p,outcome,t_star_or_horizon,config_hash,p_c1,p_0,inv_gamma\n";
    for (const auto& row : rows) {
        const auto exps = testfn::critical_exponents(input.base.dims, row.gamma);
        out << format_double(row.gamma) << "," << format_double(row.p) << "," << row.outcome << ","
            << format_double(row.t_star_or_horizon) << "," << row.config_hash << ","
            << format_double(exps.p_c1) << "," << format_double(exps.p_0) << ","
            << format_double(row.gamma > 0.0 ? 1.0 / row.gamma
                                             : std::numeric_limits<double>::infinity())
            << "\n";
    }
    log << "sweep: " << rows.size() << " points -> " << report.csv_path << "\n";
    return report;
}

DecayReport run_decay(const grushin::GrushinDims& dims, const std::string& out_dir,
                      std::ostream& log) {
    memsolver::SimConfig cfg;
    cfg.dims = dims;
    cfg.kappa1 = 0.0;
    cfg.kappa2 = 0.0;
    cfg.gamma = 0.0;
    cfg.initial = {memsolver::InitialData::Profile::GaussianBump, 1.0, 0.7};
    cfg.r_max = 20.0;
    cfg.s_max = 100.0;
    cfg.n_r = 192;
    cfg.n_s = 768;
    cfg.dt = 0.025;
    cfg.horizon = 50.0;
    const auto outcome = memsolver::run(cfg);

    DecayReport report;
    report.dims = dims;
    report.expected_slope = -0.5 * dims.homogeneous_dimension();
    std::vector<double> ts, sups;
    for (const auto& p : outcome.series) {
        if (p.t >= 1.0 && p.t <= 50.0 && p.sup_norm > 0.0) {
            ts.push_back(p.t);
            sups.push_back(p.sup_norm);
        }
    }
    report.fitted_slope = testfn::fit_log_slope(ts, sups);

    auto out = open_out(out_dir, "decay_series.csv", &report.csv_path);
    out << "t,sup_norm,l1_norm,dt\n";
    for (const auto& p : outcome.series)
        out << format_double(p.t) << "," << format_double(p.sup_norm) << ","
            << format_double(p.l1_norm) << "," << format_double(p.dt) << "\n";
    log << "decay dims=(" << dims.N << "," << dims.k << ") fitted_slope="
        << format_double(report.fitted_slope)
        << " expected=" << format_double(report.expected_slope) << "\n";
    return report;
}

}  // namespace gfl::experiments
