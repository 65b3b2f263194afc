// Command-line front end: verification suites, single simulations, parameter
// sweeps, and the pure-diffusion decay experiment.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gfl/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gfl - numerical laboratory for degenerate diffusion with nonlinear memory"};
    app.require_subcommand(1);

    // verify
    std::string only;
    double tol_scale = 1.0;
    std::string verify_out = ".";
    auto* verify = app.add_subcommand("verify", "run the identity/inequality verification suites");
    verify->add_option("--only", only, "restrict to one module (fraccalc|grushin|testfn)");
    verify->add_option("--tol-scale", tol_scale,
                       "scale error tolerances (0.1 tightens tenfold; lower-bound checks such as "
                       "convergence orders are not scaled)");
    verify->add_option("--out", verify_out, "directory for verify_report.txt");

    // simulate
    std::string sim_config;
    bool as_ode = false;
    auto* simulate = app.add_subcommand("simulate", "run one simulation from a JSON config");
    simulate->add_option("config", sim_config, "config file (gfl-sim/1, or gfl-ode/1 with --ode)")
        ->required();
    simulate->add_flag("--ode", as_ode, "treat the config as the scalar reduction");

    // sweep
    std::string sweep_config;
    auto* sweep = app.add_subcommand("sweep", "classify a (gamma, p) grid from a JSON config");
    sweep->add_option("config", sweep_config, "config file (gfl-sweep/1)")->required();

    // decay
    std::string dims_text = "1,1";
    std::string decay_out = ".";
    auto* decay = app.add_subcommand("decay", "pure-diffusion sup-norm decay slope");
    decay->add_option("--dims", dims_text, "dimensions as N,k (default 1,1)");
    decay->add_option("--out", decay_out, "directory for decay_series.csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            const int failures = gfl::experiments::run_verify(only, tol_scale, verify_out, std::cout);
            return failures == 0 ? 0 : 1;
        }
        if (simulate->parsed()) {
            if (as_ode) {
                gfl::experiments::run_simulate_ode(gfl::config::load_ode(sim_config), std::cout);
            } else {
                gfl::experiments::run_simulate(gfl::config::load_sim(sim_config), std::cout);
            }
            return 0;
        }
        if (sweep->parsed()) {
            gfl::experiments::run_sweep(gfl::config::load_sweep(sweep_config), std::cout);
            return 0;
        }
        if (decay->parsed()) {
            const auto comma = dims_text.find(',');
            if (comma == std::string::npos) throw std::runtime_error("--dims expects N,k");
            const gfl::grushin::GrushinDims dims(std::stoi(dims_text.substr(0, comma)),
                                                 std::stoi(dims_text.substr(comma + 1)));
            gfl::experiments::run_decay(dims, decay_out, std::cout);
            return 0;
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}
