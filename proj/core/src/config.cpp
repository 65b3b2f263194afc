#include "gfl/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gfl/util.hpp"

namespace gfl::config {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& err) {
        throw ParseError(std::string("config parse error: ") + err.what());
    }
}

void require_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ParseError(where + ": expected a JSON object");
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            throw ParseError(where + ": unknown key '" + item.key() + "'");
    }
}

void require_schema(const json& obj, const std::string& expected) {
    if (!obj.contains("schema") || !obj["schema"].is_string() || obj["schema"] != expected)
        throw ParseError("config: missing or wrong schema field (expected \"" + expected + "\")");
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    return obj.at(key).get<T>();
}

memsolver::SimConfig sim_from_json(const json& j, const std::string& where) {
    require_keys(j, where,
                 {"schema", "dims", "grid", "gamma", "p1", "p2", "kappa1", "kappa2", "initial",
                  "dt", "horizon", "blowup_threshold", "dt_min", "memory", "disable_diffusion",
                  "output_dir"});
    memsolver::SimConfig c;
    const auto& dims = j.at("dims");
    require_keys(dims, where + ".dims", {"N", "k"});
    c.dims = grushin::GrushinDims(dims.at("N").get<int>(), dims.at("k").get<int>());
    c.gamma = get_or(j, "gamma", 0.5);
    c.p1 = get_or(j, "p1", 2.0);
    c.p2 = get_or(j, "p2", 2.0);
    c.kappa1 = get_or(j, "kappa1", 0.0);
    c.kappa2 = get_or(j, "kappa2", 0.0);
    c.dt = j.at("dt").get<double>();
    c.horizon = j.at("horizon").get<double>();
    c.blowup_threshold = get_or(j, "blowup_threshold", 1e10);
    c.dt_min = get_or(j, "dt_min", 1e-12);
    c.disable_diffusion = get_or(j, "disable_diffusion", false);

    const auto& init = j.at("initial");
    require_keys(init, where + ".initial", {"profile", "amplitude", "width", "radius"});
    const std::string profile = init.at("profile").get<std::string>();
    c.initial.amplitude = init.at("amplitude").get<double>();
    if (profile == "gaussian-bump") {
        c.initial.profile = memsolver::InitialData::Profile::GaussianBump;
        c.initial.extent = init.at("width").get<double>();
    } else if (profile == "plateau") {
        c.initial.profile = memsolver::InitialData::Profile::Plateau;
        c.initial.extent = init.at("radius").get<double>();
    } else {
        throw ParseError(where + ".initial: unknown profile '" + profile + "'");
    }

    if (j.contains("memory")) {
        const auto& mem = j.at("memory");
        require_keys(mem, where + ".memory", {"kind", "modes"});
        const std::string kind = mem.at("kind").get<std::string>();
        if (kind == "exact") {
            c.memory.kind = memsolver::MemoryMode::Kind::Exact;
        } else if (kind == "sum-of-exponentials") {
            c.memory.kind = memsolver::MemoryMode::Kind::SumOfExponentials;
            c.memory.modes = get_or<std::size_t>(mem, "modes", 96);
        } else {
            throw ParseError(where + ".memory: unknown kind '" + kind + "'");
        }
    }

    if (j.contains("grid")) {
        const auto& grid = j.at("grid");
        require_keys(grid, where + ".grid", {"r_max", "s_max", "n_r", "n_s"});
        c.r_max = grid.at("r_max").get<double>();
        c.s_max = grid.at("s_max").get<double>();
        c.n_r = grid.at("n_r").get<std::size_t>();
        c.n_s = grid.at("n_s").get<std::size_t>();
    } else {
        // containment heuristic: boundary at 6 (support radius + sqrt(horizon)),
        // cells sized to an eighth of the initial extent
        const double support = c.initial.extent + (c.initial.profile == memsolver::InitialData::Profile::Plateau ? 1.0 : 0.0);
        const double radius = 6.0 * (support + std::sqrt(c.horizon));
        c.r_max = std::max(4.0, radius);
        c.s_max = std::max(4.0, radius);
        const double h = c.initial.extent / 8.0;
        c.n_r = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(c.r_max / h)));
        c.n_s = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(c.s_max / h)));
        if (c.n_r * c.n_s > 1024ull * 1024ull)
            throw ParseError(where +
                             ": the default grid sizing exceeds 1024x1024 cells for this horizon; "
                             "set an explicit \"grid\"");
    }
    return c;
}

}  // namespace

SimInput parse_sim(const std::string& text) {
    const json j = parse_text(text);
    require_schema(j, "gfl-sim/1");
    SimInput input;
    input.sim = sim_from_json(j, "sim");
    input.output_dir = get_or<std::string>(j, "output_dir", ".");
    input.sim.validate();
    return input;
}

OdeInput parse_ode(const std::string& text) {
    const json j = parse_text(text);
    require_schema(j, "gfl-ode/1");
    require_keys(j, "ode",
                 {"schema", "a", "b", "c", "gamma", "p1", "p2", "f0", "dt", "horizon",
                  "blowup_threshold", "dt_min", "dt_growth", "growth_cap", "output_dir"});
    OdeInput input;
    auto& c = input.ode;
    c.a = get_or(j, "a", 1.0);
    c.b = get_or(j, "b", 1.0);
    c.c = get_or(j, "c", 0.0);
    c.gamma = get_or(j, "gamma", 0.5);
    c.p1 = get_or(j, "p1", 2.0);
    c.p2 = get_or(j, "p2", 2.0);
    c.f0 = j.at("f0").get<double>();
    c.dt = j.at("dt").get<double>();
    c.horizon = j.at("horizon").get<double>();
    c.blowup_threshold = get_or(j, "blowup_threshold", 1e12);
    c.dt_min = get_or(j, "dt_min", 1e-12);
    c.dt_growth = get_or(j, "dt_growth", true);
    c.growth_cap = get_or(j, "growth_cap", 0.05);
    input.output_dir = get_or<std::string>(j, "output_dir", ".");
    c.validate();
    return input;
}

SweepInput parse_sweep(const std::string& text) {
    const json j = parse_text(text);
    require_schema(j, "gfl-sweep/1");
    require_keys(j, "sweep",
                 {"schema", "base", "vary", "p_min", "p_max", "p_count", "gamma_min", "gamma_max",
                  "gamma_count", "workers", "output_dir"});
    SweepInput input;
    input.base = sim_from_json(j.at("base"), "sweep.base");
    input.vary = get_or<std::string>(j, "vary", "p2");
    if (input.vary != "p1" && input.vary != "p2")
        throw ParseError("sweep: vary must be \"p1\" or \"p2\"");
    input.p_min = j.at("p_min").get<double>();
    input.p_max = j.at("p_max").get<double>();
    input.p_count = j.at("p_count").get<std::size_t>();
    input.gamma_min = get_or(j, "gamma_min", input.base.gamma);
    input.gamma_max = get_or(j, "gamma_max", input.base.gamma);
    input.gamma_count = get_or<std::size_t>(j, "gamma_count", 1);
    input.workers = get_or<std::size_t>(j, "workers", 1);
    input.output_dir = get_or<std::string>(j, "output_dir", ".");
    if (input.p_count < 1 || input.gamma_count < 1)
        throw ParseError("sweep: grid counts must be >= 1");
    if (input.workers < 1) throw ParseError("sweep: workers >= 1");
    if (!(input.p_min > 1.0 && input.p_max >= input.p_min))
        throw ParseError("sweep: need 1 < p_min <= p_max");
    return input;
}

namespace {
std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
}  // namespace

SimInput load_sim(const std::string& path) { return parse_sim(slurp(path)); }
OdeInput load_ode(const std::string& path) { return parse_ode(slurp(path)); }
SweepInput load_sweep(const std::string& path) { return parse_sweep(slurp(path)); }

std::string canonical_sim(const memsolver::SimConfig& c) {
    json j;
    j["dims"] = {{"N", c.dims.N}, {"k", c.dims.k}};
    j["grid"] = {{"r_max", c.r_max}, {"s_max", c.s_max}, {"n_r", c.n_r}, {"n_s", c.n_s}};
    j["gamma"] = c.gamma;
    j["p1"] = c.p1;
    j["p2"] = c.p2;
    j["kappa1"] = c.kappa1;
    j["kappa2"] = c.kappa2;
    j["initial"] = {{"profile", c.initial.profile == memsolver::InitialData::Profile::GaussianBump
                                    ? "gaussian-bump"
                                    : "plateau"},
                    {"amplitude", c.initial.amplitude},
                    {"extent", c.initial.extent}};
    j["dt"] = c.dt;
    j["horizon"] = c.horizon;
    j["blowup_threshold"] = c.blowup_threshold;
    j["dt_min"] = c.dt_min;
    j["memory"] = {{"kind", c.memory.kind == memsolver::MemoryMode::Kind::Exact
                                ? "exact"
                                : "sum-of-exponentials"},
                   {"modes", c.memory.modes}};
    j["disable_diffusion"] = c.disable_diffusion;
    return j.dump();
}

std::string hash_sim(const memsolver::SimConfig& c) { return gfl::fnv1a_hex(canonical_sim(c)); }

}  // namespace gfl::config
