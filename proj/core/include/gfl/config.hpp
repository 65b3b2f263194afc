#ifndef GFL_CONFIG_HPP
#define GFL_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "gfl/memsolver.hpp"
#include "gfl/odereduce.hpp"

namespace gfl::config {

/// Parse errors carry the offending key or a byte-position diagnostic from
/// the JSON reader.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SimInput {
    memsolver::SimConfig sim;
    std::string output_dir = ".";
};

struct OdeInput {
    odereduce::OdeConfig ode;
    std::string output_dir = ".";
};

struct SweepInput {
    memsolver::SimConfig base;
    std::string vary = "p2";  // "p1" or "p2"
    double p_min = 1.1, p_max = 3.0;
    std::size_t p_count = 8;
    double gamma_min = 0.5, gamma_max = 0.5;
    std::size_t gamma_count = 1;
    std::size_t workers = 1;
    std::string output_dir = ".";
};

/// Strict parsers: versioned "schema" field required, unknown keys rejected.
SimInput parse_sim(const std::string& json_text);
OdeInput parse_ode(const std::string& json_text);
SweepInput parse_sweep(const std::string& json_text);

SimInput load_sim(const std::string& path);
OdeInput load_ode(const std::string& path);
SweepInput load_sweep(const std::string& path);

/// Canonical serialization (sorted keys) used for the report fingerprint.
std::string canonical_sim(const memsolver::SimConfig& c);
std::string hash_sim(const memsolver::SimConfig& c);

}  // namespace gfl::config

#endif
