#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "swirlmhd/state.hpp"

namespace swirlmhd {

enum class Formulation { Primitive, Reform, Both };

/// Parse failure with the 1-based line number of the offending entry.
struct ConfigError : std::runtime_error {
    ConfigError(int line_, const std::string& what_)
        : std::runtime_error("config line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
    int line;
};

/// Full run configuration. The text form is flat `key = value` with `#`
/// comments and dotted section keys; see serialize_config for the canonical
/// key set.
struct RunConfig {
    double p = 1.02;
    double c0 = 1e-3;

    int nr = 96;
    int nz = 96;
    double rmax = 8.0;
    double lz = 8.0;

    double dt = 0.0;  ///< 0: choose from the stability bound each step
    double cfl_safety = 0.45;
    double t_end = 0.5;
    int sample_every = 1;
    Scheme scheme = Scheme::ImexEuler;

    std::string generator = "bump";  ///< bump | random_bumps | zero
    double A_u = 0.0;
    double A_b = 0.0;
    double A_omega = 0.0;
    double support_r = 0.5;  ///< bump support radius as a fraction of rmax
    double support_z = 0.25; ///< bump half-width as a fraction of lz

    Formulation formulation = Formulation::Primitive;

    bool lp_enabled = false;
    int lp_n = 32;
    double lp_box = 0.0;  ///< 0: auto, 2 max(rmax, lz)

    std::string out_csv;
    std::string out_snapshot_prefix;
    int snapshot_every = 0;

    std::uint64_t seed = 0;
};

/// Parses the text form. Unknown keys, malformed lines and invariant
/// violations raise ConfigError with the line number (validation errors
/// carry the line of the offending key).
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

/// Canonical text form: fixed key order, 17-digit numbers. Parsing it back
/// reproduces the config exactly.
std::string serialize_config(const RunConfig& cfg);

/// Checks every config invariant (admissible p, positive geometry, the
/// dissipation-prefactor positivity 33 - 31 p > 0, ...). Throws
/// std::domain_error outside ConfigError contexts.
void validate_config(const RunConfig& cfg);

StepperConfig stepper_from(const RunConfig& cfg);

}  // namespace swirlmhd
