#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eit4/response.hpp"
#include "eit4/types.hpp"

namespace eit4::cli {

struct ConfigError : InvalidInput {
    using InvalidInput::InvalidInput;
};

/// Flat key=value store; file values first, command-line flags override.
struct RawConfig {
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) != 0; }
    void set(const std::string& key, const std::string& value);
};

/// Resolved run parameters. Rate-valued entries accept a trailing "G3"
/// multiplier (e.g. omega_c = 4G3); Gamma3 itself must be absolute.
struct RunConfig {
    DecayRates decay{3e6, 1.2e8, 2.5e8};   // defaults: Na D-line scale
    double mag_c = 0, mag_p = 0, mag_24 = 0;
    double phase_c = 0, phase_p = 0, phase_24 = 0;
    bool has_omega_c = false, has_omega_p = false;

    double t_end = 0;          // resolved per command when not set
    int n_points = 0;
    bool t_end_set = false, n_points_set = false;

    std::string method = "exact";   // exact|weak|strong|rk4
    bool force = false;
    response::ChiUnit unit = response::ChiUnit::dimensionless;
    std::optional<MediumConstants> medium;
    std::string out;           // empty or "-": stdout
    unsigned long long seed = 0;   // reserved for randomized tooling
    double r_weak = 0.2, r_rate = 1.0;
    double rk4_dt = 0;         // 0: automatic from the stability guard

    std::vector<double> fig2_omega_c;       // default {0.5,1,2,4}*Gamma3
    double fig2_signal_ratio = 0.1;
    double fig2_probe_ratio = 0.01;
    std::vector<double> fig3_factors{2, 5, 20, 100};
    double fig3_probe_ratio = 0.1;
    double fig3_omega_c = 0;                // default 4*Gamma3

    double sweep_oc_min = 0, sweep_oc_max = 0;
    int sweep_oc_n = 8;
    double sweep_o24_min = 0, sweep_o24_max = 0;
    int sweep_o24_n = 12;
    bool sweep_log = false;

    RabiFields fields() const;
};

/// Parse a flat key=value config file (# comments, blank lines allowed).
RawConfig parse_config_file(const std::string& path);

/// Resolve raw strings into typed values for the given command, applying
/// per-command defaults and required-flag checks.
RunConfig resolve(const RawConfig& raw, const std::string& command);

/// Full driver: parse argv, run the subcommand, map errors to exit codes
/// (0 ok, 2 config error, 3 regime violation, 4 numerical failure).
int run(int argc, const char* const* argv);

/// Format a double as full-precision scientific notation (17 significant digits).
std::string format_full(double v);

}  // namespace eit4::cli
