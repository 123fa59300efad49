// scenario.hpp - system configuration, channel realizations, deterministic draws
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace specshare {

/// Thrown by load_config/parse_config; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Power budgets and per-subcarrier peaks for both systems, plus the
/// communication throughput floor.
struct Constraints {
    double total_radar_power = 0.0;  // P_r, sum of radar subcarrier powers
    double total_comm_power = 0.0;   // P_c
    double peak_radar = 0.0;         // xi_r, per-subcarrier radar cap
    double peak_comm = 0.0;          // xi_c
    double throughput_floor = 0.0;   // kappa, bits/s/Hz summed over subcarriers
};

/// Experiment configuration. Field names match the JSON config keys one-to-one.
struct SystemConfig {
    int n_subcarriers = 16;

    // channel variances (complex-Gaussian second moments)
    double sigma_rr2 = 1.0;       // radar -> radar target return
    double sigma_cc2 = 1.0;       // comm -> comm direct link
    double sigma_rc2 = 0.01;      // radar -> comm cross link
    double sigma_cr2 = 0.01;      // comm -> radar cross link
    double sigma_clutter2 = 0.05; // radar clutter (signal-dependent)

    double noise_r2 = 1.0;  // radar receiver noise power
    double noise_c2 = 1.0;  // comm receiver noise power

    double P_r = 600.0;  // radar power budget
    double P_c = 600.0;  // comm power budget
    double xi_r = 0.0;   // radar per-subcarrier cap; defaulted to 4*P_r/N when absent
    double xi_c = 0.0;   // comm per-subcarrier cap; defaulted to 4*P_c/N when absent
    bool xi_r_explicit = false;  // true when the config file set xi_r itself
    bool xi_c_explicit = false;

    double kappa = 2.5;       // throughput floor, bits/s/Hz
    double tolerance = 0.01;  // relative convergence tolerance for the solvers
    int max_outer_iters = 100;
    int max_inner_iters = 30;

    int trials = 50;
    std::uint64_t seed = 1;

    /// Constraint block implied by the budgets/caps/floor above.
    Constraints constraints() const;
};

/// Per-trial normalized channel gains. Entries are realizations
/// |draw|^2 / noise, one draw per subcarrier, not expectations.
struct ChannelRealization {
    std::vector<double> gamma_rr;  // radar signal-to-noise gains
    std::vector<double> gamma_cc;  // comm signal-to-noise gains
    std::vector<double> eta_rc;    // radar-into-comm interference gains
    std::vector<double> eta_cr;    // comm-into-radar interference gains
    std::vector<double> eta_rr;    // radar clutter gains (scale with own power)

    int size() const { return static_cast<int>(gamma_rr.size()); }
};

/// Parse a JSON config document. Unknown keys are rejected; missing required
/// keys (n_subcarriers, P_r, P_c, kappa) and out-of-range values raise
/// ConfigError naming the field.
SystemConfig parse_config(const std::string& json_text);

/// parse_config on the contents of a file; nonexistent/unreadable paths raise
/// ConfigError.
SystemConfig load_config(const std::string& path);

/// Draw the five gain vectors for one trial. The stream is derived from
/// (cfg.seed, trial_index) only, so trials are order-independent and any
/// trial can be regenerated in isolation. Draw order is pinned: vectors in
/// declaration order, subcarriers ascending, one Box-Muller pair per entry.
ChannelRealization generate_channels(const SystemConfig& cfg, int trial_index);

/// Deterministic four-group channel profile of 4*n_per_group subcarriers.
/// gamma_rr groups are [high, low, high, low], gamma_cc groups are
/// [high, low, low, high]; cross/clutter gains are flat.
ChannelRealization grouped_profile(int n_per_group,
                                   double high_gain = 1.0,
                                   double low_gain = 0.1,
                                   double eta_cross = 0.01,
                                   double eta_clutter = 0.05);

}  // namespace specshare
