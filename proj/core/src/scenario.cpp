#include "specshare/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"

namespace specshare {

Constraints SystemConfig::constraints() const {
    Constraints c;
    c.total_radar_power = P_r;
    c.total_comm_power = P_c;
    c.peak_radar = xi_r;
    c.peak_comm = xi_c;
    c.throughput_floor = kappa;
    return c;
}

namespace {

using nlohmann::json;

const char* const kKnownKeys[] = {
    "n_subcarriers", "sigma_rr2", "sigma_cc2", "sigma_rc2", "sigma_cr2",
    "sigma_clutter2", "noise_r2", "noise_c2", "P_r", "P_c", "xi_r", "xi_c",
    "kappa", "tolerance", "max_outer_iters", "max_inner_iters", "trials", "seed",
};

bool known_key(const std::string& k) {
    for (const char* s : kKnownKeys) {
        if (k == s) return true;
    }
    return false;
}

double get_number(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number()) {
        throw ConfigError("config field '" + key + "' must be a number");
    }
    return v.get<double>();
}

int get_int(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError("config field '" + key + "' must be an integer");
    }
    return v.get<int>();
}

void require_positive(double x, const std::string& key) {
    if (!(x > 0.0)) {
        throw ConfigError("config field '" + key + "' must be positive");
    }
}

void require_nonnegative(double x, const std::string& key) {
    if (!(x >= 0.0)) {
        throw ConfigError("config field '" + key + "' must be nonnegative");
    }
}

// splitmix64 finalizer; decorrelates (seed, trial) pairs into generator seeds
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform in (0, 1]; the shift keeps exactly 53 mantissa bits.
double uniform_unit(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// |CN(0, sigma2)|^2 / noise2 via one Box-Muller pair (re, im each N(0, sigma2/2)).
// std::normal_distribution is implementation-defined, so the transform is spelled
// out to keep draws identical across standard libraries.
double gain_draw(std::mt19937_64& rng, double sigma2, double noise2) {
    const double u1 = uniform_unit(rng);
    const double u2 = uniform_unit(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double re = r * std::cos(2.0 * M_PI * u2);
    const double im = r * std::sin(2.0 * M_PI * u2);
    // re, im ~ N(0,1); scale so that E[|h|^2] = sigma2
    return (sigma2 / 2.0) * (re * re + im * im) / noise2;
}

}  // namespace

SystemConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    for (const auto& item : j.items()) {
        if (!known_key(item.key())) {
            throw ConfigError("unknown config field '" + item.key() + "'");
        }
    }
    for (const char* req : {"n_subcarriers", "P_r", "P_c", "kappa"}) {
        if (!j.contains(req)) {
            throw ConfigError(std::string("missing required config field '") + req + "'");
        }
    }

    SystemConfig cfg;
    cfg.n_subcarriers = get_int(j, "n_subcarriers");
    if (cfg.n_subcarriers < 1) {
        throw ConfigError("config field 'n_subcarriers' must be >= 1");
    }
    cfg.P_r = get_number(j, "P_r");
    require_nonnegative(cfg.P_r, "P_r");
    cfg.P_c = get_number(j, "P_c");
    require_nonnegative(cfg.P_c, "P_c");
    cfg.kappa = get_number(j, "kappa");
    require_nonnegative(cfg.kappa, "kappa");

    if (j.contains("sigma_rr2")) { cfg.sigma_rr2 = get_number(j, "sigma_rr2"); require_nonnegative(cfg.sigma_rr2, "sigma_rr2"); }
    if (j.contains("sigma_cc2")) { cfg.sigma_cc2 = get_number(j, "sigma_cc2"); require_nonnegative(cfg.sigma_cc2, "sigma_cc2"); }
    if (j.contains("sigma_rc2")) { cfg.sigma_rc2 = get_number(j, "sigma_rc2"); require_nonnegative(cfg.sigma_rc2, "sigma_rc2"); }
    if (j.contains("sigma_cr2")) { cfg.sigma_cr2 = get_number(j, "sigma_cr2"); require_nonnegative(cfg.sigma_cr2, "sigma_cr2"); }
    if (j.contains("sigma_clutter2")) { cfg.sigma_clutter2 = get_number(j, "sigma_clutter2"); require_nonnegative(cfg.sigma_clutter2, "sigma_clutter2"); }
    if (j.contains("noise_r2")) { cfg.noise_r2 = get_number(j, "noise_r2"); require_positive(cfg.noise_r2, "noise_r2"); }
    if (j.contains("noise_c2")) { cfg.noise_c2 = get_number(j, "noise_c2"); require_positive(cfg.noise_c2, "noise_c2"); }

    if (j.contains("xi_r")) {
        cfg.xi_r = get_number(j, "xi_r");
        require_positive(cfg.xi_r, "xi_r");
        cfg.xi_r_explicit = true;
    } else {
        cfg.xi_r = 4.0 * cfg.P_r / cfg.n_subcarriers;
    }
    if (j.contains("xi_c")) {
        cfg.xi_c = get_number(j, "xi_c");
        require_positive(cfg.xi_c, "xi_c");
        cfg.xi_c_explicit = true;
    } else {
        cfg.xi_c = 4.0 * cfg.P_c / cfg.n_subcarriers;
    }

    if (j.contains("tolerance")) { cfg.tolerance = get_number(j, "tolerance"); require_positive(cfg.tolerance, "tolerance"); }
    if (j.contains("max_outer_iters")) {
        cfg.max_outer_iters = get_int(j, "max_outer_iters");
        if (cfg.max_outer_iters < 1) throw ConfigError("config field 'max_outer_iters' must be >= 1");
    }
    if (j.contains("max_inner_iters")) {
        cfg.max_inner_iters = get_int(j, "max_inner_iters");
        if (cfg.max_inner_iters < 1) throw ConfigError("config field 'max_inner_iters' must be >= 1");
    }
    if (j.contains("trials")) {
        cfg.trials = get_int(j, "trials");
        if (cfg.trials < 1) throw ConfigError("config field 'trials' must be >= 1");
    }
    if (j.contains("seed")) {
        const auto& v = j.at("seed");
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
            throw ConfigError("config field 'seed' must be a nonnegative integer");
        }
        cfg.seed = v.get<std::uint64_t>();
    }
    return cfg;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ChannelRealization generate_channels(const SystemConfig& cfg, int trial_index) {
    std::mt19937_64 rng(mix64(cfg.seed ^ mix64(static_cast<std::uint64_t>(trial_index))));
    const int n = cfg.n_subcarriers;
    ChannelRealization ch;
    auto fill = [&](std::vector<double>& v, double sigma2, double noise2) {
        v.resize(n);
        for (int i = 0; i < n; ++i) v[i] = gain_draw(rng, sigma2, noise2);
    };
    fill(ch.gamma_rr, cfg.sigma_rr2, cfg.noise_r2);
    fill(ch.gamma_cc, cfg.sigma_cc2, cfg.noise_c2);
    fill(ch.eta_rc, cfg.sigma_rc2, cfg.noise_c2);
    fill(ch.eta_cr, cfg.sigma_cr2, cfg.noise_r2);
    fill(ch.eta_rr, cfg.sigma_clutter2, cfg.noise_r2);
    return ch;
}

ChannelRealization grouped_profile(int n_per_group, double high_gain, double low_gain,
                                   double eta_cross, double eta_clutter) {
    if (n_per_group < 1) {
        throw std::invalid_argument("grouped_profile: n_per_group must be >= 1");
    }
    const int n = 4 * n_per_group;
    ChannelRealization ch;
    ch.gamma_rr.resize(n);
    ch.gamma_cc.resize(n);
    ch.eta_rc.assign(n, eta_cross);
    ch.eta_cr.assign(n, eta_cross);
    ch.eta_rr.assign(n, eta_clutter);
    const double rr_pattern[4] = {high_gain, low_gain, high_gain, low_gain};
    const double cc_pattern[4] = {high_gain, low_gain, low_gain, high_gain};
    for (int i = 0; i < n; ++i) {
        const int g = i / n_per_group;
        ch.gamma_rr[i] = rr_pattern[g];
        ch.gamma_cc[i] = cc_pattern[g];
    }
    return ch;
}

}  // namespace specshare
