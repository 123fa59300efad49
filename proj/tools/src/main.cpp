// specshare CLI: Monte-Carlo runs, parameter sweeps, power contours and
// per-subcarrier allocation profiles over the shared-spectrum solvers.
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specshare/baselines.hpp"
#include "specshare/harness.hpp"
#include "specshare/scenario.hpp"

namespace {

using namespace specshare;

std::vector<Method> parse_methods(const std::string& csv) {
    std::vector<Method> methods;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t pos = csv.find(',', start);
        const std::string tok =
            pos == std::string::npos ? csv.substr(start) : csv.substr(start, pos - start);
        if (!tok.empty()) methods.push_back(method_from_name(tok));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (methods.empty()) throw ConfigError("no methods requested");
    return methods;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t pos = csv.find(',', start);
        const std::string tok =
            pos == std::string::npos ? csv.substr(start) : csv.substr(start, pos - start);
        if (!tok.empty()) {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0') {
                throw ConfigError("bad numeric value: " + tok);
            }
            values.push_back(v);
        }
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (values.empty()) throw ConfigError("empty value list");
    return values;
}

void print_summary(const std::vector<ExperimentRecord>& records) {
    for (const auto& [method, s] : summarize(records)) {
        std::printf("%-12s records=%-4d converged=%-4d infeasible=%-4d mean_sinr_db=%.4f mean_throughput=%.4f\n",
                    method_name(method).c_str(), s.total, s.converged, s.infeasible,
                    s.mean_sinr_db, s.mean_throughput);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"power allocation experiments for spectrum-sharing radar and comm systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::string methods_csv = "joint,unilateral,greedy,comm-absent";
    std::string out_path;
    std::string json_path;
    int threads = 1;

    auto add_common = [&](CLI::App* sub, bool with_json) {
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--methods", methods_csv, "comma list of methods");
        sub->add_option("--out", out_path, "output CSV path")->required();
        if (with_json) sub->add_option("--json", json_path, "also write config+records JSON");
        sub->add_option("--threads", threads, "worker threads for trials");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "one trial batch at the configured operating point");
    add_common(run_cmd, true);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "trial batches along one swept parameter");
    std::string sweep_param;
    std::string sweep_values;
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--param", sweep_param, "pr, pc or kappa")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma list of parameter values")->required();

    CLI::App* contour_cmd = app.add_subcommand("contour", "trial batches over a radar x comm budget grid");
    std::string contour_pr;
    std::string contour_pc;
    add_common(contour_cmd, true);
    contour_cmd->add_option("--pr", contour_pr, "comma list of radar budgets")->required();
    contour_cmd->add_option("--pc", contour_pc, "comma list of comm budgets")->required();

    CLI::App* profile_cmd = app.add_subcommand("profile", "per-subcarrier allocations on the grouped channel profile");
    int groups = 4;
    int per_group = 32;
    double high_gain = 1.0;
    double low_gain = 0.1;
    double eta_cross = 0.01;
    double eta_clutter = 0.05;
    profile_cmd->add_option("--config", config_path, "JSON config file")->required();
    profile_cmd->add_option("--methods", methods_csv, "comma list of methods");
    profile_cmd->add_option("--out", out_path, "output CSV path")->required();
    profile_cmd->add_option("--groups", groups, "number of gain groups (must be 4)");
    profile_cmd->add_option("--per-group", per_group, "subcarriers per group");
    profile_cmd->add_option("--high", high_gain, "high normalized SNR");
    profile_cmd->add_option("--low", low_gain, "low normalized SNR");
    profile_cmd->add_option("--eta-cross", eta_cross, "cross-interference gain");
    profile_cmd->add_option("--eta-clutter", eta_clutter, "clutter gain");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const SystemConfig cfg = load_config(config_path);
        const std::vector<Method> methods = parse_methods(methods_csv);

        if (*run_cmd) {
            const std::vector<ExperimentRecord> records = run_trials(cfg, methods, threads);
            write_records_csv(out_path, records);
            if (!json_path.empty()) write_records_json(json_path, cfg, records);
            print_summary(records);
        } else if (*sweep_cmd) {
            const std::vector<ExperimentRecord> records =
                sweep(cfg, sweep_param, parse_values(sweep_values), methods, threads);
            write_records_csv(out_path, records);
            if (!json_path.empty()) write_records_json(json_path, cfg, records);
            print_summary(records);
        } else if (*contour_cmd) {
            const std::vector<ExperimentRecord> records = contour_grid(
                cfg, parse_values(contour_pr), parse_values(contour_pc), methods, threads);
            write_records_csv(out_path, records);
            if (!json_path.empty()) write_records_json(json_path, cfg, records);
            print_summary(records);
        } else if (*profile_cmd) {
            if (groups != 4) throw ConfigError("profile supports exactly 4 groups");
            if (per_group < 1) throw ConfigError("per-group must be positive");
            SystemConfig sub = cfg;
            sub.n_subcarriers = groups * per_group;
            if (!sub.xi_r_explicit) sub.xi_r = 4.0 * sub.P_r / sub.n_subcarriers;
            if (!sub.xi_c_explicit) sub.xi_c = 4.0 * sub.P_c / sub.n_subcarriers;
            const ChannelRealization ch =
                grouped_profile(per_group, high_gain, low_gain, eta_cross, eta_clutter);
            const Constraints cons = sub.constraints();
            if (!check_feasibility(ch, cons).feasible) {
                std::fprintf(stderr, "throughput floor %.6g is unreachable on this profile\n",
                             cons.throughput_floor);
                return 3;
            }
            const ProfileResult res = allocation_profile(ch, cons, sub, methods);
            write_profile_csv(out_path, res);
            for (std::size_t k = 0; k < res.methods.size(); ++k) {
                const SolveReport& rep = res.reports[k];
                const double db = rep.sinr > 0.0 ? 10.0 * std::log10(rep.sinr)
                                                 : -std::numeric_limits<double>::infinity();
                std::printf("%-12s sinr_db=%.4f throughput=%.4f outer_iters=%d\n",
                            method_name(res.methods[k]).c_str(), db, rep.throughput,
                            rep.outer_iters);
            }
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
