// harness.hpp - trial batches, sweeps, CSV/JSON emission
#pragma once

#include <map>
#include <string>
#include <vector>

#include "specshare/metrics.hpp"
#include "specshare/report.hpp"
#include "specshare/scenario.hpp"

namespace specshare {

enum class Method {
    Joint,
    Unilateral,
    Greedy,
    CommAbsent,
};

/// "joint", "unilateral", "greedy", "comm_absent"
std::string method_name(Method m);
/// Accepts the canonical names plus "comm-absent"; throws ConfigError otherwise.
Method method_from_name(const std::string& name);

/// One solver run on one trial. Mirrors the CSV schema exactly:
/// trial,method,sweep_param,sweep_value,sinr_linear,sinr_db,throughput,outer_iters,status
struct ExperimentRecord {
    int trial = 0;
    Method method = Method::Joint;
    std::string sweep_param;  // "" for plain runs; "pr|pc" for grids
    std::string sweep_value;  // formatted numbers, "|"-separated for grids
    double sinr_linear = 0.0;
    double sinr_db = 0.0;  // -inf when sinr_linear == 0
    double throughput = 0.0;
    int outer_iters = 0;
    std::string status;  // "converged", "max_iters", "infeasible", "invalid"

    bool operator==(const ExperimentRecord&) const = default;
};

/// Run cfg.trials independent trials for each requested method. Channels for
/// trial k depend only on (cfg.seed, k); infeasible trials are recorded with
/// status "infeasible" rather than dropped. Allocations are re-validated
/// against their constraints before the record is emitted. threads <= 1 runs
/// serially; results are identical either way.
std::vector<ExperimentRecord> run_trials(const SystemConfig& cfg,
                                         const std::vector<Method>& methods,
                                         int threads = 1);

/// Re-run the trial batch for each value of one swept parameter
/// ("pr", "pc" or "kappa"), with channel draws paired across values.
/// Records are sorted by (sweep value, trial, method). Defaulted peak caps
/// track the swept budget (xi = 4P/N stays in force); explicit caps do not.
std::vector<ExperimentRecord> sweep(const SystemConfig& cfg,
                                    const std::string& param,
                                    const std::vector<double>& values,
                                    const std::vector<Method>& methods,
                                    int threads = 1);

/// Full Cartesian product over radar and comm budget values; sweep_param is
/// "pr|pc" and sweep_value carries both coordinates.
std::vector<ExperimentRecord> contour_grid(const SystemConfig& cfg,
                                           const std::vector<double>& pr_values,
                                           const std::vector<double>& pc_values,
                                           const std::vector<Method>& methods,
                                           int threads = 1);

/// Per-method allocation on one deterministic channel instance (used with
/// grouped_profile). Infeasible instances yield reports with status
/// Infeasible and zero allocations.
struct ProfileResult {
    ChannelRealization ch;
    std::vector<Method> methods;
    std::vector<SolveReport> reports;  // parallel to methods
};

ProfileResult allocation_profile(const ChannelRealization& ch,
                                 const Constraints& cons,
                                 const SystemConfig& cfg,
                                 const std::vector<Method>& methods);

/// Record CSV with the fixed header; doubles are written round-trippably.
void write_records_csv(const std::string& path, const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_records_csv(const std::string& path);

/// Per-subcarrier table for profile studies:
/// method,subcarrier,gamma_rr,gamma_cc,p_r,p_c,sinr_db,throughput
void write_profile_csv(const std::string& path, const ProfileResult& result);

/// Archival JSON embedding the full config next to the records.
void write_records_json(const std::string& path,
                        const SystemConfig& cfg,
                        const std::vector<ExperimentRecord>& records);

/// Mean SINR (dB) over non-infeasible records plus counts, keyed by method.
struct MethodSummary {
    int total = 0;
    int infeasible = 0;
    int converged = 0;
    double mean_sinr_db = 0.0;   // over records with sinr_linear > 0
    double mean_throughput = 0.0;
};
std::map<Method, MethodSummary> summarize(const std::vector<ExperimentRecord>& records);

}  // namespace specshare
