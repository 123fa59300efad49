// baselines.hpp - waterfilling comm, feasibility gate, comm-absent bound, greedy split
#pragma once

#include <vector>

#include "specshare/metrics.hpp"
#include "specshare/report.hpp"
#include "specshare/scenario.hpp"

namespace specshare {

/// Interference-free comm waterfilling: capped_waterfill over gamma_cc with
/// budget P_c and cap xi_c.
std::vector<double> waterfill_comm(const ChannelRealization& ch, const Constraints& cons);

struct FeasibilityReport {
    bool feasible = false;
    double max_throughput = 0.0;  // throughput of the waterfilling comm with the radar silent
};

/// The throughput floor is attainable iff the radar-silent waterfilling comm
/// reaches it. Gates solve_joint, solve_unilateral and greedy_search.
FeasibilityReport check_feasibility(const ChannelRealization& ch, const Constraints& cons);

/// Upper bound for the radar: comm switched off entirely (p_c = 0), radar
/// SINR maximized under its own budget/peak only.
SolveReport comm_absent_optimum(const ChannelRealization& ch,
                                const Constraints& cons,
                                const SystemConfig& cfg);

/// 0/1 ownership per subcarrier produced by the greedy split.
struct SubcarrierAssignment {
    std::vector<int> comm_owned;  // u_n: 1 when the comm system owns subcarrier n
};

struct GreedyResult {
    SolveReport report;
    SubcarrierAssignment assignment;
};

/// Disjoint-spectrum baseline: give the comm system its best subcarriers by
/// gamma_cc (ties to the lower index), re-waterfilling the full comm budget
/// over the selected set each round, until the throughput floor is met; the
/// radar then maximizes its SINR on the complement. The two allocations
/// never overlap on a subcarrier.
GreedyResult greedy_search(const ChannelRealization& ch,
                           const Constraints& cons,
                           const SystemConfig& cfg);

}  // namespace specshare
