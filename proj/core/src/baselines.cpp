#include "specshare/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "specshare/joint.hpp"
#include "specshare/solver.hpp"

namespace specshare {

std::vector<double> waterfill_comm(const ChannelRealization& ch, const Constraints& cons) {
    return capped_waterfill(ch.gamma_cc, cons.total_comm_power, cons.peak_comm);
}

FeasibilityReport check_feasibility(const ChannelRealization& ch, const Constraints& cons) {
    PowerAllocation best;
    best.radar.assign(ch.size(), 0.0);
    best.comm = waterfill_comm(ch, cons);
    FeasibilityReport rep;
    rep.max_throughput = comm_throughput(ch, best);
    rep.feasible = rep.max_throughput >= cons.throughput_floor;
    return rep;
}

SolveReport comm_absent_optimum(const ChannelRealization& ch, const Constraints& cons,
                                const SystemConfig& cfg) {
    return solve_fixed_comm(ch, std::vector<double>(ch.size(), 0.0), cons, cfg);
}

GreedyResult greedy_search(const ChannelRealization& ch, const Constraints& cons,
                           const SystemConfig& cfg) {
    const std::size_t n = ch.size();
    GreedyResult res;
    res.assignment.comm_owned.assign(n, 0);
    res.report.allocation.radar.assign(n, 0.0);
    res.report.allocation.comm.assign(n, 0.0);

    if (!check_feasibility(ch, cons).feasible) {
        res.report.status = SolveOutcome::Infeasible;
        return res;
    }

    // Comm claims subcarriers in descending gamma_cc order (ties to the lower
    // index), re-waterfilling its whole budget over the claimed set, until the
    // floor is met. The feasibility gate guarantees termination.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return ch.gamma_cc[i] > ch.gamma_cc[j]; });

    std::vector<int> comm_set;
    std::vector<double> comm_powers;
    double reached = 0.0;
    std::size_t next = 0;
    while (reached < cons.throughput_floor && next < n) {
        comm_set.push_back(order[next]);
        ++next;
        std::vector<double> gains(comm_set.size());
        for (std::size_t t = 0; t < comm_set.size(); ++t) gains[t] = ch.gamma_cc[comm_set[t]];
        comm_powers = capped_waterfill(gains, cons.total_comm_power, cons.peak_comm);
        reached = 0.0;
        for (std::size_t t = 0; t < comm_set.size(); ++t) {
            reached += std::log2(1.0 + gains[t] * comm_powers[t]);
        }
    }
    for (std::size_t t = 0; t < comm_set.size(); ++t) {
        res.report.allocation.comm[comm_set[t]] = comm_powers[t];
        res.assignment.comm_owned[comm_set[t]] = 1;
    }

    std::vector<int> radar_set;
    for (std::size_t i = 0; i < n; ++i) {
        if (!res.assignment.comm_owned[i]) radar_set.push_back(static_cast<int>(i));
    }
    if (radar_set.empty()) {
        res.report.objective_trace.push_back(0.0);
        res.report.throughput = comm_throughput(ch, res.report.allocation);
        res.report.status = SolveOutcome::Converged;
        return res;
    }

    ChannelRealization sub;
    for (int idx : radar_set) {
        sub.gamma_rr.push_back(ch.gamma_rr[idx]);
        sub.gamma_cc.push_back(ch.gamma_cc[idx]);
        sub.eta_rc.push_back(ch.eta_rc[idx]);
        sub.eta_cr.push_back(ch.eta_cr[idx]);
        sub.eta_rr.push_back(ch.eta_rr[idx]);
    }
    const SolveReport radar =
        solve_fixed_comm(sub, std::vector<double>(radar_set.size(), 0.0), cons, cfg);
    for (std::size_t t = 0; t < radar_set.size(); ++t) {
        res.report.allocation.radar[radar_set[t]] = radar.allocation.radar[t];
    }
    res.report.sinr = radar_sinr(ch, res.report.allocation);
    res.report.throughput = comm_throughput(ch, res.report.allocation);
    res.report.objective_trace = radar.objective_trace;
    res.report.outer_iters = radar.outer_iters;
    res.report.total_inner_iters = radar.total_inner_iters;
    res.report.status = radar.status;
    return res;
}

}  // namespace specshare
