// report.hpp - result record shared by the allocation methods
#pragma once

#include <vector>

#include "specshare/metrics.hpp"

namespace specshare {

enum class SolveOutcome {
    Converged,
    MaxIters,    // iteration cap hit; the allocation is still feasible
    Infeasible,  // throughput floor unreachable, no allocation produced
};

struct SolveReport {
    PowerAllocation allocation;
    double sinr = 0.0;        // radar_sinr of the returned allocation (linear)
    double throughput = 0.0;  // comm_throughput of the returned allocation
    std::vector<double> objective_trace;  // SINR per outer iteration, [0] = initialization
    int outer_iters = 0;
    int total_inner_iters = 0;  // convex subproblem solves performed
    SolveOutcome status = SolveOutcome::MaxIters;
};

}  // namespace specshare
