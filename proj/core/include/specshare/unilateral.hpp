// unilateral.hpp - radar-side optimization against a fixed waterfilling comm
#pragma once

#include <optional>
#include <vector>

#include "specshare/metrics.hpp"
#include "specshare/report.hpp"
#include "specshare/scenario.hpp"

namespace specshare {

/// Radar-only problem data: channels, constraints, and the comm allocation
/// frozen at its interference-free waterfilling solution.
struct UnilateralProblem {
    ChannelRealization ch;
    Constraints cons;
    std::vector<double> comm_fixed;  // p~_c, capped waterfilling of gamma_cc
};

/// Equivalent form of the radar objective with comm frozen:
///   sum_n gamma_rr,n (eta_cr,n p~_c,n + 1) /
///         (eta_rr,n^2 p_r,n + eta_rr,n (eta_cr,n p~_c,n + 1)).
/// Minimizing this over p_r maximizes the SINR; the identity
///   SINR = sum_n gamma_rr,n/eta_rr,n - (this) requires eta_rr,n > 0, so a
/// zero clutter gain raises std::domain_error.
double rewritten_objective(const UnilateralProblem& prob, const std::vector<double>& p_r);

/// First-order inner bound of the per-subcarrier throughput at the anchor:
///   sum_n [ log2(eta_rc,n p_r,n + 1 + gamma_cc,n p~_c,n)
///         - log2(eta_rc,n a_n + 1)
///         - eta_rc,n (p_r,n - a_n) / (ln2 (eta_rc,n a_n + 1)) ],  a = anchor.
/// Equals the true throughput at p_r == anchor, never exceeds it elsewhere.
double taylor_throughput_bound(const UnilateralProblem& prob,
                               const std::vector<double>& p_r,
                               const std::vector<double>& anchor);

/// Successively minimize rewritten_objective under budget/peak and the
/// anchored throughput bound, re-anchoring at each round. Default start is
/// the near-zero uniform point 1e-6 * P_r/N. Instances with any
/// eta_rr,n = 0 are routed through the surrogate loop of solve_fixed_comm
/// instead (same fixed comm, same constraint handling).
SolveReport solve_unilateral(const UnilateralProblem& prob,
                             const SystemConfig& cfg,
                             const std::optional<std::vector<double>>& init = std::nullopt);

}  // namespace specshare
