// joint.hpp - joint radar/comm power allocation via quadratic transform + SCP
#pragma once

#include <optional>
#include <vector>

#include "specshare/metrics.hpp"
#include "specshare/report.hpp"
#include "specshare/scenario.hpp"

namespace specshare {

/// Closed-form multiplier update for the fractional-programming surrogate:
///   lambda_n = sqrt(gamma_rr,n p_r,n) / (eta_rr,n p_r,n + eta_cr,n p_c,n + 1).
/// Subcarriers with gamma_rr,n p_r,n = 0 get lambda_n = 0.
std::vector<double> update_lambda(const ChannelRealization& ch, const PowerAllocation& alloc);

/// Surrogate objective
///   F(lambda, P) = sum_n 2 lambda_n sqrt(gamma_rr,n p_r,n)
///                - lambda_n^2 (eta_rr,n p_r,n + eta_cr,n p_c,n + 1).
/// With lambda = update_lambda(ch, P) this equals radar_sinr(ch, P).
double surrogate_value(const ChannelRealization& ch,
                       const std::vector<double>& lambda,
                       const PowerAllocation& alloc);

/// Concave inner approximation of the throughput used by the SCP step:
///   sum_n log2(gamma_cc,n p_c,n + eta_rc,n p_r,n + 1)
///   - sum_n [log2(a_n + 1) + (eta_rc,n p_r,n - a_n) / (ln2 (a_n + 1))],
/// a_n = eta_rc,n * anchor.radar[n]. Equals comm_throughput at alloc == anchor
/// and never exceeds comm_throughput elsewhere.
double linearized_throughput(const ChannelRealization& ch,
                             const PowerAllocation& alloc,
                             const PowerAllocation& anchor);

/// Alternate multiplier updates with inner SCP rounds; each inner round
/// maximizes the surrogate under budgets, peaks and the anchored throughput
/// approximation. The SINR trace is nondecreasing and both loops stop on a
/// relative-change test against cfg.tolerance. Default initialization is the
/// greedy-search assignment blended slightly into the strict interior.
SolveReport solve_joint(const ChannelRealization& ch,
                        const Constraints& cons,
                        const SystemConfig& cfg,
                        const std::optional<PowerAllocation>& init = std::nullopt);

/// Radar-only variant with the comm powers frozen: maximizes the radar SINR
/// over p_r via the same multiplier/surrogate loop. When enforce_throughput
/// is set, the anchored throughput approximation (in p_r only) is kept as a
/// constraint; otherwise the throughput floor is ignored.
SolveReport solve_fixed_comm(const ChannelRealization& ch,
                             const std::vector<double>& comm_fixed,
                             const Constraints& cons,
                             const SystemConfig& cfg,
                             const std::optional<std::vector<double>>& init_radar = std::nullopt,
                             bool enforce_throughput = false);

}  // namespace specshare
