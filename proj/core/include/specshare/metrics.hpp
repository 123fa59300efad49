// metrics.hpp - radar SINR, communication throughput, dB conversion
#pragma once

#include <vector>

#include "specshare/scenario.hpp"

namespace specshare {

/// Per-subcarrier transmit powers for both systems.
struct PowerAllocation {
    std::vector<double> radar;
    std::vector<double> comm;

    int size() const { return static_cast<int>(radar.size()); }
};

/// Integrated radar output SINR
///   sum_n gamma_rr,n p_r,n / (eta_rr,n p_r,n + eta_cr,n p_c,n + 1).
/// Clutter scales with the radar's own power; comm interference with the
/// comm power. Throws std::invalid_argument on dimension mismatch.
double radar_sinr(const ChannelRealization& ch, const PowerAllocation& alloc);

/// Communication throughput in bits/s/Hz summed over subcarriers
///   sum_n log2(1 + gamma_cc,n p_c,n / (eta_rc,n p_r,n + 1)).
double comm_throughput(const ChannelRealization& ch, const PowerAllocation& alloc);

/// 10*log10(x); throws std::domain_error for x <= 0.
double to_db(double x);

}  // namespace specshare
