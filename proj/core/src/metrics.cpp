#include "specshare/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace specshare {

namespace {

void check_dims(const ChannelRealization& ch, const PowerAllocation& alloc, const char* where) {
    const auto n = ch.gamma_rr.size();
    if (ch.gamma_cc.size() != n || ch.eta_rc.size() != n || ch.eta_cr.size() != n ||
        ch.eta_rr.size() != n) {
        throw std::invalid_argument(std::string(where) + ": inconsistent channel vector sizes");
    }
    if (alloc.radar.size() != n || alloc.comm.size() != n) {
        throw std::invalid_argument(std::string(where) + ": allocation size does not match channel");
    }
}

}  // namespace

double radar_sinr(const ChannelRealization& ch, const PowerAllocation& alloc) {
    check_dims(ch, alloc, "radar_sinr");
    double s = 0.0;
    for (std::size_t n = 0; n < ch.gamma_rr.size(); ++n) {
        const double den = ch.eta_rr[n] * alloc.radar[n] + ch.eta_cr[n] * alloc.comm[n] + 1.0;
        s += ch.gamma_rr[n] * alloc.radar[n] / den;
    }
    return s;
}

double comm_throughput(const ChannelRealization& ch, const PowerAllocation& alloc) {
    check_dims(ch, alloc, "comm_throughput");
    double c = 0.0;
    for (std::size_t n = 0; n < ch.gamma_cc.size(); ++n) {
        const double interference = ch.eta_rc[n] * alloc.radar[n] + 1.0;
        c += std::log2(1.0 + ch.gamma_cc[n] * alloc.comm[n] / interference);
    }
    return c;
}

double to_db(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("to_db: input must be positive");
    }
    return 10.0 * std::log10(x);
}

}  // namespace specshare
