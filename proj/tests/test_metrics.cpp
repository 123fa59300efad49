#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "specshare/metrics.hpp"

using namespace specshare;

namespace {

ChannelRealization make_channel(std::vector<double> grr, std::vector<double> gcc,
                                std::vector<double> erc, std::vector<double> ecr,
                                std::vector<double> err) {
    ChannelRealization ch;
    ch.gamma_rr = std::move(grr);
    ch.gamma_cc = std::move(gcc);
    ch.eta_rc = std::move(erc);
    ch.eta_cr = std::move(ecr);
    ch.eta_rr = std::move(err);
    return ch;
}

}  // namespace

TEST_CASE("radar sinr accumulates per-subcarrier ratios") {
    auto ch = make_channel({1.0, 2.0}, {1.0, 1.0}, {0.0, 0.0}, {0.05, 0.05}, {0.1, 0.2});
    PowerAllocation alloc{{10.0, 10.0}, {4.0, 4.0}};
    const double expected = 10.0 / 2.2 + 20.0 / 3.2;
    CHECK(radar_sinr(ch, alloc) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(radar_sinr(ch, alloc) == doctest::Approx(10.7955).epsilon(1e-4));
}

TEST_CASE("radar sinr without interference or clutter is the plain SNR") {
    auto ch = make_channel({1.0}, {1.0}, {0.0}, {0.0}, {0.0});
    PowerAllocation alloc{{5.0}, {0.0}};
    CHECK(radar_sinr(ch, alloc) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("radar sinr is zero at zero radar power") {
    auto ch = make_channel({1.0, 2.0}, {1.0, 1.0}, {0.1, 0.1}, {0.1, 0.1}, {0.1, 0.1});
    PowerAllocation alloc{{0.0, 0.0}, {3.0, 3.0}};
    CHECK(radar_sinr(ch, alloc) == 0.0);
}

TEST_CASE("radar sinr rises with radar power and falls with comm interference") {
    auto ch = make_channel({1.0, 0.5, 2.0}, {1.0, 1.0, 1.0}, {0.0, 0.0, 0.0},
                           {0.3, 0.3, 0.3}, {0.1, 0.2, 0.05});
    PowerAllocation alloc{{1.0, 2.0, 3.0}, {1.0, 1.0, 1.0}};
    const double base = radar_sinr(ch, alloc);

    PowerAllocation more_radar = alloc;
    more_radar.radar[1] += 0.5;
    CHECK(radar_sinr(ch, more_radar) > base);

    PowerAllocation more_comm = alloc;
    more_comm.comm[2] += 0.5;
    CHECK(radar_sinr(ch, more_comm) < base);
}

TEST_CASE("throughput sums the per-subcarrier rates") {
    auto ch = make_channel({1.0, 1.0}, {3.0, 1.0}, {1.0, 0.0}, {0.0, 0.0}, {0.1, 0.1});
    PowerAllocation alloc{{1.0, 7.0}, {1.0, 3.0}};
    const double expected = std::log2(2.5) + std::log2(4.0);
    CHECK(comm_throughput(ch, alloc) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(comm_throughput(ch, alloc) == doctest::Approx(3.3219).epsilon(1e-4));
}

TEST_CASE("throughput is zero at zero comm power and grows with it") {
    auto ch = make_channel({1.0}, {2.0}, {0.5}, {0.0}, {0.1});
    PowerAllocation silent{{4.0}, {0.0}};
    CHECK(comm_throughput(ch, silent) == 0.0);

    PowerAllocation low{{4.0}, {1.0}};
    PowerAllocation high{{4.0}, {2.0}};
    CHECK(comm_throughput(ch, high) > comm_throughput(ch, low));

    // Radar power only hurts through the cross gain.
    PowerAllocation quieter_radar{{1.0}, {1.0}};
    CHECK(comm_throughput(ch, quieter_radar) > comm_throughput(ch, low));
}

TEST_CASE("metrics add across disjoint subcarrier blocks") {
    auto a = make_channel({1.0, 2.0}, {0.5, 1.5}, {0.2, 0.1}, {0.3, 0.2}, {0.1, 0.4});
    auto b = make_channel({0.7}, {2.5}, {0.05}, {0.15}, {0.2});
    PowerAllocation pa{{2.0, 3.0}, {1.0, 2.0}};
    PowerAllocation pb{{4.0}, {0.5}};

    ChannelRealization both = a;
    both.gamma_rr.insert(both.gamma_rr.end(), b.gamma_rr.begin(), b.gamma_rr.end());
    both.gamma_cc.insert(both.gamma_cc.end(), b.gamma_cc.begin(), b.gamma_cc.end());
    both.eta_rc.insert(both.eta_rc.end(), b.eta_rc.begin(), b.eta_rc.end());
    both.eta_cr.insert(both.eta_cr.end(), b.eta_cr.begin(), b.eta_cr.end());
    both.eta_rr.insert(both.eta_rr.end(), b.eta_rr.begin(), b.eta_rr.end());
    PowerAllocation pboth{{2.0, 3.0, 4.0}, {1.0, 2.0, 0.5}};

    CHECK(radar_sinr(both, pboth) ==
          doctest::Approx(radar_sinr(a, pa) + radar_sinr(b, pb)).epsilon(1e-14));
    CHECK(comm_throughput(both, pboth) ==
          doctest::Approx(comm_throughput(a, pa) + comm_throughput(b, pb)).epsilon(1e-14));
}

TEST_CASE("dimension mismatches are rejected") {
    auto ch = make_channel({1.0, 2.0}, {1.0, 1.0}, {0.0, 0.0}, {0.0, 0.0}, {0.1, 0.1});
    PowerAllocation short_radar{{1.0}, {1.0, 1.0}};
    PowerAllocation short_comm{{1.0, 1.0}, {1.0}};
    CHECK_THROWS_AS(radar_sinr(ch, short_radar), std::invalid_argument);
    CHECK_THROWS_AS(comm_throughput(ch, short_comm), std::invalid_argument);
}

TEST_CASE("db conversion") {
    CHECK(to_db(1.0) == doctest::Approx(0.0));
    CHECK(to_db(100.0) == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(to_db(10.7955) == doctest::Approx(10.3325).epsilon(1e-4));
    CHECK_THROWS_AS(to_db(0.0), std::domain_error);
    CHECK_THROWS_AS(to_db(-3.0), std::domain_error);
}
