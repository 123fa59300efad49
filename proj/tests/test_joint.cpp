#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "specshare/baselines.hpp"
#include "specshare/joint.hpp"
#include "specshare/metrics.hpp"
#include "specshare/scenario.hpp"

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

SystemConfig small_config(int n) {
    SystemConfig cfg;
    cfg.n_subcarriers = n;
    cfg.P_r = 20.0;
    cfg.P_c = 20.0;
    cfg.xi_r = 4.0 * cfg.P_r / n;
    cfg.xi_c = 4.0 * cfg.P_c / n;
    cfg.kappa = 1.0;
    cfg.tolerance = 1e-8;
    cfg.max_outer_iters = 200;
    return cfg;
}

PowerAllocation random_alloc(std::mt19937_64& rng, int n, double peak_r, double peak_c) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PowerAllocation alloc;
    alloc.radar.resize(n);
    alloc.comm.resize(n);
    for (int i = 0; i < n; ++i) {
        alloc.radar[i] = peak_r * u(rng);
        alloc.comm[i] = peak_c * u(rng);
    }
    return alloc;
}

}  // namespace

TEST_CASE("multiplier update closed form") {
    auto ch = make_channel({1.0}, {1.0}, {0.0}, {0.5}, {0.25});
    PowerAllocation alloc{{4.0}, {2.0}};
    // sqrt(1*4) / (0.25*4 + 0.5*2 + 1) = 2/3
    auto lam = update_lambda(ch, alloc);
    REQUIRE(lam.size() == 1);
    CHECK(lam[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    PowerAllocation silent{{0.0}, {2.0}};
    CHECK(update_lambda(ch, silent)[0] == 0.0);

    auto clean = make_channel({1.0}, {1.0}, {0.0}, {0.0}, {0.0});
    PowerAllocation nine{{9.0}, {0.0}};
    CHECK(update_lambda(clean, nine)[0] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("surrogate equals the sinr at the optimal multiplier") {
    auto ch = make_channel({1.0}, {1.0}, {0.0}, {0.5}, {0.25});
    PowerAllocation alloc{{4.0}, {2.0}};
    auto lam = update_lambda(ch, alloc);
    const double sinr = radar_sinr(ch, alloc);
    CHECK(sinr == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(surrogate_value(ch, lam, alloc) == doctest::Approx(sinr).epsilon(1e-14));

    // any other multiplier can only undershoot
    CHECK(surrogate_value(ch, {lam[0] + 0.1}, alloc) < sinr);
    CHECK(surrogate_value(ch, {lam[0] - 0.1}, alloc) < sinr);
    CHECK(surrogate_value(ch, {0.0}, alloc) == 0.0);
}

TEST_CASE("surrogate identity holds across random channels and allocations") {
    SystemConfig cfg = small_config(8);
    std::mt19937_64 rng(99);
    for (int k = 0; k < 100; ++k) {
        ChannelRealization ch = generate_channels(cfg, k);
        PowerAllocation alloc = random_alloc(rng, 8, cfg.xi_r, cfg.xi_c);
        auto lam = update_lambda(ch, alloc);
        const double sinr = radar_sinr(ch, alloc);
        CHECK(std::abs(surrogate_value(ch, lam, alloc) - sinr) <= 1e-9);
    }
}

TEST_CASE("anchored throughput bound is tight at the anchor and conservative elsewhere") {
    SystemConfig cfg = small_config(8);
    std::mt19937_64 rng(7);
    for (int k = 0; k < 60; ++k) {
        ChannelRealization ch = generate_channels(cfg, k);
        PowerAllocation anchor = random_alloc(rng, 8, cfg.xi_r, cfg.xi_c);
        const double at_anchor = comm_throughput(ch, anchor);
        CHECK(std::abs(linearized_throughput(ch, anchor, anchor) - at_anchor) <=
              1e-9 * (1.0 + std::abs(at_anchor)));
        for (int j = 0; j < 5; ++j) {
            PowerAllocation other = random_alloc(rng, 8, cfg.xi_r, cfg.xi_c);
            const double truth = comm_throughput(ch, other);
            CHECK(linearized_throughput(ch, other, anchor) <=
                  truth + 1e-12 * (1.0 + std::abs(truth)));
        }
    }
}

TEST_CASE("anchored throughput bound hand value") {
    auto ch = make_channel({1.0}, {2.0}, {0.5}, {0.0}, {0.1});
    PowerAllocation anchor{{2.0}, {1.0}};  // a = 0.5*2 = 1
    PowerAllocation alloc{{4.0}, {3.0}};
    const double expected =
        std::log2(2.0 * 3.0 + 0.5 * 4.0 + 1.0) - std::log2(2.0) -
        (0.5 * 4.0 - 1.0) / (std::log(2.0) * 2.0);
    CHECK(linearized_throughput(ch, alloc, anchor) ==
          doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected < comm_throughput(ch, alloc));
}

TEST_CASE("joint solve respects every constraint and reports a monotone trace") {
    SystemConfig cfg = small_config(4);
    cfg.tolerance = 1e-6;
    ChannelRealization ch = generate_channels(cfg, 11);
    Constraints cons = cfg.constraints();
    SolveReport rep = solve_joint(ch, cons, cfg);

    REQUIRE(rep.status != SolveOutcome::Infeasible);
    double radar_sum = 0.0, comm_sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        CHECK(rep.allocation.radar[i] >= 0.0);
        CHECK(rep.allocation.comm[i] >= 0.0);
        CHECK(rep.allocation.radar[i] <= cons.peak_radar);
        CHECK(rep.allocation.comm[i] <= cons.peak_comm);
        radar_sum += rep.allocation.radar[i];
        comm_sum += rep.allocation.comm[i];
    }
    CHECK(radar_sum <= cons.total_radar_power + 1e-9);
    CHECK(comm_sum <= cons.total_comm_power + 1e-9);
    CHECK(rep.throughput >= cons.throughput_floor);

    REQUIRE(rep.objective_trace.size() >= 2);
    for (std::size_t i = 1; i < rep.objective_trace.size(); ++i) {
        CHECK(rep.objective_trace[i] >= rep.objective_trace[i - 1]);
    }
    CHECK(rep.sinr == doctest::Approx(rep.objective_trace.back()).epsilon(1e-12));
    CHECK(rep.sinr == doctest::Approx(radar_sinr(ch, rep.allocation)).epsilon(1e-12));
    CHECK(rep.throughput == doctest::Approx(comm_throughput(ch, rep.allocation)).epsilon(1e-12));
}

TEST_CASE("a zero throughput floor drives the comm system silent") {
    SystemConfig cfg = small_config(2);
    cfg.kappa = 0.0;
    cfg.tolerance = 1e-8;
    ChannelRealization ch = generate_channels(cfg, 3);
    Constraints cons = cfg.constraints();

    SolveReport joint = solve_joint(ch, cons, cfg);
    SolveReport bound = comm_absent_optimum(ch, cons, cfg);
    REQUIRE(joint.status == SolveOutcome::Converged);
    CHECK(joint.allocation.comm[0] + joint.allocation.comm[1] <= 1e-5 * cons.total_comm_power);
    CHECK(joint.sinr == doctest::Approx(bound.sinr).epsilon(1e-4));
    CHECK(joint.sinr <= bound.sinr * (1.0 + 1e-6));
}

TEST_CASE("decoupled cross gains reduce the joint solve to the comm-absent radar problem") {
    SystemConfig cfg = small_config(3);
    cfg.tolerance = 1e-9;
    cfg.max_outer_iters = 300;
    auto ch = make_channel({1.2, 0.8, 2.0}, {1.5, 0.4, 0.9}, {0.0, 0.0, 0.0},
                           {0.0, 0.0, 0.0}, {0.1, 0.3, 0.2});
    Constraints cons = cfg.constraints();
    SolveReport joint = solve_joint(ch, cons, cfg);
    SolveReport bound = comm_absent_optimum(ch, cons, cfg);
    REQUIRE(joint.status != SolveOutcome::Infeasible);
    CHECK(joint.sinr == doctest::Approx(bound.sinr).epsilon(1e-5));
    CHECK(joint.throughput >= cons.throughput_floor);
}

TEST_CASE("unreachable floor is reported infeasible with no allocation") {
    SystemConfig cfg = small_config(1);
    cfg.P_c = 3.0;
    cfg.xi_c = 3.0;
    cfg.kappa = 2.5;  // max throughput is log2(4) = 2
    auto ch = make_channel({1.0}, {1.0}, {0.1}, {0.1}, {0.1});
    SolveReport rep = solve_joint(ch, cfg.constraints(), cfg);
    CHECK(rep.status == SolveOutcome::Infeasible);
    CHECK(rep.sinr == 0.0);
    CHECK(rep.allocation.radar == std::vector<double>{0.0});
    CHECK(rep.allocation.comm == std::vector<double>{0.0});
}

TEST_CASE("mis-sized initial points are rejected") {
    SystemConfig cfg = small_config(2);
    ChannelRealization ch = generate_channels(cfg, 0);
    PowerAllocation bad{{1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(solve_joint(ch, cfg.constraints(), cfg, bad), std::invalid_argument);
}

TEST_CASE("fixed-comm radar solve saturates a single clean subcarrier") {
    SystemConfig cfg = small_config(1);
    cfg.P_r = 10.0;
    cfg.xi_r = 10.0;
    cfg.tolerance = 1e-8;
    auto ch = make_channel({2.0}, {1.0}, {0.0}, {0.0}, {0.5});
    SolveReport rep = solve_fixed_comm(ch, {0.0}, cfg.constraints(), cfg);
    REQUIRE(rep.status == SolveOutcome::Converged);
    CHECK(rep.allocation.radar[0] >= 9.999);
    // 2*10 / (0.5*10 + 1)
    CHECK(rep.sinr == doctest::Approx(20.0 / 6.0).epsilon(1e-4));
    CHECK(rep.allocation.comm == std::vector<double>{0.0});
}
