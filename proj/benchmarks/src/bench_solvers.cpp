// Benchmarks for the solver stack: waterfilling, the barrier solver on a
// quadratic, and the full allocation methods at typical problem sizes.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "specshare/baselines.hpp"
#include "specshare/joint.hpp"
#include "specshare/scenario.hpp"
#include "specshare/solver.hpp"
#include "specshare/unilateral.hpp"

namespace {

using namespace specshare;

SystemConfig bench_config(int n) {
    SystemConfig cfg;
    cfg.n_subcarriers = n;
    cfg.P_r = 600.0;
    cfg.P_c = 600.0;
    cfg.xi_r = 4.0 * cfg.P_r / n;
    cfg.xi_c = 4.0 * cfg.P_c / n;
    cfg.kappa = 2.5;
    cfg.seed = 7;
    return cfg;
}

void BM_CappedWaterfill(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    std::vector<double> gains(n);
    for (double& g : gains) g = u(rng);
    for (auto _ : state) {
        auto p = capped_waterfill(gains, 10.0, 1.0);
        benchmark::DoNotOptimize(p.data());
    }
}
BENCHMARK(BM_CappedWaterfill)->Arg(16)->Arg(128);

void BM_SolveConcaveQuadratic(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    ConvexProblem prob;
    prob.dimension = d;
    prob.objective = [d](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
        double v = 0.0;
        for (int i = 0; i < d; ++i) {
            const double c = 1.0 + 0.1 * i;
            v -= (x[i] - c) * (x[i] - c);
            if (grad) (*grad)[i] = -2.0 * (x[i] - c);
        }
        return v;
    };
    prob.box_lower = Eigen::VectorXd::Zero(d);
    prob.box_upper = Eigen::VectorXd::Constant(d, 10.0);
    BudgetGroup g;
    for (int i = 0; i < d; ++i) g.indices.push_back(i);
    g.budget = 0.5 * d;
    prob.budget_groups.push_back(g);
    prob.start = Eigen::VectorXd::Constant(d, 0.01);
    for (auto _ : state) {
        Solution sol = solve_concave(prob, 1e-8);
        benchmark::DoNotOptimize(sol.objective_value);
    }
}
BENCHMARK(BM_SolveConcaveQuadratic)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SolveJoint(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SystemConfig cfg = bench_config(n);
    ChannelRealization ch = generate_channels(cfg, 0);
    Constraints cons = cfg.constraints();
    for (auto _ : state) {
        SolveReport rep = solve_joint(ch, cons, cfg);
        benchmark::DoNotOptimize(rep.sinr);
    }
}
BENCHMARK(BM_SolveJoint)->Arg(8)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SolveUnilateral(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SystemConfig cfg = bench_config(n);
    ChannelRealization ch = generate_channels(cfg, 0);
    Constraints cons = cfg.constraints();
    UnilateralProblem prob{ch, cons, waterfill_comm(ch, cons)};
    for (auto _ : state) {
        SolveReport rep = solve_unilateral(prob, cfg);
        benchmark::DoNotOptimize(rep.sinr);
    }
}
BENCHMARK(BM_SolveUnilateral)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_GreedySearch(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SystemConfig cfg = bench_config(n);
    ChannelRealization ch = generate_channels(cfg, 0);
    Constraints cons = cfg.constraints();
    for (auto _ : state) {
        GreedyResult res = greedy_search(ch, cons, cfg);
        benchmark::DoNotOptimize(res.report.sinr);
    }
}
BENCHMARK(BM_GreedySearch)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
