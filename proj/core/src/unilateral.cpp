#include "specshare/unilateral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "specshare/baselines.hpp"
#include "specshare/joint.hpp"
#include "specshare/solver.hpp"

namespace specshare {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kInnerTol = 1e-9;
constexpr int kInnerIterCap = 4000;

void check_problem(const UnilateralProblem& prob) {
    if (prob.comm_fixed.size() != prob.ch.size()) {
        throw std::invalid_argument("comm_fixed/channel size mismatch");
    }
}

// Negated minimand; maximizing it minimizes the rewritten objective.
Oracle neg_minimand(const ChannelRealization& ch, std::vector<double> comm_fixed) {
    return [ch, pc = std::move(comm_fixed)](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
        const std::size_t n = ch.size();
        if (grad) grad->setZero(n);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = ch.eta_cr[i] * pc[i] + 1.0;
            const double num = ch.gamma_rr[i] * c;
            const double den = ch.eta_rr[i] * ch.eta_rr[i] * x[i] + ch.eta_rr[i] * c;
            total -= num / den;
            if (grad) (*grad)[i] = num * ch.eta_rr[i] * ch.eta_rr[i] / (den * den);
        }
        return total;
    };
}

Oracle floor_constraint(const ChannelRealization& ch, std::vector<double> comm_fixed,
                        std::vector<double> anchor, double kappa) {
    const std::size_t n = ch.size();
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = ch.eta_rc[i] * anchor[i];
    return [ch, pc = std::move(comm_fixed), a = std::move(a), kappa](const Eigen::VectorXd& x,
                                                                     Eigen::VectorXd* grad) {
        const std::size_t n2 = ch.size();
        if (grad) grad->setZero(n2);
        double val = -kappa;
        for (std::size_t i = 0; i < n2; ++i) {
            const double u = ch.gamma_cc[i] * pc[i] + ch.eta_rc[i] * x[i] + 1.0;
            val += std::log2(u) - std::log2(a[i] + 1.0) -
                   (ch.eta_rc[i] * x[i] - a[i]) / (kLn2 * (a[i] + 1.0));
            if (grad) {
                (*grad)[i] = ch.eta_rc[i] / (kLn2 * u) - ch.eta_rc[i] / (kLn2 * (a[i] + 1.0));
            }
        }
        return val;
    };
}

}  // namespace

double rewritten_objective(const UnilateralProblem& prob, const std::vector<double>& p_r) {
    check_problem(prob);
    if (p_r.size() != prob.ch.size()) {
        throw std::invalid_argument("p_r/channel size mismatch");
    }
    const ChannelRealization& ch = prob.ch;
    double total = 0.0;
    for (std::size_t i = 0; i < ch.size(); ++i) {
        if (!(ch.eta_rr[i] > 0.0)) {
            throw std::domain_error("rewritten_objective: zero clutter gain");
        }
        const double c = ch.eta_cr[i] * prob.comm_fixed[i] + 1.0;
        total += ch.gamma_rr[i] * c /
                 (ch.eta_rr[i] * ch.eta_rr[i] * p_r[i] + ch.eta_rr[i] * c);
    }
    return total;
}

double taylor_throughput_bound(const UnilateralProblem& prob, const std::vector<double>& p_r,
                               const std::vector<double>& anchor) {
    check_problem(prob);
    if (p_r.size() != prob.ch.size() || anchor.size() != prob.ch.size()) {
        throw std::invalid_argument("p_r/anchor/channel size mismatch");
    }
    const ChannelRealization& ch = prob.ch;
    double total = 0.0;
    for (std::size_t i = 0; i < ch.size(); ++i) {
        const double u = ch.eta_rc[i] * p_r[i] + 1.0 + ch.gamma_cc[i] * prob.comm_fixed[i];
        const double b = ch.eta_rc[i] * anchor[i] + 1.0;
        total += std::log2(u) - std::log2(b) - ch.eta_rc[i] * (p_r[i] - anchor[i]) / (kLn2 * b);
    }
    return total;
}

SolveReport solve_unilateral(const UnilateralProblem& prob, const SystemConfig& cfg,
                             const std::optional<std::vector<double>>& init) {
    check_problem(prob);
    const ChannelRealization& ch = prob.ch;
    const Constraints& cons = prob.cons;
    const std::size_t n = ch.size();

    SolveReport rep;
    rep.allocation.radar.assign(n, 0.0);
    rep.allocation.comm = prob.comm_fixed;

    // Radar silence must already meet the floor; more radar power only hurts.
    double silent_throughput = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        silent_throughput += std::log2(1.0 + ch.gamma_cc[i] * prob.comm_fixed[i]);
    }
    if (silent_throughput < cons.throughput_floor) {
        rep.allocation.comm.assign(n, 0.0);  // no allocation on infeasible instances
        rep.status = SolveOutcome::Infeasible;
        return rep;
    }

    std::vector<double> cur = init.value_or(std::vector<double>(
        n, 1e-6 * cons.total_radar_power / static_cast<double>(n)));
    if (cur.size() != n) {
        throw std::invalid_argument("init/channel size mismatch");
    }

    const bool degenerate =
        std::any_of(ch.eta_rr.begin(), ch.eta_rr.end(), [](double e) { return !(e > 0.0); });
    if (degenerate) {
        // The surrogate loop handles zero clutter natively; keep the near-zero
        // start so the anchored floor holds from the first round.
        return solve_fixed_comm(ch, prob.comm_fixed, cons, cfg, cur, true);
    }

    auto with_comm = [&](const std::vector<double>& r) {
        PowerAllocation a;
        a.radar = r;
        a.comm = prob.comm_fixed;
        return a;
    };

    ConvexProblem base;
    base.dimension = static_cast<int>(n);
    base.box_lower = Eigen::VectorXd::Zero(n);
    base.box_upper = Eigen::VectorXd::Constant(n, cons.peak_radar);
    BudgetGroup budget;
    budget.budget = cons.total_radar_power;
    for (std::size_t i = 0; i < n; ++i) budget.indices.push_back(static_cast<int>(i));
    base.budget_groups = {std::move(budget)};
    base.objective = neg_minimand(ch, prob.comm_fixed);

    const Eigen::VectorXd z = Eigen::VectorXd::Constant(
        n, 1e-3 * std::min(cons.peak_radar, cons.total_radar_power / static_cast<double>(n)));
    static constexpr double kThetas[] = {0.0, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2};

    rep.objective_trace.push_back(radar_sinr(ch, with_comm(cur)));
    double h_prev = rewritten_objective(prob, cur);
    bool converged = false;
    int outer = 0;
    while (outer < cfg.max_outer_iters) {
        ++outer;
        ConvexProblem iter_prob = base;
        iter_prob.concave_constraints = {
            floor_constraint(ch, prob.comm_fixed, cur, cons.throughput_floor)};
        const Eigen::VectorXd anchor =
            Eigen::Map<const Eigen::VectorXd>(cur.data(), static_cast<Eigen::Index>(n));

        bool solved = false;
        Solution sol;
        for (double th : kThetas) {
            iter_prob.start = (1.0 - th) * anchor + th * z;
            sol = solve_concave(iter_prob, kInnerTol, kInnerIterCap);
            if (sol.status != SolveStatus::InfeasibleStart) {
                solved = true;
                break;
            }
        }
        if (!solved) {
            converged = true;  // anchored set has empty interior; keep the iterate
            break;
        }
        ++rep.total_inner_iters;

        std::vector<double> next(sol.point.data(), sol.point.data() + n);
        const double prev_sinr = rep.objective_trace.back();
        const double next_sinr = radar_sinr(ch, with_comm(next));
        if (next_sinr >= prev_sinr) cur = std::move(next);
        rep.objective_trace.push_back(std::max(next_sinr, prev_sinr));

        const double h = rewritten_objective(prob, cur);
        if (std::abs(h - h_prev) < cfg.tolerance * std::max(std::abs(h_prev), 1e-12)) {
            converged = true;
            break;
        }
        h_prev = h;
    }

    rep.allocation = with_comm(cur);
    rep.sinr = radar_sinr(ch, rep.allocation);
    rep.throughput = comm_throughput(ch, rep.allocation);
    rep.outer_iters = outer;
    rep.status = converged ? SolveOutcome::Converged : SolveOutcome::MaxIters;
    return rep;
}

}  // namespace specshare
