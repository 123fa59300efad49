#include "specshare/joint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "specshare/baselines.hpp"
#include "specshare/solver.hpp"

namespace specshare {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kInnerTol = 1e-9;
constexpr int kInnerIterCap = 4000;

void check_alloc(const ChannelRealization& ch, const PowerAllocation& alloc) {
    if (alloc.radar.size() != ch.size() || alloc.comm.size() != ch.size()) {
        throw std::invalid_argument("allocation/channel size mismatch");
    }
}

Eigen::VectorXd pack(const PowerAllocation& alloc) {
    const std::size_t n = alloc.radar.size();
    Eigen::VectorXd x(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = alloc.radar[i];
        x[n + i] = alloc.comm[i];
    }
    return x;
}

PowerAllocation unpack(const Eigen::VectorXd& x, std::size_t n) {
    PowerAllocation alloc;
    alloc.radar.resize(n);
    alloc.comm.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        alloc.radar[i] = x[i];
        alloc.comm[i] = x[n + i];
    }
    return alloc;
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Strictly interior reference point: near-silent radar plus a comm vector
// pulled just inside its cap and budget. Every coordinate is positive, so
// blending any feasible anchor toward it also revives zeroed multipliers.
PowerAllocation interior_reference(const ChannelRealization& ch, const Constraints& cons) {
    const std::size_t n = ch.size();
    PowerAllocation z;
    z.radar.assign(n, 1e-3 * std::min(cons.peak_radar, cons.total_radar_power / static_cast<double>(n)));
    const double uc = std::min(0.5 * cons.peak_comm, 0.5 * cons.total_comm_power / static_cast<double>(n));
    const std::vector<double> wf = waterfill_comm(ch, cons);
    z.comm.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        z.comm[i] = (1.0 - 1e-3) * wf[i] + 1e-3 * uc;
    }
    return z;
}

std::vector<double> radar_reference(const Constraints& cons, std::size_t n) {
    return std::vector<double>(
        n, 1e-3 * std::min(cons.peak_radar, cons.total_radar_power / static_cast<double>(n)));
}

// Surrogate oracle over [p_r; p_c]. The sqrt is safe: the barrier keeps every
// coordinate strictly above the zero box bound before this runs.
Oracle joint_surrogate(const ChannelRealization& ch, std::vector<double> lam) {
    return [ch, lam = std::move(lam)](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
        const std::size_t n = ch.size();
        if (grad) grad->setZero(2 * n);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double pr = x[i], pc = x[n + i];
            const double s = std::sqrt(ch.gamma_rr[i] * pr);
            const double den = ch.eta_rr[i] * pr + ch.eta_cr[i] * pc + 1.0;
            total += 2.0 * lam[i] * s - lam[i] * lam[i] * den;
            if (grad) {
                double dr = -lam[i] * lam[i] * ch.eta_rr[i];
                if (s > 0.0) dr += lam[i] * ch.gamma_rr[i] / s;
                (*grad)[i] = dr;
                (*grad)[n + i] = -lam[i] * lam[i] * ch.eta_cr[i];
            }
        }
        return total;
    };
}

// Anchored throughput floor over [p_r; p_c]: linearized_throughput - kappa.
Oracle joint_floor(const ChannelRealization& ch, std::vector<double> a, double kappa) {
    return [ch, a = std::move(a), kappa](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
        const std::size_t n = ch.size();
        if (grad) grad->setZero(2 * n);
        double val = -kappa;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = ch.gamma_cc[i] * x[n + i] + ch.eta_rc[i] * x[i] + 1.0;
            val += std::log2(u) - std::log2(a[i] + 1.0) -
                   (ch.eta_rc[i] * x[i] - a[i]) / (kLn2 * (a[i] + 1.0));
            if (grad) {
                (*grad)[i] = ch.eta_rc[i] / (kLn2 * u) - ch.eta_rc[i] / (kLn2 * (a[i] + 1.0));
                (*grad)[n + i] = ch.gamma_cc[i] / (kLn2 * u);
            }
        }
        return val;
    };
}

ConvexProblem joint_inner_problem(const ChannelRealization& ch, const Constraints& cons,
                                  const std::vector<double>& lam, const PowerAllocation& anchor) {
    const int n = static_cast<int>(ch.size());
    ConvexProblem prob;
    prob.dimension = 2 * n;
    prob.box_lower = Eigen::VectorXd::Zero(2 * n);
    prob.box_upper.resize(2 * n);
    prob.box_upper.head(n).setConstant(cons.peak_radar);
    prob.box_upper.tail(n).setConstant(cons.peak_comm);
    BudgetGroup radar_budget, comm_budget;
    radar_budget.budget = cons.total_radar_power;
    comm_budget.budget = cons.total_comm_power;
    for (int i = 0; i < n; ++i) {
        radar_budget.indices.push_back(i);
        comm_budget.indices.push_back(n + i);
    }
    prob.budget_groups = {std::move(radar_budget), std::move(comm_budget)};
    prob.objective = joint_surrogate(ch, lam);
    std::vector<double> a(n);
    for (int i = 0; i < n; ++i) a[i] = ch.eta_rc[i] * anchor.radar[i];
    prob.concave_constraints.push_back(joint_floor(ch, std::move(a), cons.throughput_floor));
    return prob;
}

// Radar-only surrogate with the comm powers folded into the denominators.
Oracle radar_surrogate(const ChannelRealization& ch, std::vector<double> lam,
                       std::vector<double> comm_fixed) {
    return [ch, lam = std::move(lam), pc = std::move(comm_fixed)](const Eigen::VectorXd& x,
                                                                  Eigen::VectorXd* grad) {
        const std::size_t n = ch.size();
        if (grad) grad->setZero(n);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = std::sqrt(ch.gamma_rr[i] * x[i]);
            const double den = ch.eta_rr[i] * x[i] + ch.eta_cr[i] * pc[i] + 1.0;
            total += 2.0 * lam[i] * s - lam[i] * lam[i] * den;
            if (grad) {
                double dr = -lam[i] * lam[i] * ch.eta_rr[i];
                if (s > 0.0) dr += lam[i] * ch.gamma_rr[i] / s;
                (*grad)[i] = dr;
            }
        }
        return total;
    };
}

Oracle radar_floor(const ChannelRealization& ch, std::vector<double> comm_fixed,
                   std::vector<double> a, double kappa) {
    return [ch, pc = std::move(comm_fixed), a = std::move(a), kappa](const Eigen::VectorXd& x,
                                                                     Eigen::VectorXd* grad) {
        const std::size_t n = ch.size();
        if (grad) grad->setZero(n);
        double val = -kappa;
        for (std::size_t i = 0; i < n; ++i) {
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

ConvexProblem radar_inner_problem(const ChannelRealization& ch, const Constraints& cons,
                                  const std::vector<double>& lam,
                                  const std::vector<double>& comm_fixed,
                                  const std::vector<double>* anchor_r) {
    const int n = static_cast<int>(ch.size());
    ConvexProblem prob;
    prob.dimension = n;
    prob.box_lower = Eigen::VectorXd::Zero(n);
    prob.box_upper = Eigen::VectorXd::Constant(n, cons.peak_radar);
    BudgetGroup budget;
    budget.budget = cons.total_radar_power;
    for (int i = 0; i < n; ++i) budget.indices.push_back(i);
    prob.budget_groups = {std::move(budget)};
    prob.objective = radar_surrogate(ch, lam, comm_fixed);
    if (anchor_r) {
        std::vector<double> a(n);
        for (int i = 0; i < n; ++i) a[i] = ch.eta_rc[i] * (*anchor_r)[i];
        prob.concave_constraints.push_back(
            radar_floor(ch, comm_fixed, std::move(a), cons.throughput_floor));
    }
    return prob;
}

// The anchor itself may sit on a constraint boundary (spent budget, tight
// floor). Pull the start toward the interior reference just far enough for
// the barrier to accept it; if even a 1% pull fails the anchored feasible
// set has empty interior and the caller keeps the anchor as-is.
struct Attempt {
    bool ok = false;
    Solution sol;
};

Attempt solve_from_anchor(ConvexProblem& prob, const Eigen::VectorXd& anchor,
                          const Eigen::VectorXd& z) {
    static constexpr double kThetas[] = {0.0, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2};
    for (double th : kThetas) {
        prob.start = (1.0 - th) * anchor + th * z;
        Solution sol = solve_concave(prob, kInnerTol, kInnerIterCap);
        if (sol.status != SolveStatus::InfeasibleStart) return {true, std::move(sol)};
    }
    return {};
}

bool relative_stop(double prev, double next, double tol) {
    return std::abs(next - prev) < tol * std::max(std::abs(prev), 1e-12);
}

// Loose enough to admit waterfilling sums that overshoot a budget by ulps,
// tight enough that anything accepted still passes downstream validation.
bool within_constraints(const ChannelRealization& ch, const Constraints& cons,
                        const PowerAllocation& alloc) {
    double rsum = 0.0, csum = 0.0;
    for (std::size_t i = 0; i < ch.size(); ++i) {
        if (alloc.radar[i] < 0.0 || alloc.radar[i] > cons.peak_radar + 1e-9) return false;
        if (alloc.comm[i] < 0.0 || alloc.comm[i] > cons.peak_comm + 1e-9) return false;
        rsum += alloc.radar[i];
        csum += alloc.comm[i];
    }
    return rsum <= cons.total_radar_power + 1e-9 && csum <= cons.total_comm_power + 1e-9 &&
           comm_throughput(ch, alloc) >= cons.throughput_floor - 1e-9;
}

}  // namespace

std::vector<double> update_lambda(const ChannelRealization& ch, const PowerAllocation& alloc) {
    check_alloc(ch, alloc);
    const std::size_t n = ch.size();
    std::vector<double> lam(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double den = ch.eta_rr[i] * alloc.radar[i] + ch.eta_cr[i] * alloc.comm[i] + 1.0;
        lam[i] = std::sqrt(ch.gamma_rr[i] * alloc.radar[i]) / den;
    }
    return lam;
}

double surrogate_value(const ChannelRealization& ch, const std::vector<double>& lambda,
                       const PowerAllocation& alloc) {
    check_alloc(ch, alloc);
    if (lambda.size() != ch.size()) {
        throw std::invalid_argument("lambda/channel size mismatch");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < ch.size(); ++i) {
        const double den = ch.eta_rr[i] * alloc.radar[i] + ch.eta_cr[i] * alloc.comm[i] + 1.0;
        total += 2.0 * lambda[i] * std::sqrt(ch.gamma_rr[i] * alloc.radar[i]) -
                 lambda[i] * lambda[i] * den;
    }
    return total;
}

double linearized_throughput(const ChannelRealization& ch, const PowerAllocation& alloc,
                             const PowerAllocation& anchor) {
    check_alloc(ch, alloc);
    check_alloc(ch, anchor);
    double total = 0.0;
    for (std::size_t i = 0; i < ch.size(); ++i) {
        const double u = ch.gamma_cc[i] * alloc.comm[i] + ch.eta_rc[i] * alloc.radar[i] + 1.0;
        const double a = ch.eta_rc[i] * anchor.radar[i];
        total += std::log2(u) - std::log2(a + 1.0) -
                 (ch.eta_rc[i] * alloc.radar[i] - a) / (kLn2 * (a + 1.0));
    }
    return total;
}

SolveReport solve_joint(const ChannelRealization& ch, const Constraints& cons,
                        const SystemConfig& cfg, const std::optional<PowerAllocation>& init) {
    const std::size_t n = ch.size();
    SolveReport rep;
    rep.allocation.radar.assign(n, 0.0);
    rep.allocation.comm.assign(n, 0.0);

    if (!check_feasibility(ch, cons).feasible) {
        rep.status = SolveOutcome::Infeasible;
        return rep;
    }

    PowerAllocation base;
    if (init) {
        check_alloc(ch, *init);
        base = *init;
    } else {
        base = greedy_search(ch, cons, cfg).report.allocation;
    }

    const PowerAllocation z = interior_reference(ch, cons);
    PowerAllocation cur;
    cur.radar.resize(n);
    cur.comm.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        cur.radar[i] = (1.0 - 1e-3) * base.radar[i] + 1e-3 * z.radar[i];
        cur.comm[i] = (1.0 - 1e-3) * base.comm[i] + 1e-3 * z.comm[i];
    }

    // The interior blend only exists to give the barrier a strictly feasible
    // launch point; the raw initialization stays in the running so the result
    // can never fall below it.
    PowerAllocation best = cur;
    double best_sinr = radar_sinr(ch, cur);
    if (within_constraints(ch, cons, base)) {
        const double base_sinr = radar_sinr(ch, base);
        if (base_sinr > best_sinr) {
            best = base;
            best_sinr = base_sinr;
        }
    }

    rep.objective_trace.push_back(best_sinr);
    const Eigen::VectorXd z_vec = pack(z);
    bool converged = false;
    int outer = 0;
    while (outer < cfg.max_outer_iters) {
        ++outer;
        const std::vector<double> lam = update_lambda(ch, cur);
        PowerAllocation anchor = cur;
        double f_prev = surrogate_value(ch, lam, anchor);
        for (int s = 0; s < cfg.max_inner_iters; ++s) {
            ConvexProblem prob = joint_inner_problem(ch, cons, lam, anchor);
            Attempt at = solve_from_anchor(prob, pack(anchor), z_vec);
            if (!at.ok) break;
            ++rep.total_inner_iters;
            anchor = unpack(at.sol.point, n);
            const double f = at.sol.objective_value;
            const bool done = relative_stop(f_prev, f, cfg.tolerance);
            f_prev = f;
            if (done) break;
        }
        const double prev_sinr = rep.objective_trace.back();
        const double next_sinr = radar_sinr(ch, anchor);
        if (next_sinr >= prev_sinr) {
            cur = anchor;
            best = anchor;
            best_sinr = next_sinr;
        }
        rep.objective_trace.push_back(best_sinr);
        // No accepted improvement means the loop is at a fixpoint: later
        // rounds would relaunch from the same point.
        if (relative_stop(prev_sinr, best_sinr, cfg.tolerance)) {
            converged = true;
            break;
        }
    }

    rep.allocation = best;
    rep.sinr = best_sinr;
    rep.throughput = comm_throughput(ch, best);
    rep.outer_iters = outer;
    rep.status = converged ? SolveOutcome::Converged : SolveOutcome::MaxIters;
    return rep;
}

SolveReport solve_fixed_comm(const ChannelRealization& ch, const std::vector<double>& comm_fixed,
                             const Constraints& cons, const SystemConfig& cfg,
                             const std::optional<std::vector<double>>& init_radar,
                             bool enforce_throughput) {
    const std::size_t n = ch.size();
    if (comm_fixed.size() != n) {
        throw std::invalid_argument("comm_fixed/channel size mismatch");
    }
    SolveReport rep;
    rep.allocation.radar.assign(n, 0.0);
    rep.allocation.comm = comm_fixed;
    if (n == 0) {
        rep.objective_trace.push_back(0.0);
        rep.status = SolveOutcome::Converged;
        return rep;
    }

    std::vector<double> base =
        init_radar.value_or(std::vector<double>(
            n, std::min(cons.peak_radar, cons.total_radar_power / static_cast<double>(n))));
    if (base.size() != n) {
        throw std::invalid_argument("init_radar/channel size mismatch");
    }
    const std::vector<double> z = radar_reference(cons, n);
    std::vector<double> cur(n);
    for (std::size_t i = 0; i < n; ++i) cur[i] = (1.0 - 1e-3) * base[i] + 1e-3 * z[i];

    auto with_comm = [&](const std::vector<double>& r) {
        PowerAllocation a;
        a.radar = r;
        a.comm = comm_fixed;
        return a;
    };

    rep.objective_trace.push_back(radar_sinr(ch, with_comm(cur)));
    const Eigen::VectorXd z_vec = to_vec(z);
    bool converged = false;
    int outer = 0;
    while (outer < cfg.max_outer_iters) {
        ++outer;
        const std::vector<double> lam = update_lambda(ch, with_comm(cur));
        std::vector<double> anchor = cur;
        if (enforce_throughput) {
            double f_prev = surrogate_value(ch, lam, with_comm(anchor));
            for (int s = 0; s < cfg.max_inner_iters; ++s) {
                ConvexProblem prob = radar_inner_problem(ch, cons, lam, comm_fixed, &anchor);
                Attempt at = solve_from_anchor(prob, to_vec(anchor), z_vec);
                if (!at.ok) break;
                ++rep.total_inner_iters;
                anchor.assign(at.sol.point.data(), at.sol.point.data() + n);
                const double f = at.sol.objective_value;
                const bool done = relative_stop(f_prev, f, cfg.tolerance);
                f_prev = f;
                if (done) break;
            }
        } else {
            ConvexProblem prob = radar_inner_problem(ch, cons, lam, comm_fixed, nullptr);
            Attempt at = solve_from_anchor(prob, to_vec(anchor), z_vec);
            if (at.ok) {
                ++rep.total_inner_iters;
                anchor.assign(at.sol.point.data(), at.sol.point.data() + n);
            }
        }
        const double prev_sinr = rep.objective_trace.back();
        const double next_sinr = radar_sinr(ch, with_comm(anchor));
        if (next_sinr >= prev_sinr) cur = anchor;
        rep.objective_trace.push_back(std::max(next_sinr, prev_sinr));
        if (relative_stop(prev_sinr, next_sinr, cfg.tolerance)) {
            converged = true;
            break;
        }
    }

    rep.allocation = with_comm(cur);
    rep.sinr = radar_sinr(ch, rep.allocation);
    rep.throughput = comm_throughput(ch, rep.allocation);
    rep.outer_iters = outer;
    rep.status = converged ? SolveOutcome::Converged : SolveOutcome::MaxIters;
    return rep;
}

}  // namespace specshare
