#include "specshare/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specshare {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BarrierEval {
    bool feasible = false;
    double f = 0.0;        // objective value
    double barrier = 0.0;  // sum of log slacks
    double value(double t) const { return t * f + barrier; }
};

// Value-only probe used inside the line search. Returns feasible=false on the
// first nonpositive slack; constraint oracles are only consulted once the box
// holds, so they never see out-of-domain points.
BarrierEval probe(const ConvexProblem& p, const Eigen::VectorXd& x) {
    BarrierEval ev;
    double logs = 0.0;
    for (int i = 0; i < p.dimension; ++i) {
        if (std::isfinite(p.box_lower[i])) {
            const double s = x[i] - p.box_lower[i];
            if (!(s > 0.0)) return ev;
            logs += std::log(s);
        }
        if (std::isfinite(p.box_upper[i])) {
            const double s = p.box_upper[i] - x[i];
            if (!(s > 0.0)) return ev;
            logs += std::log(s);
        }
    }
    for (const auto& g : p.budget_groups) {
        if (!std::isfinite(g.budget)) continue;
        double sum = 0.0;
        for (int i : g.indices) sum += x[i];
        const double s = g.budget - sum;
        if (!(s > 0.0)) return ev;
        logs += std::log(s);
    }
    for (const auto& con : p.concave_constraints) {
        const double s = con(x, nullptr);
        if (!(s > 0.0) || !std::isfinite(s)) return ev;
        logs += std::log(s);
    }
    ev.f = p.objective(x, nullptr);
    if (!std::isfinite(ev.f)) return ev;
    ev.barrier = logs;
    ev.feasible = true;
    return ev;
}

// Gradient of B_t = t*f + sum log s at a strictly feasible x; also reports f.
void barrier_gradient(const ConvexProblem& p, const Eigen::VectorXd& x, double t,
                      Eigen::VectorXd& grad, double& f_out) {
    Eigen::VectorXd gbuf(p.dimension);
    f_out = p.objective(x, &gbuf);
    grad = t * gbuf;
    for (int i = 0; i < p.dimension; ++i) {
        if (std::isfinite(p.box_lower[i])) {
            grad[i] += 1.0 / (x[i] - p.box_lower[i]);
        }
        if (std::isfinite(p.box_upper[i])) {
            grad[i] -= 1.0 / (p.box_upper[i] - x[i]);
        }
    }
    for (const auto& g : p.budget_groups) {
        if (!std::isfinite(g.budget)) continue;
        double sum = 0.0;
        for (int i : g.indices) sum += x[i];
        const double s = g.budget - sum;
        for (int i : g.indices) grad[i] -= 1.0 / s;
    }
    for (const auto& con : p.concave_constraints) {
        const double s = con(x, &gbuf);
        grad += gbuf / s;
    }
}

int count_barrier_terms(const ConvexProblem& p) {
    int m = 0;
    for (int i = 0; i < p.dimension; ++i) {
        if (std::isfinite(p.box_lower[i])) ++m;
        if (std::isfinite(p.box_upper[i])) ++m;
    }
    for (const auto& g : p.budget_groups) {
        if (std::isfinite(g.budget)) ++m;
    }
    m += static_cast<int>(p.concave_constraints.size());
    return m;
}

}  // namespace

Solution solve_concave(const ConvexProblem& problem, double tol, int max_iters) {
    const int d = problem.dimension;
    if (d <= 0 || problem.box_lower.size() != d || problem.box_upper.size() != d ||
        problem.start.size() != d || !problem.objective) {
        throw std::invalid_argument("solve_concave: malformed problem");
    }
    for (const auto& g : problem.budget_groups) {
        for (int i : g.indices) {
            if (i < 0 || i >= d) throw std::invalid_argument("solve_concave: budget index out of range");
        }
    }

    Solution sol;
    sol.point = problem.start;
    sol.kkt_residual = kInf;

    // A barrier method needs positive slack everywhere to begin.
    {
        const BarrierEval ev = probe(problem, problem.start);
        if (!ev.feasible) {
            sol.objective_value = std::numeric_limits<double>::quiet_NaN();
            sol.status = SolveStatus::InfeasibleStart;
            return sol;
        }
        sol.objective_value = ev.f;
    }

    const int m = count_barrier_terms(problem);
    const int stage_cap = 400;
    const double c1 = 1e-4;  // Armijo slope fraction

    Eigen::VectorXd x = problem.start;
    Eigen::VectorXd grad(d), grad_new(d);
    double t = 1.0;
    double f_val = sol.objective_value;
    bool tight = false;
    double grad_inf = kInf;

    while (true) {
        // Stage target: loose while the barrier parameter ramps, tight at the end.
        const double scale = std::max(1.0, std::abs(f_val));
        const bool final_stage = (m / t) <= 1e-10 * scale || t >= 1e15;
        const double stage_tol = final_stage ? 0.5 * tol * t : std::max(1e-5 * t, 1e-7);

        barrier_gradient(problem, x, t, grad, f_val);
        double b_val = probe(problem, x).value(t);
        Eigen::MatrixXd H = Eigen::MatrixXd::Identity(d, d) / std::max(1.0, grad.norm());
        bool first_update = true;

        int stage_iters = 0;
        int stalled = 0;
        bool value_floor = false;
        const auto at_ulp_floor = [](double next, double ref) {
            return std::abs(next - ref) <=
                   32.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(ref));
        };
        grad_inf = grad.lpNorm<Eigen::Infinity>();
        while (grad_inf > stage_tol && stage_iters < stage_cap && sol.iterations < max_iters) {
            Eigen::VectorXd dir = H * grad;  // ascent direction for B_t
            double slope = dir.dot(grad);
            if (!(slope > 0.0) || !dir.allFinite()) {
                H = Eigen::MatrixXd::Identity(d, d) / std::max(1.0, grad.norm());
                first_update = true;
                dir = H * grad;
                slope = dir.dot(grad);
            }

            double alpha = 1.0;
            BarrierEval cand;
            Eigen::VectorXd x_new;
            bool accepted = false;
            for (int ls = 0; ls < 80; ++ls) {
                x_new = x + alpha * dir;
                cand = probe(problem, x_new);
                if (cand.feasible && cand.value(t) >= b_val + c1 * alpha * slope) {
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            ++sol.iterations;
            ++stage_iters;
            if (!accepted) {
                // The step collapsed. If the vanishing step stayed feasible and
                // left the barrier value unchanged at double precision, the
                // stage is maximized to the floating-point floor: |B_t| ~ t|f|
                // swallows improvements smaller than its ulp long before the
                // gradient test can fire at large t.
                value_floor = cand.feasible && at_ulp_floor(cand.value(t), b_val);
                break;
            }

            barrier_gradient(problem, x_new, t, grad_new, f_val);
            const Eigen::VectorXd s = x_new - x;
            const Eigen::VectorXd y = grad - grad_new;  // gradient change of -B_t (minimized)
            const double sy = s.dot(y);
            if (sy > 1e-12 * s.norm() * y.norm()) {
                if (first_update) {
                    H.setZero();
                    H.diagonal().setConstant(sy / y.dot(y));
                    first_update = false;
                }
                const Eigen::VectorXd Hy = H * y;
                const double yHy = y.dot(Hy);
                const double rho = 1.0 / sy;
                H.noalias() += (rho * rho * yHy + rho) * (s * s.transpose());
                H.noalias() -= rho * (Hy * s.transpose() + s * Hy.transpose());
            }
            // Armijo degenerates to >= once c1*alpha*slope rounds away, so
            // accepted steps can stop moving; treat repeated sub-ulp progress
            // as the same floor the collapse branch detects.
            if (at_ulp_floor(cand.value(t), b_val)) {
                if (++stalled >= 3) {
                    value_floor = true;
                    x = x_new;
                    grad = grad_new;
                    break;
                }
            } else {
                stalled = 0;
            }
            x = x_new;
            grad = grad_new;
            b_val = cand.value(t);
            grad_inf = grad.lpNorm<Eigen::Infinity>();
        }

        sol.objective_value = f_val;
        tight = grad_inf <= stage_tol || value_floor;
        if (final_stage || sol.iterations >= max_iters) {
            sol.status = (final_stage && tight) ? SolveStatus::Converged : SolveStatus::MaxIters;
            break;
        }
        t *= 10.0;
    }

    sol.point = x;
    sol.kkt_residual = grad_inf / t;
    return sol;
}

std::vector<double> capped_waterfill(const std::vector<double>& gains, double budget, double cap) {
    for (double g : gains) {
        if (g < 0.0) throw std::invalid_argument("capped_waterfill: negative gain");
    }
    if (!(cap >= 0.0)) throw std::invalid_argument("capped_waterfill: negative cap");
    if (!(budget >= 0.0)) throw std::invalid_argument("capped_waterfill: negative budget");

    const std::size_t n = gains.size();
    std::vector<double> p(n, 0.0);
    if (n == 0 || budget == 0.0 || cap == 0.0) return p;

    auto fill_at = [&](double mu) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (gains[i] <= 0.0) continue;
            const double v = std::clamp(mu - 1.0 / gains[i], 0.0, cap);
            p[i] = v;
            total += v;
        }
        return total;
    };

    // If even the saturated allocation fits, the budget is simply unspendable.
    if (std::isfinite(cap)) {
        double saturated = 0.0;
        int active = 0;
        for (double g : gains) {
            if (g > 0.0) {
                saturated += cap;
                ++active;
            }
        }
        if (active == 0) return p;
        if (saturated <= budget) {
            for (std::size_t i = 0; i < n; ++i) p[i] = gains[i] > 0.0 ? cap : 0.0;
            return p;
        }
    }

    double lo = kInf, hi = -kInf;
    for (double g : gains) {
        if (g > 0.0) {
            lo = std::min(lo, 1.0 / g);
            hi = std::max(hi, 1.0 / g);
        }
    }
    if (!std::isfinite(lo)) return p;  // no usable channel
    hi += std::isfinite(cap) ? cap : budget;
    // total(mu) is continuous and nondecreasing; 120 halvings pin mu to the ulp.
    for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (fill_at(mid) >= budget) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    fill_at(hi);
    return p;
}

}  // namespace specshare
