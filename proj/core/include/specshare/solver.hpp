// solver.hpp - concave maximization under box/budget/concave constraints
#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace specshare {

/// Oracle convention: return the function value at x; if grad is non-null,
/// fill it with the gradient (resized by the caller).
using Oracle = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

/// sum of x over `indices` must stay <= budget.
struct BudgetGroup {
    std::vector<int> indices;
    double budget = 0.0;
};

/// maximize objective(x)
///   s.t. box_lower <= x <= box_upper          (entries may be +/-inf)
///        sum_{i in g.indices} x_i <= g.budget  for each budget group
///        g_j(x) >= 0                           for each concave constraint
/// `objective` must be concave, each g_j concave; `start` must be strictly
/// feasible (positive slack in every finite constraint).
struct ConvexProblem {
    int dimension = 0;
    Oracle objective;
    Eigen::VectorXd box_lower;
    Eigen::VectorXd box_upper;
    std::vector<BudgetGroup> budget_groups;
    std::vector<Oracle> concave_constraints;
    Eigen::VectorXd start;
};

enum class SolveStatus {
    Converged,
    MaxIters,
    InfeasibleStart,
};

struct Solution {
    Eigen::VectorXd point;
    double objective_value = 0.0;
    double kkt_residual = 0.0;  // ||grad f + sum mu_k grad s_k||_inf, mu from the barrier
    int iterations = 0;         // total line-search iterations over all stages
    SolveStatus status = SolveStatus::MaxIters;
};

/// Log-barrier interior scheme: barrier parameter grows by 10x per stage,
/// each stage maximized by BFGS with backtracking line search (feasibility
/// first, then Armijo). All iterates stay strictly feasible, so the returned
/// point satisfies every constraint. Converged means the final stage (barrier
/// duality gap below 1e-10 relative) was maximized to its stationarity target
/// or to the floating-point floor of the barrier value.
Solution solve_concave(const ConvexProblem& problem, double tol = 1e-8, int max_iters = 5000);

/// Water-filling with a common per-channel cap:
///   p_n = clamp(mu - 1/gains_n, 0, cap), with mu chosen so that
///   sum p_n = budget, or all positive-gain channels sit at the cap when the
///   budget cannot be spent. gains_n == 0 receives 0; gains_n < 0 throws
///   std::invalid_argument. cap may be +inf.
std::vector<double> capped_waterfill(const std::vector<double>& gains, double budget, double cap);

}  // namespace specshare
