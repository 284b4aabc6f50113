#ifndef UNISTOCH_LBFGS_HPP
#define UNISTOCH_LBFGS_HPP

#include <Eigen/Dense>
#include <functional>

namespace unistoch {

/// Objective with analytic gradient: writes the gradient into `grad` and
/// returns the function value.
using ObjectiveFn = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

struct LbfgsOptions {
    int max_iterations = 5000;
    int memory = 8;
    double gradient_tol = 1e-12;   // stop when the max-norm of the gradient drops below
    double f_target = -1.0;        // stop early once f < f_target (ignored if negative)
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
};

struct LbfgsResult {
    Eigen::VectorXd x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false; // gradient_tol or f_target met (line-search stalls count as done too)
};

/// Limited-memory BFGS with a strong-Wolfe line search. Deterministic: no
/// internal randomness, result depends only on the starting point.
LbfgsResult lbfgs_minimize(const ObjectiveFn& objective, const Eigen::VectorXd& x0,
                           const LbfgsOptions& options = {});

} // namespace unistoch

#endif
