#include "unistoch/lbfgs.hpp"

#include <cmath>
#include <deque>

namespace unistoch {

namespace {

struct Pair {
    Eigen::VectorXd s, y;
    double rho;
};

// Strong-Wolfe line search (Nocedal & Wright alg. 3.5/3.6, cubic
// interpolation replaced by bisection in the zoom phase). Returns the
// accepted step, or 0 on failure.
double wolfe_search(const ObjectiveFn& objective, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& dir, double f0, double g0, const LbfgsOptions& opt,
                    Eigen::VectorXd& x_out, Eigen::VectorXd& g_out, double& f_out) {
    const double c1 = opt.wolfe_c1, c2 = opt.wolfe_c2;
    double alpha_prev = 0.0, f_prev = f0;
    double alpha = 1.0;
    Eigen::VectorXd grad(x.size());

    auto eval = [&](double a, double& f, double& dg) {
        x_out = x + a * dir;
        f = objective(x_out, grad);
        dg = grad.dot(dir);
    };

    double f, dg;
    double lo = 0.0, hi = 0.0, f_lo = f0;
    bool zooming = false;
    for (int it = 0; it < 30; ++it) {
        if (!zooming) {
            eval(alpha, f, dg);
            if (f > f0 + c1 * alpha * g0 || (it > 0 && f >= f_prev)) {
                lo = alpha_prev;
                f_lo = f_prev;
                hi = alpha;
                zooming = true;
            } else if (std::abs(dg) <= -c2 * g0) {
                g_out = grad;
                f_out = f;
                return alpha;
            } else if (dg >= 0.0) {
                lo = alpha;
                f_lo = f;
                hi = alpha_prev;
                zooming = true;
            } else {
                alpha_prev = alpha;
                f_prev = f;
                alpha *= 2.0;
            }
            continue;
        }
        alpha = 0.5 * (lo + hi);
        eval(alpha, f, dg);
        if (f > f0 + c1 * alpha * g0 || f >= f_lo) {
            hi = alpha;
        } else {
            if (std::abs(dg) <= -c2 * g0) {
                g_out = grad;
                f_out = f;
                return alpha;
            }
            if (dg * (hi - lo) >= 0.0) hi = lo;
            lo = alpha;
            f_lo = f;
        }
        if (std::abs(hi - lo) < 1e-16) break;
    }
    // Accept the last trial if it at least decreased f; otherwise report failure.
    if (f < f0) {
        g_out = grad;
        f_out = f;
        return alpha;
    }
    return 0.0;
}

} // namespace

LbfgsResult lbfgs_minimize(const ObjectiveFn& objective, const Eigen::VectorXd& x0,
                           const LbfgsOptions& opt) {
    LbfgsResult res;
    res.x = x0;
    Eigen::VectorXd g(x0.size());
    res.f = objective(res.x, g);

    std::deque<Pair> history;
    Eigen::VectorXd x_new(x0.size()), g_new(x0.size());

    for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
        if (opt.f_target >= 0.0 && res.f < opt.f_target) {
            res.converged = true;
            return res;
        }
        if (g.cwiseAbs().maxCoeff() < opt.gradient_tol) {
            res.converged = true;
            return res;
        }

        // Two-loop recursion for the search direction.
        Eigen::VectorXd q = -g;
        std::vector<double> alpha(history.size());
        for (int i = static_cast<int>(history.size()) - 1; i >= 0; --i) {
            alpha[i] = history[i].rho * history[i].s.dot(q);
            q -= alpha[i] * history[i].y;
        }
        if (!history.empty()) {
            const auto& last = history.back();
            q *= last.s.dot(last.y) / last.y.squaredNorm();
        }
        for (std::size_t i = 0; i < history.size(); ++i) {
            const double beta = history[i].rho * history[i].y.dot(q);
            q += (alpha[i] - beta) * history[i].s;
        }
        double g0 = g.dot(q);
        if (g0 >= 0.0) { // safeguard: fall back to steepest descent
            q = -g;
            g0 = -g.squaredNorm();
        }

        double f_new;
        const double step = wolfe_search(objective, res.x, q, res.f, g0, opt, x_new, g_new, f_new);
        if (step == 0.0) {
            res.converged = true; // stalled at numerical resolution
            return res;
        }

        Pair pair;
        pair.s = x_new - res.x;
        pair.y = g_new - g;
        const double sy = pair.s.dot(pair.y);
        if (sy > 1e-18) {
            pair.rho = 1.0 / sy;
            history.push_back(std::move(pair));
            if (static_cast<int>(history.size()) > opt.memory) history.pop_front();
        }
        res.x = x_new;
        g = g_new;
        res.f = f_new;
    }
    return res;
}

} // namespace unistoch
