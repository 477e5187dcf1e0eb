#pragma once

#include <Eigen/Core>
#include <functional>

namespace meanrev {

struct NelderMeadOptions {
    int max_iterations = 900;
    // Converged when the simplex satisfies both spreads:
    //   max_i ||x_i - x_0||_inf <= x_tolerance
    //   max_i |f_i - f_0|       <= f_tolerance * (1 + |f_0|)
    double x_tolerance = 1e-9;
    double f_tolerance = 1e-12;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Derivative-free simplex minimizer with lower bounds enforced by projection:
// every candidate vertex is clamped into the feasible box before evaluation,
// so bound-pinned coordinates come back exactly at the bound. The initial
// simplex contains the (clamped) starting point as a vertex, which guarantees
// result.fx <= f(x0). Use -infinity for unbounded coordinates.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const Eigen::VectorXd& lower_bounds,
                             const NelderMeadOptions& options = {});

}  // namespace meanrev
