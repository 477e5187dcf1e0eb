#include "meanrev/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace meanrev {

namespace {

Eigen::VectorXd clamp_to_bounds(Eigen::VectorXd x, const Eigen::VectorXd& lower) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x[i] < lower[i]) x[i] = lower[i];
    return x;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const Eigen::VectorXd& lower_bounds,
                             const NelderMeadOptions& options) {
    const Eigen::Index n = x0.size();
    const auto eval = [&](const Eigen::VectorXd& x) {
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    // n+1 vertices; vertex 0 is the clamped start, others step one coordinate
    // in the positive direction (always feasible for lower bounds).
    std::vector<Eigen::VectorXd> xs(static_cast<std::size_t>(n + 1));
    std::vector<double> fs(static_cast<std::size_t>(n + 1));
    xs[0] = clamp_to_bounds(x0, lower_bounds);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd v = xs[0];
        const double step = std::max(0.05 * std::abs(v[i]), 0.00025);
        v[i] += step;
        xs[static_cast<std::size_t>(i + 1)] = v;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = eval(xs[i]);

    std::vector<std::size_t> order(xs.size());
    NelderMeadResult result;
    for (result.iterations = 0; result.iterations < options.max_iterations; ++result.iterations) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[order.size() - 2];

        double x_spread = 0.0;
        double f_spread = 0.0;
        for (std::size_t i : order) {
            x_spread = std::max(x_spread, (xs[i] - xs[best]).cwiseAbs().maxCoeff());
            f_spread = std::max(f_spread, std::abs(fs[i] - fs[best]));
        }
        if (x_spread <= options.x_tolerance &&
            f_spread <= options.f_tolerance * (1.0 + std::abs(fs[best]))) {
            result.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i : order)
            if (i != worst) centroid += xs[i];
        centroid /= static_cast<double>(n);

        const auto propose = [&](double coeff) {
            return clamp_to_bounds(centroid + coeff * (centroid - xs[worst]), lower_bounds);
        };

        const Eigen::VectorXd reflected = propose(1.0);
        const double f_reflected = eval(reflected);
        if (f_reflected < fs[best]) {
            const Eigen::VectorXd expanded = propose(2.0);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                xs[worst] = expanded;
                fs[worst] = f_expanded;
            } else {
                xs[worst] = reflected;
                fs[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < fs[second_worst]) {
            xs[worst] = reflected;
            fs[worst] = f_reflected;
            continue;
        }
        // Contraction: outside if the reflection improved on the worst vertex,
        // inside otherwise.
        const bool outside = f_reflected < fs[worst];
        const Eigen::VectorXd contracted = propose(outside ? 0.5 : -0.5);
        const double f_contracted = eval(contracted);
        if (f_contracted < std::min(f_reflected, fs[worst])) {
            xs[worst] = contracted;
            fs[worst] = f_contracted;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t i : order) {
            if (i == best) continue;
            xs[i] = clamp_to_bounds(xs[best] + 0.5 * (xs[i] - xs[best]), lower_bounds);
            fs[i] = eval(xs[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (fs[i] < fs[best]) best = i;
    result.x = xs[best];
    result.fx = fs[best];
    return result;
}

}  // namespace meanrev
