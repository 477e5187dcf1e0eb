#include "meanrev/estimate.hpp"

#include <cmath>

#include "meanrev/nelder_mead.hpp"

namespace meanrev {

double loglikelihood(const OUParams& params, const StatePath& data) {
    if (data.size() < 2) throw InsufficientDataError("loglikelihood: need at least 2 points");
    if (!(params.alpha > 0.0)) throw DomainError("loglikelihood: alpha must be > 0");
    if (!(params.sigma > 0.0)) throw DomainError("loglikelihood: sigma must be > 0");

    const double dt = data.dt;
    const double a = params.alpha;
    const double s2 = params.sigma * params.sigma;
    const double decay = std::exp(-a * dt);
    const double one_minus_e2 = -std::expm1(-2.0 * a * dt);       // 1 - e^{-2 a dt}
    const double log_one_minus_e2 = std::log1p(-std::exp(-2.0 * a * dt));
    const Eigen::Index n = data.size() - 1;

    double ssq = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = data.values[i + 1] - params.mu - (data.values[i] - params.mu) * decay;
        ssq += r * r;
    }
    return -0.5 * static_cast<double>(n) * std::log(s2 / (2.0 * a)) -
           0.5 * static_cast<double>(n) * log_one_minus_e2 - (a / s2) * ssq / one_minus_e2;
}

OUParams estimate_parameters(const EstimationConfig& config, const StatePath& data) {
    if (data.size() < 3) throw InsufficientDataError("estimate_parameters: need at least 3 points");

    const auto objective = [&](const Eigen::VectorXd& x) {
        return -loglikelihood(OUParams{x[0], x[1], x[2]}, data);
    };

    Eigen::VectorXd x0(3);
    x0 << config.initial_guess.mu, config.initial_guess.alpha, config.initial_guess.sigma;
    Eigen::VectorXd lower(3);
    lower << -std::numeric_limits<double>::infinity(), EstimationConfig::alpha_lower_bound,
        EstimationConfig::sigma_lower_bound;

    NelderMeadOptions options;
    options.max_iterations = config.max_iterations;
    options.x_tolerance = config.x_tolerance;
    options.f_tolerance = config.f_tolerance;
    const NelderMeadResult res = nelder_mead(objective, x0, lower, options);

    const OUParams best{res.x[0], res.x[1], res.x[2]};
    if (!res.converged)
        throw EstimationFailure("estimate_parameters: minimizer hit max_iterations", best,
                                -res.fx, res.iterations);
    return best;
}

}  // namespace meanrev
