#pragma once

#include "meanrev/ou.hpp"

namespace meanrev {

struct EstimationConfig {
    OUParams initial_guess{0.0, 1.0, 1.0};
    // Lower bounds fixed by the estimation contract: mu free, alpha and sigma >= 0.05.
    static constexpr double alpha_lower_bound = 0.05;
    static constexpr double sigma_lower_bound = 0.05;
    int max_iterations = 900;
    double x_tolerance = 1e-9;
    double f_tolerance = 1e-12;
};

// Thrown when the minimizer hits max_iterations; carries the best iterate so
// callers (the recursive filter, the CLI) can decide how to proceed.
struct EstimationFailure : Error {
    EstimationFailure(const std::string& msg, const OUParams& best, double loglik, int iterations)
        : Error(msg), best_params(best), best_loglik(loglik), iterations(iterations) {}
    OUParams best_params;
    double best_loglik;
    int iterations;
};

// Exact-transition log-likelihood on a uniform grid (n = increment count):
//   L = -(n/2) ln(sigma^2/(2 alpha)) - (1/2) sum ln(1 - e^{-2 alpha dt})
//       - (alpha/sigma^2) sum (Z_i - mu - (Z_{i-1} - mu) e^{-alpha dt})^2 / (1 - e^{-2 alpha dt})
// ln(1 - e^{-2 alpha dt}) is evaluated as log1p(-exp(.)), which stays accurate
// through the alpha dt > 35 regime where 1 - e^{-2 alpha dt} rounds to 1.
double loglikelihood(const OUParams& params, const StatePath& data);

// Maximizes the log-likelihood (minimizes its negative) over (mu, alpha, sigma)
// subject to alpha >= 0.05, sigma >= 0.05, by bounded Nelder-Mead.
// Guarantee: loglikelihood(result) >= loglikelihood(initial_guess).
OUParams estimate_parameters(const EstimationConfig& config, const StatePath& data);

}  // namespace meanrev
