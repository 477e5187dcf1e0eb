#pragma once

#include <cstdint>

#include "meanrev/state_path.hpp"

namespace meanrev {

// dX = alpha (mu - X) dt + sigma dW
struct OUParams {
    double mu = 0.0;
    double alpha = 1.0;
    double sigma = 1.0;

    void validate() const {
        if (!std::isfinite(mu)) throw DomainError("OUParams: mu must be finite");
        if (!(alpha > 0.0)) throw DomainError("OUParams: alpha must be > 0");
        if (!(sigma > 0.0)) throw DomainError("OUParams: sigma must be > 0");
    }
};

// E[X_t | X_0 = x0] = mu + (x0 - mu) e^{-alpha t}
double ou_mean(const OUParams& params, double x0, double t);

// Cov(X_s, X_t | X_0 deterministic) = sigma^2/(2 alpha) (e^{-alpha|t-s|} - e^{-alpha(s+t)})
double ou_covariance(const OUParams& params, double s, double t);

// Var(X_t) = ou_covariance(t, t)
double ou_variance(const OUParams& params, double t);

// Euler-Maruyama: X_{i+1} = X_i + alpha (mu - X_i) dt + sigma dW_i, dW ~ N(0, dt).
StatePath simulate_ou_em(const OUParams& params, double x0, const SimGrid& grid, std::uint64_t seed);

// Exact transition: X_{i+1} = mu + (X_i - mu) e^{-alpha dt} + sd eps,
// sd = sqrt(sigma^2/(2 alpha) (1 - e^{-2 alpha dt})); valid for any dt.
StatePath simulate_ou_exact(const OUParams& params, double x0, const SimGrid& grid, std::uint64_t seed);

// Element-wise path + sigma_o eps, eps iid N(0,1); the first element is left
// exactly unnoised (eps[0] = 0).
StatePath add_observation_noise(const StatePath& path, double sigma_o, std::uint64_t seed);

}  // namespace meanrev
