#include "meanrev/ou.hpp"

#include <cmath>

#include "meanrev/rng.hpp"

namespace meanrev {

double ou_mean(const OUParams& params, double x0, double t) {
    params.validate();
    if (!(t >= 0.0)) throw DomainError("ou_mean: t must be >= 0");
    return params.mu + (x0 - params.mu) * std::exp(-params.alpha * t);
}

double ou_covariance(const OUParams& params, double s, double t) {
    params.validate();
    if (!(s >= 0.0) || !(t >= 0.0)) throw DomainError("ou_covariance: s, t must be >= 0");
    const double a = params.alpha;
    return params.sigma * params.sigma / (2.0 * a) *
           (std::exp(-a * std::abs(t - s)) - std::exp(-a * (s + t)));
}

double ou_variance(const OUParams& params, double t) { return ou_covariance(params, t, t); }

StatePath simulate_ou_em(const OUParams& params, double x0, const SimGrid& grid,
                         std::uint64_t seed) {
    params.validate();
    grid.validate();
    const double dt = grid.dt();
    const double sqrt_dt = std::sqrt(dt);
    Rng rng(seed);
    StatePath path{grid.t0, dt, Eigen::ArrayXd(grid.n_points())};
    path.values[0] = x0;
    for (int i = 0; i < grid.n_steps; ++i) {
        const double x = path.values[i];
        path.values[i + 1] = x + params.alpha * (params.mu - x) * dt +
                             params.sigma * sqrt_dt * rng.normal();
    }
    return path;
}

StatePath simulate_ou_exact(const OUParams& params, double x0, const SimGrid& grid,
                            std::uint64_t seed) {
    params.validate();
    grid.validate();
    const double dt = grid.dt();
    const double decay = std::exp(-params.alpha * dt);
    // 1 - e^{-2 alpha dt} via expm1 keeps precision for small alpha dt.
    const double sd = std::sqrt(params.sigma * params.sigma / (2.0 * params.alpha) *
                                -std::expm1(-2.0 * params.alpha * dt));
    Rng rng(seed);
    StatePath path{grid.t0, dt, Eigen::ArrayXd(grid.n_points())};
    path.values[0] = x0;
    for (int i = 0; i < grid.n_steps; ++i) {
        path.values[i + 1] = params.mu + (path.values[i] - params.mu) * decay + sd * rng.normal();
    }
    return path;
}

StatePath add_observation_noise(const StatePath& path, double sigma_o, std::uint64_t seed) {
    if (!(sigma_o >= 0.0)) throw DomainError("add_observation_noise: sigma_o must be >= 0");
    Rng rng(seed);
    StatePath noisy = path;
    // eps[0] = 0: the first observation is exact.
    for (Eigen::Index i = 1; i < noisy.size(); ++i) noisy.values[i] += sigma_o * rng.normal();
    return noisy;
}

}  // namespace meanrev
