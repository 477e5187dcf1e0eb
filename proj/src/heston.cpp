#include "meanrev/heston.hpp"

#include <cmath>

#include "meanrev/rng.hpp"

namespace meanrev {

std::vector<HestonPath> simulate_heston(const HestonParams& params, double s0, double v0,
                                        const SimGrid& grid, int n_paths, std::uint64_t seed) {
    params.validate_simulation();
    grid.validate();
    if (!(s0 > 0.0)) throw DomainError("simulate_heston: s0 must be > 0");
    if (!(v0 >= 0.0)) throw DomainError("simulate_heston: v0 must be >= 0");
    if (n_paths < 1) throw DomainError("simulate_heston: n_paths must be >= 1");

    const double dt = grid.dt();
    const double sqrt_dt = std::sqrt(dt);
    const double rho = params.rho;
    const double rho_perp = std::sqrt(1.0 - rho * rho);

    std::vector<HestonPath> paths(static_cast<std::size_t>(n_paths));
    for (int p = 0; p < n_paths; ++p) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(p));
        StatePath price{grid.t0, dt, Eigen::ArrayXd(grid.n_points())};
        StatePath variance{grid.t0, dt, Eigen::ArrayXd(grid.n_points())};
        price.values[0] = s0;
        variance.values[0] = v0;
        for (int i = 0; i < grid.n_steps; ++i) {
            const double v = variance.values[i];
            const double v_plus = v > 0.0 ? v : 0.0;
            const double sqrt_v = std::sqrt(v_plus);
            // dW^S first, then dW^V = rho dW^S + sqrt(1-rho^2) dW_perp.
            const double dws = sqrt_dt * rng.normal();
            const double dwv = rho * dws + rho_perp * sqrt_dt * rng.normal();
            price.values[i + 1] =
                price.values[i] * std::exp((params.mu - 0.5 * v) * dt + sqrt_v * dws);
            variance.values[i + 1] = v + params.alpha * (params.theta - v) * dt +
                                     params.xi * sqrt_v * dwv;
        }
        paths[static_cast<std::size_t>(p)] = {std::move(price), std::move(variance)};
    }
    return paths;
}

}  // namespace meanrev
