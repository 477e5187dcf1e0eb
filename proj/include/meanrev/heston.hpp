#pragma once

#include <cstdint>
#include <vector>

#include "meanrev/state_path.hpp"

namespace meanrev {

// dS = mu S dt + sqrt(V) S dW^S,  dV = alpha (theta - V) dt + xi sqrt(V) dW^V,
// corr(dW^S, dW^V) = rho.
struct HestonParams {
    double mu = 0.0;
    double theta = 0.0;
    double alpha = 1.0;
    double xi = 0.0;
    double rho = 0.0;

    void validate_simulation() const {
        if (!std::isfinite(mu)) throw DomainError("HestonParams: mu must be finite");
        if (!(theta >= 0.0)) throw DomainError("HestonParams: theta must be >= 0");
        if (!std::isfinite(alpha)) throw DomainError("HestonParams: alpha must be finite");
        if (!std::isfinite(xi)) throw DomainError("HestonParams: xi must be finite");
        if (!(std::abs(rho) <= 1.0)) throw DomainError("HestonParams: |rho| must be <= 1");
    }
};

struct HestonPath {
    StatePath price;
    StatePath variance;
};

// Log-Euler price step with full-truncation guard inside both square roots:
//   S_{t+dt} = S_t exp((mu - V_t/2) dt + sqrt(max(V_t,0)) dW^S)
//   V_{t+dt} = V_t + alpha (theta - V_t) dt + xi sqrt(max(V_t,0)) dW^V
// Drift terms keep the raw V_t; only sqrt arguments are guarded. dW^S is drawn
// first, then dW^V = rho dW^S + sqrt(1-rho^2) dW_perp. Path k uses the
// decorrelated substream (seed, k), so results are path-order independent.
std::vector<HestonPath> simulate_heston(const HestonParams& params, double s0, double v0,
                                        const SimGrid& grid, int n_paths, std::uint64_t seed);

}  // namespace meanrev
