#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "meanrev/state_path.hpp"

namespace meanrev {

// Moments of the daily ratio Q (m3 is intentionally absent).
struct MomentSet {
    double m1 = 0.0;
    double m2 = 0.0;
    double m4 = 0.0;
    double m5 = 0.0;
};

// m_j = (1/n) sum q_i^j for j in {1, 2, 4, 5}; empty input is an error.
MomentSet sample_moments(const Eigen::ArrayXd& q);

// mu = m1 - 1, theta = m2 - m1^2. Negative theta is permitted here; validity
// is flagged on the MomSolution that consumes it.
std::pair<double, double> mom_mu_theta(const MomentSet& m);

// Closed-form E[Q^4] and E[Q^5] as polynomial brackets over the prefactor
// 1/(alpha (alpha - 2)); alpha in {0, 2} is a pole (SingularityError).
double moment4_closed_form(double mu, double theta, double alpha, double xi);
double moment5_closed_form(double mu, double theta, double alpha, double xi);

struct MomSolution {
    double mu = 0.0;
    double theta = 0.0;
    double alpha = 0.0;
    double xi = 0.0;
    double residual4 = 0.0;  // moment4_closed_form(sol) - m4
    double residual5 = 0.0;
    int iterations = 0;
    bool converged = false;
    bool singular_jacobian = false;
    bool valid_alpha = false;  // alpha in (0, 2): E[V^2] denominator 2a - a^2 > 0
    bool valid_theta = false;  // theta >= 0
};

// (mu, theta) from mom_mu_theta, then a damped 2-D Newton on (alpha, xi) for
// {moment4 = m4, moment5 = m5}. The initial guess defaults to (mu, theta),
// which is what the reference pipeline passes; if it fails to converge, fixed
// deterministic restarts (1.0, 0.1), (0.5, 0.05), (1.5, 0.3), (0.25, 0.02)
// are tried in order. Always returns the best iterate found: non-convergence
// is reported through `converged` and the residual fields rather than by
// rejecting the solution, because realistic sample moments frequently admit
// no exact root and downstream stages still run on the flagged values.
MomSolution solve_mom(const MomentSet& m,
                      std::optional<std::pair<double, double>> initial = std::nullopt);

// Variance chain with V_0 = 0 and |V| under the square root (distinct from
// the simulator's max(V,0) guard; both code paths are intentional):
//   V_t = V_{t-1} + alpha (theta - V_{t-1}) + xi sqrt(|V_{t-1}|) Zv_{t-1}
//   S_t = (1 + mu + sqrt(|V_{t-1}|) (rho Z1_{t-1} + sqrt(1-rho^2) Z2_{t-1})) S_{t-1}
// Draw order: one block of n variance normals first, then a block of 2n price
// normals split into Z1 (first half) and Z2 (second half). Returns n+1 points
// with S_0 = s0.
StatePath reconstruct_prices(const MomSolution& sol, double rho, double s0, Eigen::Index n,
                             std::uint64_t seed);

struct RhoSearchOptions {
    // false: one noise realization drawn once and shared by every rho.
    // true: fresh realization per rho from substream (seed, rho index),
    // for sensitivity analysis.
    bool redraw_per_rho = false;
    bool record_curve = false;
};

struct ReconstructionResult {
    double rho_star = 0.0;
    double sae = 0.0;
    StatePath reconstructed;
    Eigen::ArrayXd curve_rho;  // populated when record_curve
    Eigen::ArrayXd curve_sae;
};

// Evaluates rho = -1 + 0.001 i for i in [0, 2000) (so -1 inclusive, 1
// exclusive) and returns the first rho attaining the minimal
// SAE = sum_{t=1..n} |true_prices[t-1] - S_t|, i.e. strict-improvement
// tie-break toward the smallest rho. n = true_prices.size(), S_0 = s0.
ReconstructionResult rho_grid_search(const MomSolution& sol, const Eigen::ArrayXd& true_prices,
                                     double s0, std::uint64_t seed,
                                     const RhoSearchOptions& options = {});

// Single-row CSV with a header; booleans serialized as 0/1.
void save_csv(const MomSolution& sol, const std::string& file);

// "rho_star,sae" row; the path itself is saved separately as a StatePath.
void save_csv(const ReconstructionResult& result, const std::string& file);

// "rho,sae" rows for the full search curve.
void save_curve_csv(const ReconstructionResult& result, const std::string& file);

}  // namespace meanrev
