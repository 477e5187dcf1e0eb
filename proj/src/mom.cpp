#include "meanrev/mom.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "csv_util.hpp"
#include "meanrev/rng.hpp"

namespace meanrev {

MomentSet sample_moments(const Eigen::ArrayXd& q) {
    if (q.size() == 0) throw InsufficientDataError("sample_moments: empty ratio series");
    const Eigen::ArrayXd q2 = q * q;
    MomentSet m;
    m.m1 = q.mean();
    m.m2 = q2.mean();
    m.m4 = (q2 * q2).mean();
    m.m5 = (q2 * q2 * q).mean();
    return m;
}

std::pair<double, double> mom_mu_theta(const MomentSet& m) {
    return {m.m1 - 1.0, m.m2 - m.m1 * m.m1};
}

namespace {

void check_pole(double alpha, const char* name) {
    if (alpha == 0.0 || alpha == 2.0)
        throw SingularityError(std::string(name) + ": alpha at a pole of 1/(alpha (alpha - 2))");
}

}  // namespace

double moment4_closed_form(double mu, double theta, double alpha, double xi) {
    check_pole(alpha, "moment4_closed_form");
    const double k = alpha, t = theta, x = xi, m = mu;
    // Printed bracket over 1/(k (k - 2)) with the 6 k^2 t term restored; the
    // quotient equals (1+mu)^4 + 6 (1+mu)^2 theta + 3 E[V^2].
    const double num = k * k * m * m * m * m + 4 * k * k * m * m * m - 2 * k * m * m * m * m -
                       8 * k * m * m * m + 6 * k * k * m * m * t - 12 * k * m * m * t +
                       6 * k * k * m * m - 12 * k * m * m + 12 * k * k * m * t - 24 * k * m * t +
                       4 * k * k * m - 8 * k * m + 3 * k * k * t * t - 6 * k * t * t -
                       3 * x * x * t + k * k - 12 * k * t - 2 * k + 6 * k * k * t;
    return num / (k * (k - 2.0));
}

double moment5_closed_form(double mu, double theta, double alpha, double xi) {
    check_pole(alpha, "moment5_closed_form");
    const double k = alpha, t = theta, x = xi, m = mu;
    const double common =
        k * k * m * m * m * m * m + 5 * k * k * m * m * m * m + 10 * k * k * m * m * m * t -
        2 * k * m * m * m * m * m + 10 * k * k * m * m * m + 30 * k * k * m * m * t +
        15 * k * k * m * t * t - 10 * k * m * m * m * m - 20 * k * m * m * m * t +
        10 * k * m * m * t * t + 30 * k * m * t + 15 * k * k * t * t - 20 * k * m * m * m -
        60 * k * m * m * t - 30 * k * m * t * t + 5 * k * k * m + 10 * k * k * t -
        20 * k * m * m - 60 * k * m * t - 30 * k * t * t + k * k - 10 * k * m - 20 * k * t -
        2 * k;
    // Both printed noise terms read as 15 xi^2 theta.
    const double num = common - 15 * x * x * t - 15 * x * x * t;
    return num / (k * (k - 2.0));
}

namespace {

struct NewtonOutcome {
    std::array<double, 2> z;
    std::array<double, 2> f;
    double residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
    bool singular = false;
};

std::array<double, 2> residuals_at(double mu, double theta, double a, double x, double m4_target,
                                   double m5_target) {
    try {
        return {moment4_closed_form(mu, theta, a, x) - m4_target,
                moment5_closed_form(mu, theta, a, x) - m5_target};
    } catch (const SingularityError&) {
        return {std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
    }
}

double max_abs(const std::array<double, 2>& f) { return std::max(std::abs(f[0]), std::abs(f[1])); }

// Damped Newton on (alpha, xi) with a forward-difference Jacobian and simple
// backtracking; candidates within 1e-12 of the poles alpha in {0, 2} are
// rejected during the line search.
NewtonOutcome newton_2d(double mu, double theta, double a0, double x0, double m4_target,
                        double m5_target, int max_iter = 200) {
    NewtonOutcome out;
    out.z = {a0, x0};
    out.f = residuals_at(mu, theta, a0, x0, m4_target, m5_target);
    out.residual = max_abs(out.f);
    for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
        if (out.residual < 1e-13) {
            out.converged = true;
            return out;
        }
        double jac[2][2];
        for (int j = 0; j < 2; ++j) {
            const double h = 1e-7 * std::max(1.0, std::abs(out.z[j]));
            std::array<double, 2> zp = out.z;
            zp[j] += h;
            const auto fp = residuals_at(mu, theta, zp[0], zp[1], m4_target, m5_target);
            jac[0][j] = (fp[0] - out.f[0]) / h;
            jac[1][j] = (fp[1] - out.f[1]) / h;
        }
        const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if (!std::isfinite(det) || det == 0.0) {
            out.singular = true;
            return out;
        }
        const double step0 = (out.f[0] * jac[1][1] - out.f[1] * jac[0][1]) / det;
        const double step1 = (jac[0][0] * out.f[1] - jac[1][0] * out.f[0]) / det;

        bool advanced = false;
        double t = 1.0;
        for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
            const std::array<double, 2> zn = {out.z[0] - t * step0, out.z[1] - t * step1};
            if (!(std::abs(zn[0]) > 1e-12) || !(std::abs(zn[0] - 2.0) > 1e-12)) continue;
            const auto fn = residuals_at(mu, theta, zn[0], zn[1], m4_target, m5_target);
            if (std::isfinite(fn[0]) && std::isfinite(fn[1]) && max_abs(fn) < out.residual) {
                out.z = zn;
                out.f = fn;
                out.residual = max_abs(fn);
                advanced = true;
                break;
            }
        }
        if (!advanced) return out;  // stalled
    }
    out.converged = out.residual < 1e-13;
    return out;
}

}  // namespace

MomSolution solve_mom(const MomentSet& m, std::optional<std::pair<double, double>> initial) {
    const auto [mu, theta] = mom_mu_theta(m);

    // Default guess (mu, theta) is what the reference pipeline passes; the
    // fixed restarts rescue the frequent non-convergence of that default.
    std::vector<std::pair<double, double>> guesses;
    guesses.push_back(initial.value_or(std::pair<double, double>{mu, theta}));
    guesses.insert(guesses.end(), {{1.0, 0.1}, {0.5, 0.05}, {1.5, 0.3}, {0.25, 0.02}});

    NewtonOutcome best;
    bool have_best = false;
    for (const auto& [a0, x0] : guesses) {
        const NewtonOutcome outcome = newton_2d(mu, theta, a0, x0, m.m4, m.m5);
        if (!have_best || outcome.residual < best.residual) {
            best = outcome;
            have_best = true;
        }
        if (outcome.converged) break;
    }

    MomSolution sol;
    sol.mu = mu;
    sol.theta = theta;
    sol.alpha = best.z[0];
    sol.xi = best.z[1];
    sol.residual4 = best.f[0];
    sol.residual5 = best.f[1];
    sol.iterations = best.iterations;
    sol.converged = best.converged;
    sol.singular_jacobian = best.singular;
    sol.valid_alpha = sol.alpha > 0.0 && sol.alpha < 2.0;
    sol.valid_theta = theta >= 0.0;
    return sol;
}

namespace {

struct ReconstructionNoise {
    Eigen::ArrayXd sqrt_v;  // sqrt(|V_t|), t = 0..n-1
    Eigen::ArrayXd z1;
    Eigen::ArrayXd z2;
};

// Draw order mirrors the reference: one block of n variance normals, then a
// block of 2n price normals split into halves.
ReconstructionNoise draw_noise(const MomSolution& sol, Eigen::Index n, Rng& rng) {
    ReconstructionNoise noise;
    Eigen::ArrayXd v(n + 1);
    v[0] = 0.0;
    noise.sqrt_v.resize(n);
    for (Eigen::Index t = 1; t <= n; ++t) {
        const double prev = v[t - 1];
        const double sq = std::sqrt(std::abs(prev));
        noise.sqrt_v[t - 1] = sq;
        v[t] = prev + sol.alpha * (sol.theta - prev) + sol.xi * sq * rng.normal();
    }
    noise.z1.resize(n);
    noise.z2.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) noise.z1[i] = rng.normal();
    for (Eigen::Index i = 0; i < n; ++i) noise.z2[i] = rng.normal();
    return noise;
}

Eigen::ArrayXd build_prices(const MomSolution& sol, double rho, double s0,
                            const ReconstructionNoise& noise) {
    const Eigen::Index n = noise.z1.size();
    const double rho_perp = std::sqrt(1.0 - rho * rho);
    Eigen::ArrayXd s(n + 1);
    s[0] = s0;
    for (Eigen::Index t = 1; t <= n; ++t) {
        const double shock = noise.sqrt_v[t - 1] * (rho * noise.z1[t - 1] + rho_perp * noise.z2[t - 1]);
        s[t] = (1.0 + sol.mu + shock) * s[t - 1];
    }
    return s;
}

double sae_against(const Eigen::ArrayXd& prices, const Eigen::ArrayXd& true_prices) {
    // Off-by-one alignment mirrored from the reference: S_t vs true[t-1].
    double sae = 0.0;
    for (Eigen::Index t = 1; t < prices.size(); ++t) sae += std::abs(true_prices[t - 1] - prices[t]);
    return sae;
}

}  // namespace

StatePath reconstruct_prices(const MomSolution& sol, double rho, double s0, Eigen::Index n,
                             std::uint64_t seed) {
    if (!(std::abs(rho) <= 1.0)) throw DomainError("reconstruct_prices: |rho| must be <= 1");
    if (!(s0 > 0.0)) throw DomainError("reconstruct_prices: s0 must be > 0");
    if (n < 1) throw DomainError("reconstruct_prices: n must be >= 1");
    Rng rng(seed);
    const ReconstructionNoise noise = draw_noise(sol, n, rng);
    return StatePath{0.0, 1.0, build_prices(sol, rho, s0, noise)};
}

ReconstructionResult rho_grid_search(const MomSolution& sol, const Eigen::ArrayXd& true_prices,
                                     double s0, std::uint64_t seed,
                                     const RhoSearchOptions& options) {
    const Eigen::Index n = true_prices.size();
    if (n == 0) throw InsufficientDataError("rho_grid_search: empty true_prices");
    if (!(s0 > 0.0)) throw DomainError("rho_grid_search: s0 must be > 0");

    constexpr int kGridSize = 2000;  // rho = -1 + 0.001 i, i in [0, 2000)
    ReconstructionResult result;
    if (options.record_curve) {
        result.curve_rho.resize(kGridSize);
        result.curve_sae.resize(kGridSize);
    }

    Rng shared_rng(seed);
    const ReconstructionNoise shared = draw_noise(sol, n, shared_rng);

    double best_sae = std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i < kGridSize; ++i) {
        const double rho = -1.0 + 0.001 * i;
        double sae;
        if (options.redraw_per_rho) {
            Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
            const ReconstructionNoise fresh = draw_noise(sol, n, rng);
            sae = sae_against(build_prices(sol, rho, s0, fresh), true_prices);
        } else {
            sae = sae_against(build_prices(sol, rho, s0, shared), true_prices);
        }
        if (options.record_curve) {
            result.curve_rho[i] = rho;
            result.curve_sae[i] = sae;
        }
        if (sae < best_sae) {  // strict: the first minimum (smallest rho) wins
            best_sae = sae;
            best_i = i;
        }
    }

    result.rho_star = -1.0 + 0.001 * best_i;
    result.sae = best_sae;
    if (options.redraw_per_rho) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(best_i));
        const ReconstructionNoise fresh = draw_noise(sol, n, rng);
        result.reconstructed = StatePath{0.0, 1.0, build_prices(sol, result.rho_star, s0, fresh)};
    } else {
        result.reconstructed = StatePath{0.0, 1.0, build_prices(sol, result.rho_star, s0, shared)};
    }
    return result;
}

void save_csv(const MomSolution& sol, const std::string& file) {
    auto out = detail::open_out(file);
    out << "mu,theta,alpha,xi,residual4,residual5,iterations,converged,singular_jacobian,"
           "valid_alpha,valid_theta\n";
    out << detail::fmt17(sol.mu) << ',' << detail::fmt17(sol.theta) << ','
        << detail::fmt17(sol.alpha) << ',' << detail::fmt17(sol.xi) << ','
        << detail::fmt17(sol.residual4) << ',' << detail::fmt17(sol.residual5) << ','
        << sol.iterations << ',' << int(sol.converged) << ',' << int(sol.singular_jacobian) << ','
        << int(sol.valid_alpha) << ',' << int(sol.valid_theta) << '\n';
}

void save_csv(const ReconstructionResult& result, const std::string& file) {
    auto out = detail::open_out(file);
    out << "rho_star,sae\n";
    out << detail::fmt17(result.rho_star) << ',' << detail::fmt17(result.sae) << '\n';
}

void save_curve_csv(const ReconstructionResult& result, const std::string& file) {
    if (result.curve_rho.size() == 0)
        throw ValidationError("save_curve_csv: curve was not recorded");
    auto out = detail::open_out(file);
    out << "rho,sae\n";
    for (Eigen::Index i = 0; i < result.curve_rho.size(); ++i)
        out << detail::fmt17(result.curve_rho[i]) << ',' << detail::fmt17(result.curve_sae[i])
            << '\n';
}

}  // namespace meanrev
