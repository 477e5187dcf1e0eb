#include "meanrev/kalman.hpp"

#include <cmath>

#include "csv_util.hpp"

namespace meanrev {

StateSpaceModel StateSpaceModel::from_components(double A, double B, double sigma_p,
                                                 double sigma_o) {
    StateSpaceModel m;
    m.A = A;
    m.B = B;
    m.sigma_p = sigma_p;
    m.sigma_o = sigma_o;
    m.F << 1.0, 0.0, A, B;
    m.Q = Eigen::Matrix2d::Identity() * (sigma_p * sigma_p);
    m.R = Eigen::Matrix2d::Identity() * (sigma_o * sigma_o);
    m.H = Eigen::Matrix2d::Identity();
    return m;
}

StateSpaceModel build_state_space(const OUParams& params, double dt, double sigma_o) {
    if (!(params.alpha > 0.0)) throw DomainError("build_state_space: alpha must be > 0");
    if (!(params.sigma > 0.0)) throw DomainError("build_state_space: sigma must be > 0");
    if (!(dt > 0.0)) throw DomainError("build_state_space: dt must be > 0");
    if (!(sigma_o >= 0.0)) throw DomainError("build_state_space: sigma_o must be >= 0");
    const double B = std::exp(-params.alpha * dt);
    const double A = params.mu * (1.0 - B);
    const double sigma_p = std::sqrt(params.sigma * params.sigma / (2.0 * params.alpha) *
                                     -std::expm1(-2.0 * params.alpha * dt));
    return StateSpaceModel::from_components(A, B, sigma_p, sigma_o);
}

namespace {

struct StepDiagnostics {
    double residual;
    double gain11;
    double gain22;
};

// One predict/update cycle. The observation vector is [1, x]; sigma_o = 0
// short-circuits to K = I, the exact algebraic limit of P S^{-1} at R = 0.
StepDiagnostics kalman_step(KalmanState& state, double observation, const StateSpaceModel& model,
                            bool legacy_update) {
    const Eigen::Vector2d z_prev = state.z;
    const Eigen::Vector2d z_prior = model.F * state.z;
    const Eigen::Matrix2d p_prior = model.F * state.P * model.F.transpose() + model.Q;

    const Eigen::Vector2d obs(1.0, observation);
    const Eigen::Vector2d y = obs - model.H * z_prior;

    if (model.sigma_o == 0.0) {
        // K = I is the exact algebraic limit; assign rather than evaluate the
        // update formula so the posterior equals the observation bitwise
        // under either update form.
        state.z = obs;
        state.P.setZero();
        return {y[1], 1.0, 1.0};
    }

    const Eigen::Matrix2d s = model.H * p_prior * model.H.transpose() + model.R;
    const double det = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
    if (!std::isfinite(det) || det == 0.0)
        throw FilterError("kalman_filter: singular innovation covariance");
    const Eigen::Matrix2d gain = p_prior * model.H.transpose() * s.inverse();

    state.z = (legacy_update ? z_prev : z_prior) + gain * y;
    state.P = (Eigen::Matrix2d::Identity() - gain * model.H) * p_prior;
    return {y[1], gain(0, 0), gain(1, 1)};
}

FilterRun make_run(const StatePath& observations) {
    FilterRun run;
    run.t0 = observations.t0;
    run.dt = observations.dt;
    run.observations = observations.values;
    run.filtered = Eigen::ArrayXd::Zero(observations.size());
    run.residual = Eigen::ArrayXd::Zero(observations.size());
    run.gain11 = Eigen::ArrayXd::Zero(observations.size());
    run.gain22 = Eigen::ArrayXd::Zero(observations.size());
    return run;
}

}  // namespace

FilterRun kalman_filter(const StatePath& observations, const StateSpaceModel& model,
                        const KalmanOptions& options) {
    if (observations.size() < 1) throw InsufficientDataError("kalman_filter: empty observations");
    FilterRun run = make_run(observations);
    run.start_index = 0;
    run.filtered[0] = observations.values[0];

    KalmanState state{Eigen::Vector2d(1.0, observations.values[0]),
                      Eigen::Matrix2d::Identity() * (model.sigma_p * model.sigma_p)};
    for (Eigen::Index k = 0; k + 1 < observations.size(); ++k) {
        const StepDiagnostics diag =
            kalman_step(state, observations.values[k + 1], model, options.legacy_update);
        run.filtered[k + 1] = state.z[1];
        run.residual[k + 1] = diag.residual;
        run.gain11[k + 1] = diag.gain11;
        run.gain22[k + 1] = diag.gain22;
    }
    return run;
}

FilterRun kalman_filter_recursive(const StatePath& observations, const RecursiveConfig& config,
                                  const KalmanOptions& options) {
    config.validate();
    const Eigen::Index n = observations.size();
    const Eigen::Index start = config.start_index;
    if (n <= start)
        throw InsufficientDataError("kalman_filter_recursive: observations length must exceed start_index");

    FilterRun run = make_run(observations);
    run.start_index = start;

    // Initial estimate on the warm-up window [0, start_index).
    EstimationConfig est = config.estimation;
    est.initial_guess = config.initial_guess;
    const StatePath warmup{observations.t0, observations.dt, observations.values.head(start)};
    OUParams params{};
    try {
        params = estimate_parameters(est, warmup);
    } catch (const EstimationFailure& failure) {
        // Fall back to the failure's best iterate (at least as likely as the guess).
        params = failure.best_params;
        run.warnings.push_back(std::string("initial estimation did not converge: ") +
                               failure.what());
    }
    StateSpaceModel model = build_state_space(params, observations.dt, config.sigma_o);

    for (Eigen::Index i = 0; i < start; ++i) run.filtered[i] = observations.values[i];

    KalmanState state{Eigen::Vector2d(1.0, observations.values[start - 1]),
                      Eigen::Matrix2d::Identity() * (model.sigma_p * model.sigma_p)};
    for (Eigen::Index i = start - 1; i + 1 < n; ++i) {
        const StepDiagnostics diag =
            kalman_step(state, observations.values[i + 1], model, options.legacy_update);
        run.filtered[i + 1] = state.z[1];
        run.residual[i + 1] = diag.residual;
        run.gain11[i + 1] = diag.gain11;
        run.gain22[i + 1] = diag.gain22;

        // Once past the lookback, refit on the trailing raw window [i - t_b, i),
        // warm-started from the current estimate. P carries through unchanged.
        if (i > config.lookback) {
            est.initial_guess = params;
            const StatePath window{observations.time(i - config.lookback), observations.dt,
                                   observations.values.segment(i - config.lookback, config.lookback)};
            try {
                params = estimate_parameters(est, window);
                model = build_state_space(params, observations.dt, config.sigma_o);
            } catch (const EstimationFailure& failure) {
                run.warnings.push_back("re-estimation at step " + std::to_string(i) +
                                       " did not converge; keeping previous parameters");
                (void)failure;
            }
        }
    }
    return run;
}

void save_csv(const FilterRun& run, const std::string& file, bool diagnostics) {
    auto out = detail::open_out(file);
    out << (diagnostics ? "t,observation,filtered,residual,gain_11,gain_22" : "t,observation,filtered")
        << '\n';
    for (Eigen::Index i = 0; i < run.size(); ++i) {
        out << detail::fmt17(run.t0 + static_cast<double>(i) * run.dt) << ','
            << detail::fmt17(run.observations[i]) << ',' << detail::fmt17(run.filtered[i]);
        if (diagnostics)
            out << ',' << detail::fmt17(run.residual[i]) << ',' << detail::fmt17(run.gain11[i])
                << ',' << detail::fmt17(run.gain22[i]);
        out << '\n';
    }
}

}  // namespace meanrev
