#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "meanrev/estimate.hpp"
#include "meanrev/state_path.hpp"

namespace meanrev {

// Two-state model for z = [1, x]: F = [[1,0],[A,B]] with A = mu (1 - e^{-alpha dt}),
// B = e^{-alpha dt}; process noise Q = sigma_p^2 I with
// sigma_p = sqrt(sigma^2/(2 alpha) (1 - e^{-2 alpha dt})); observation noise
// R = sigma_o^2 I; H = I. Both identity-scaled noises intentionally inject
// nominal noise into the constant component (keeps S invertible).
struct StateSpaceModel {
    Eigen::Matrix2d F;
    Eigen::Matrix2d Q;
    Eigen::Matrix2d R;
    Eigen::Matrix2d H;
    double A = 0.0;
    double B = 0.0;
    double sigma_p = 0.0;
    double sigma_o = 0.0;

    static StateSpaceModel from_components(double A, double B, double sigma_p, double sigma_o);
};

StateSpaceModel build_state_space(const OUParams& params, double dt, double sigma_o);

struct KalmanState {
    Eigen::Vector2d z;
    Eigen::Matrix2d P;
};

// Filter output aligned index-for-index with the input observations.
// residual[i] is the pre-fit innovation on the price component for actively
// filtered steps (so the a-priori prediction for step i is
// observations[i] - residual[i]); warm-up rows carry residual = 0 and gains = 0.
struct FilterRun {
    double t0 = 0.0;
    double dt = 1.0;
    Eigen::ArrayXd observations;
    Eigen::ArrayXd filtered;
    Eigen::ArrayXd residual;
    Eigen::ArrayXd gain11;
    Eigen::ArrayXd gain22;
    Eigen::Index start_index = 0;  // first actively filtered index
    std::vector<std::string> warnings;

    Eigen::Index size() const { return filtered.size(); }
    double prediction(Eigen::Index i) const { return observations[i] - residual[i]; }
    StatePath filtered_path() const { return StatePath{t0, dt, filtered}; }
};

struct KalmanOptions {
    // false: textbook update z_post = z_prior + K y.
    // true:  reproduce the legacy form z_post = z_prev + K y (prior-step mean).
    bool legacy_update = false;
};

// Fixed-parameter filter. filtered[0] = observations[0]; P starts at sigma_p^2 I.
// sigma_o = 0 short-circuits to K = I (the exact algebraic limit), making the
// output identical to the observations. Throws FilterError on singular S.
FilterRun kalman_filter(const StatePath& observations, const StateSpaceModel& model,
                        const KalmanOptions& options = {});

struct RecursiveConfig {
    double sigma_o = 1.0;
    Eigen::Index start_index = 30;
    Eigen::Index lookback = 30;  // t_b
    OUParams initial_guess{170.0, 3.0, 0.1};
    EstimationConfig estimation{};  // initial_guess field ignored; tolerances used

    void validate() const {
        if (!(sigma_o >= 0.0)) throw ValidationError("RecursiveConfig: sigma_o must be >= 0");
        if (start_index < 3) throw ValidationError("RecursiveConfig: start_index must be >= 3");
        if (lookback < 10) throw ValidationError("RecursiveConfig: lookback must be >= 10");
    }
};

// Recursive variant: estimates OU parameters on observations[0..start_index),
// copies the warm-up rows through, then runs predict/update per step; once the
// step index i exceeds the lookback t_b, re-estimates on the trailing t_b raw
// observations [i - t_b, i) warm-started from the previous estimate and
// rebuilds the state-space matrices before the next step. P is not reset on
// refit. A failed re-estimation keeps the previous parameters and appends a
// warning instead of aborting.
FilterRun kalman_filter_recursive(const StatePath& observations, const RecursiveConfig& config,
                                  const KalmanOptions& options = {});

// CSV: "t,observation,filtered" plus optional "residual,gain_11,gain_22".
void save_csv(const FilterRun& run, const std::string& file, bool diagnostics = false);

}  // namespace meanrev
