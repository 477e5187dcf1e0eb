#pragma once

#include <Eigen/Core>
#include <string>

#include "meanrev/errors.hpp"

namespace meanrev {

// Uniform time grid: n_steps transitions, n_steps + 1 points, dt = horizon / n_steps.
struct SimGrid {
    double t0 = 0.0;
    double horizon = 1.0;
    int n_steps = 1;

    double dt() const { return horizon / n_steps; }
    int n_points() const { return n_steps + 1; }

    void validate() const {
        if (n_steps < 1) throw DomainError("SimGrid: n_steps must be >= 1");
        if (!(horizon > 0.0) || !std::isfinite(horizon))
            throw DomainError("SimGrid: horizon must be positive and finite");
    }
};

// Scalar path on a uniform grid. Times are derived from (t0, dt), never stored.
struct StatePath {
    double t0 = 0.0;
    double dt = 1.0;
    Eigen::ArrayXd values;

    Eigen::Index size() const { return values.size(); }
    double time(Eigen::Index i) const { return t0 + static_cast<double>(i) * dt; }
    Eigen::ArrayXd times() const {
        return t0 + dt * Eigen::ArrayXd::LinSpaced(values.size(), 0.0, static_cast<double>(values.size() - 1));
    }
};

// CSV: header "t,value", 17 significant digits, LF line endings.
void save_csv(const StatePath& path, const std::string& file);

// Validates uniform spacing (constant within 1e-12 relative) and ascending times.
StatePath load_state_path_csv(const std::string& file);

}  // namespace meanrev
