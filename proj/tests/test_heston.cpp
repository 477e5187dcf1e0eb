#include "meanrev/heston.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace meanrev;

namespace {

const HestonParams kFig{0.05, 0.02, 2.0, 0.1, -0.7};

}  // namespace

TEST(HestonParams, Validation) {
    EXPECT_NO_THROW(kFig.validate_simulation());
    EXPECT_THROW((HestonParams{0.0, -0.1, 1.0, 0.1, 0.0}).validate_simulation(), DomainError);
    EXPECT_THROW((HestonParams{0.0, 0.1, 1.0, 0.1, 1.5}).validate_simulation(), DomainError);
    EXPECT_THROW((HestonParams{NAN, 0.1, 1.0, 0.1, 0.0}).validate_simulation(), DomainError);
}

TEST(SimulateHeston, ShapeAndDeterminism) {
    const SimGrid grid{0.0, 1.0, 500};
    const auto paths = simulate_heston(kFig, 100.0, 0.01, grid, 5, 42);
    ASSERT_EQ(paths.size(), 5u);
    for (const auto& p : paths) {
        ASSERT_EQ(p.price.size(), grid.n_points());
        ASSERT_EQ(p.variance.size(), grid.n_points());
        EXPECT_DOUBLE_EQ(p.price.values[0], 100.0);
        EXPECT_DOUBLE_EQ(p.variance.values[0], 0.01);
    }
    const auto again = simulate_heston(kFig, 100.0, 0.01, grid, 5, 42);
    for (std::size_t k = 0; k < paths.size(); ++k)
        EXPECT_TRUE((paths[k].price.values == again[k].price.values).all());
}

// Per-path substreams: the first paths do not depend on how many are drawn.
TEST(SimulateHeston, PathCountExtension) {
    const SimGrid grid{0.0, 1.0, 100};
    const auto three = simulate_heston(kFig, 100.0, 0.01, grid, 3, 9);
    const auto five = simulate_heston(kFig, 100.0, 0.01, grid, 5, 9);
    for (int k = 0; k < 3; ++k) {
        EXPECT_TRUE((three[k].price.values == five[k].price.values).all());
        EXPECT_TRUE((three[k].variance.values == five[k].variance.values).all());
    }
}

TEST(SimulateHeston, PricePositivity) {
    // Aggressive vol-of-vol drives the variance negative; prices must stay > 0.
    const HestonParams params{0.0, 0.01, 0.5, 1.5, -0.9};
    const SimGrid grid{0.0, 2.0, 2000};
    const auto paths = simulate_heston(params, 50.0, 0.0, grid, 4, 13);
    for (const auto& p : paths) {
        EXPECT_TRUE((p.price.values > 0.0).all());
        EXPECT_TRUE(p.price.values.isFinite().all());
    }
}

// xi = 0, v0 = theta: variance is exactly constant and the model degenerates
// to geometric Brownian motion with log-increment mean (mu - theta/2) dt.
TEST(SimulateHeston, DegeneratesToGbm) {
    const HestonParams params{0.05, 0.04, 1.3, 0.0, 0.0};
    const SimGrid grid{0.0, 1.0, 20000};
    const auto paths = simulate_heston(params, 100.0, 0.04, grid, 1, 21);
    const auto& p = paths[0];
    EXPECT_TRUE((p.variance.values == 0.04).all());
    const Eigen::ArrayXd logp = p.price.values.log();
    const Eigen::ArrayXd inc = logp.tail(grid.n_steps) - logp.head(grid.n_steps);
    const double expected = (params.mu - 0.04 / 2.0) * grid.dt();
    const double se = std::sqrt(0.04 * grid.dt() / grid.n_steps);
    EXPECT_NEAR(inc.mean(), expected, 3.0 * se);
}

TEST(SimulateHeston, RejectsBadInitialConditions) {
    const SimGrid grid{0.0, 1.0, 10};
    EXPECT_THROW(simulate_heston(kFig, 0.0, 0.01, grid, 1, 1), DomainError);
    EXPECT_THROW(simulate_heston(kFig, -5.0, 0.01, grid, 1, 1), DomainError);
    EXPECT_THROW(simulate_heston(kFig, 100.0, -0.01, grid, 1, 1), DomainError);
}
