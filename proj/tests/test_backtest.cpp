#include "meanrev/backtest.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

using namespace meanrev;

#ifndef MEANREV_DATA_DIR
#error "MEANREV_DATA_DIR must be defined by the build"
#endif

namespace {

DailyBarSeries make_bars(std::initializer_list<double> open, std::initializer_list<double> close) {
    DailyBarSeries bars;
    bars.open = Eigen::ArrayXd(static_cast<Eigen::Index>(open.size()));
    bars.close = Eigen::ArrayXd(static_cast<Eigen::Index>(close.size()));
    Eigen::Index i = 0;
    for (double v : open) bars.open[i++] = v;
    i = 0;
    for (double v : close) bars.close[i++] = v;
    char date[16];
    for (Eigen::Index k = 0; k < bars.open.size(); ++k) {
        std::snprintf(date, sizeof(date), "2021-01-%02d", static_cast<int>(k + 1));
        bars.dates.emplace_back(date);
    }
    return bars;
}

// A prediction carrier over the opens: prediction(i) = open[i] - residual[i].
FilterRun make_predictions(const DailyBarSeries& bars, const Eigen::ArrayXd& residual,
                           Eigen::Index start_index) {
    FilterRun run;
    run.observations = bars.open;
    run.filtered = bars.open;
    run.residual = residual;
    run.gain11 = Eigen::ArrayXd::Zero(bars.size());
    run.gain22 = Eigen::ArrayXd::Zero(bars.size());
    run.start_index = start_index;
    return run;
}

}  // namespace

// One traded day: prediction 102 > open 100 opens a long, close 101 gains
// 100 shares x 1 = 100 currency units, net return 100 / (100 x 100) = 1%.
TEST(Strategy, SingleDayLong) {
    const DailyBarSeries bars = make_bars({100.0, 100.0}, {100.0, 101.0});
    Eigen::ArrayXd residual(2);
    residual << 0.0, -2.0;
    const BacktestReport report = run_strategy(bars, make_predictions(bars, residual, 0), 0);
    ASSERT_EQ(report.trade_count, 1);
    EXPECT_EQ(report.positions[0], 1);
    EXPECT_DOUBLE_EQ(report.daily_pnl[0], 100.0);
    EXPECT_DOUBLE_EQ(report.net_return, 0.01);
    EXPECT_DOUBLE_EQ(report.benchmark_return, 0.01);
    EXPECT_EQ(report.dates[0], bars.dates[1]);
}

TEST(Strategy, ExactTieGoesShort) {
    const DailyBarSeries bars = make_bars({100.0, 100.0, 100.0}, {100.0, 101.0, 99.0});
    const Eigen::ArrayXd residual = Eigen::ArrayXd::Zero(3);  // prediction == open
    const BacktestReport report = run_strategy(bars, make_predictions(bars, residual, 0), 0);
    ASSERT_EQ(report.trade_count, 2);
    EXPECT_EQ(report.positions[0], -1);
    EXPECT_EQ(report.positions[1], -1);
    EXPECT_DOUBLE_EQ(report.daily_pnl[0], -100.0);
    EXPECT_DOUBLE_EQ(report.daily_pnl[1], 100.0);
}

TEST(Strategy, AccountingIdentities) {
    const DailyBarSeries bars =
        make_bars({96.5, 97.2, 95.8, 96.1, 98.4, 97.0}, {97.1, 96.4, 96.0, 97.9, 97.2, 98.1});
    Eigen::ArrayXd residual(6);
    residual << 0.0, 0.3, -0.4, 0.1, -0.2, 0.5;
    const BacktestReport report = run_strategy(bars, make_predictions(bars, residual, 1), 1);
    ASSERT_EQ(report.trade_count, 4);
    double profit = 0.0;
    for (Eigen::Index k = 0; k < 4; ++k) {
        const Eigen::Index i = 2 + k;
        const double expected = report.positions[static_cast<std::size_t>(k)] * 100.0 *
                                (bars.close[i] - bars.open[i]);
        EXPECT_DOUBLE_EQ(report.daily_pnl[k], expected);
        profit += report.daily_pnl[k];
        EXPECT_DOUBLE_EQ(report.profit_series[k], profit);
    }
    EXPECT_DOUBLE_EQ(report.net_return, profit / (100.0 * bars.open[1]));
    EXPECT_DOUBLE_EQ(report.start_price, bars.open[1]);
    EXPECT_DOUBLE_EQ(report.benchmark_return, (bars.close[5] - bars.open[1]) / bars.open[1]);
}

// Mirroring every prediction about the open flips every position (no ties),
// so the P&L stream negates exactly.
TEST(Strategy, MirroredPredictionsNegatePnl) {
    const DailyBarSeries bars =
        make_bars({96.5, 97.2, 95.8, 96.1, 98.4}, {97.1, 96.4, 96.0, 97.9, 97.2});
    Eigen::ArrayXd residual(5);
    residual << 0.0, 0.3, -0.4, 0.1, -0.2;
    const BacktestReport a = run_strategy(bars, make_predictions(bars, residual, 0), 0);
    const BacktestReport b =
        run_strategy(bars, make_predictions(bars, Eigen::ArrayXd(-residual), 0), 0);
    for (Eigen::Index k = 0; k < a.daily_pnl.size(); ++k) {
        EXPECT_EQ(a.positions[static_cast<std::size_t>(k)],
                  -b.positions[static_cast<std::size_t>(k)]);
        EXPECT_EQ(a.daily_pnl[k], -b.daily_pnl[k]);
    }
    EXPECT_EQ(a.net_return, -b.net_return);
}

TEST(Strategy, Validation) {
    const DailyBarSeries bars = make_bars({100.0, 100.0}, {100.0, 101.0});
    FilterRun run = make_predictions(bars, Eigen::ArrayXd::Zero(2), 0);
    EXPECT_THROW(run_strategy(bars, run, -1), ValidationError);
    EXPECT_THROW(run_strategy(bars, run, 2), ValidationError);
    FilterRun wrong = run;
    wrong.observations = Eigen::ArrayXd::Zero(3);
    wrong.filtered = Eigen::ArrayXd::Zero(3);
    wrong.residual = Eigen::ArrayXd::Zero(3);
    EXPECT_THROW(run_strategy(bars, wrong, 0), AlignmentError);
}

TEST(Strategy, LastDayStartHasNoTrades) {
    const DailyBarSeries bars = make_bars({100.0, 102.0}, {101.0, 103.0});
    const BacktestReport report =
        run_strategy(bars, make_predictions(bars, Eigen::ArrayXd::Zero(2), 1), 1);
    EXPECT_EQ(report.trade_count, 0);
    EXPECT_DOUBLE_EQ(report.net_return, 0.0);
    EXPECT_DOUBLE_EQ(report.benchmark_return, (103.0 - 102.0) / 102.0);
}

TEST(BuyHold, Examples) {
    EXPECT_DOUBLE_EQ(buy_hold_return(make_bars({100.0, 101.0}, {99.0, 110.0})), 0.10);
    EXPECT_DOUBLE_EQ(buy_hold_return(make_bars({100.0}, {100.0})), 0.0);
    EXPECT_DOUBLE_EQ(buy_hold_return(make_bars({100.0, 101.0}, {99.0, 90.0})), -0.10);
}

TEST(Sweep, SingleCellMatchesDirectRun) {
    const DailyBarSeries bars = load_csv(std::string(MEANREV_DATA_DIR) + "/aapl1y.csv");
    SweepSpec spec;
    spec.sigma_o_values = Eigen::ArrayXd::Constant(1, 5.0);
    spec.t_b_values = {20};
    const SweepGrid grid = parameter_sweep(bars, spec, 0);

    RecursiveConfig config;
    config.sigma_o = 5.0;
    config.lookback = 20;
    config.start_index = spec.start_index;
    config.initial_guess = spec.initial_guess;
    const StatePath opens{0.0, 1.0, bars.open};
    const FilterRun run = kalman_filter_recursive(opens, config);
    const BacktestReport direct = run_strategy(bars, run, spec.start_index);

    ASSERT_EQ(grid.net_returns.rows(), 1);
    ASSERT_EQ(grid.net_returns.cols(), 1);
    EXPECT_EQ(grid.net_returns(0, 0), direct.net_return);
    EXPECT_EQ(grid.best_net_return, direct.net_return);
    EXPECT_DOUBLE_EQ(grid.best_sigma_o, 5.0);
    EXPECT_EQ(grid.best_t_b, 20);
}

// The holdout rows must be unreadable by the sweep: corrupting them cannot
// change any cell.
TEST(Sweep, HoldoutRowsAreNeverRead) {
    const DailyBarSeries bars = load_csv(std::string(MEANREV_DATA_DIR) + "/aapl4y.csv");
    SweepSpec spec;
    spec.sigma_o_values = Eigen::ArrayXd(2);
    spec.sigma_o_values << 0.5, 5.0;
    spec.t_b_values = {20};
    const SweepGrid clean = parameter_sweep(bars, spec, 252);

    DailyBarSeries corrupted = bars;
    corrupted.open.tail(252) *= 7.0;
    corrupted.close.tail(252) *= 7.0;
    const SweepGrid grid = parameter_sweep(corrupted, spec, 252);
    EXPECT_TRUE(grid.net_returns == clean.net_returns);
    EXPECT_EQ(grid.best_sigma_o, clean.best_sigma_o);
    EXPECT_EQ(grid.best_t_b, clean.best_t_b);
    EXPECT_EQ(grid.best_net_return, clean.best_net_return);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
    const DailyBarSeries bars = load_csv(std::string(MEANREV_DATA_DIR) + "/aapl1y.csv");
    SweepSpec spec;
    spec.sigma_o_values = Eigen::ArrayXd(2);
    spec.sigma_o_values << 1.0, 10.0;
    spec.t_b_values = {20, 50};
    const SweepGrid serial = parameter_sweep(bars, spec, 0);
    spec.threads = 3;
    const SweepGrid parallel = parameter_sweep(bars, spec, 0);
    EXPECT_TRUE(parallel.net_returns == serial.net_returns);
    EXPECT_EQ(parallel.best_sigma_o, serial.best_sigma_o);
    EXPECT_EQ(parallel.best_t_b, serial.best_t_b);
    EXPECT_EQ(parallel.warning_count, serial.warning_count);
}

// Duplicated grid values force exact ties; the winner must be deterministic
// (first sigma_o, then first t_b in scan order).
TEST(Sweep, DuplicatedCellsPickDeterministicWinner) {
    const DailyBarSeries bars = load_csv(std::string(MEANREV_DATA_DIR) + "/aapl1y.csv");
    SweepSpec spec;
    spec.sigma_o_values = Eigen::ArrayXd::Constant(2, 5.0);
    spec.t_b_values = {20, 20};
    const SweepGrid grid = parameter_sweep(bars, spec, 0);
    EXPECT_EQ(grid.net_returns(0, 0), grid.net_returns(1, 1));
    EXPECT_EQ(grid.best_net_return, grid.net_returns.maxCoeff());
    EXPECT_DOUBLE_EQ(grid.best_sigma_o, 5.0);
    EXPECT_EQ(grid.best_t_b, 20);
}

TEST(Sweep, RejectsShortInput) {
    const DailyBarSeries bars = load_csv(std::string(MEANREV_DATA_DIR) + "/aapl1y.csv");
    EXPECT_THROW(parameter_sweep(bars, SweepSpec::defaults(), 252), InsufficientDataError);
    SweepSpec spec;
    spec.sigma_o_values = Eigen::ArrayXd::Constant(1, 1.0);
    spec.t_b_values = {};
    EXPECT_THROW(parameter_sweep(bars, spec, 0), ValidationError);
    EXPECT_THROW(parameter_sweep(bars, SweepSpec::defaults(), -1), ValidationError);
}

TEST(Sweep, GridCsvLayout) {
    const DailyBarSeries bars = load_csv(std::string(MEANREV_DATA_DIR) + "/aapl1y.csv");
    SweepSpec spec;
    spec.sigma_o_values = Eigen::ArrayXd(2);
    spec.sigma_o_values << 1.0, 10.0;
    spec.t_b_values = {20};
    const SweepGrid grid = parameter_sweep(bars, spec, 0);
    const std::string path = std::string(::testing::TempDir()) + "sweep_grid.csv";
    save_csv(grid, path);
    std::ifstream in(path);
    std::string header, row, extra;
    ASSERT_TRUE(static_cast<bool>(std::getline(in, header)));
    ASSERT_TRUE(static_cast<bool>(std::getline(in, row)));
    EXPECT_FALSE(static_cast<bool>(std::getline(in, extra)));
    EXPECT_EQ(header, ",1,10");
    EXPECT_EQ(row.rfind("20,", 0), 0u);
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 2);
}

TEST(Strategy, ReportCsvHeader) {
    const DailyBarSeries bars = make_bars({100.0, 100.0}, {100.0, 101.0});
    const BacktestReport report =
        run_strategy(bars, make_predictions(bars, Eigen::ArrayXd::Zero(2), 0), 0);
    const std::string path = std::string(::testing::TempDir()) + "report.csv";
    save_csv(report, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "date,position,daily_pnl,cumulative_pnl");
}
