#include "meanrev/backtest.hpp"

#include <atomic>
#include <thread>

#include "csv_util.hpp"

namespace meanrev {

BacktestReport run_strategy(const DailyBarSeries& bars, const FilterRun& predictions,
                            Eigen::Index start_index) {
    const Eigen::Index n = bars.size();
    if (predictions.size() != n)
        throw AlignmentError("run_strategy: predictions and bars have different lengths");
    if (!(start_index >= 0 && start_index < n))
        throw ValidationError("run_strategy: start_index out of range");

    BacktestReport report;
    report.start_price = bars.open[start_index];
    const Eigen::Index traded = n - 1 - start_index;
    report.positions.reserve(static_cast<std::size_t>(std::max<Eigen::Index>(traded, 0)));
    report.daily_pnl.resize(std::max<Eigen::Index>(traded, 0));
    report.profit_series.resize(std::max<Eigen::Index>(traded, 0));

    double profit = 0.0;
    Eigen::Index k = 0;
    for (Eigen::Index i = start_index + 1; i < n; ++i, ++k) {
        // Signal: a-priori prediction for day i against day i's open.
        // Strict inequality makes exact ties short.
        const double prediction = predictions.prediction(i);
        const int position = bars.open[i] < prediction ? 1 : -1;
        const double pnl = position * 100.0 * (bars.close[i] - bars.open[i]);
        profit += pnl;
        report.dates.push_back(bars.dates[static_cast<std::size_t>(i)]);
        report.positions.push_back(position);
        report.daily_pnl[k] = pnl;
        report.profit_series[k] = profit;
    }
    report.trade_count = static_cast<int>(traded);
    report.net_return = profit / (100.0 * report.start_price);
    report.benchmark_return = (bars.close[n - 1] - report.start_price) / report.start_price;
    return report;
}

double buy_hold_return(const DailyBarSeries& bars) {
    if (bars.size() < 1) throw InsufficientDataError("buy_hold_return: empty series");
    return (bars.close[bars.size() - 1] - bars.open[0]) / bars.open[0];
}

SweepSpec SweepSpec::defaults() {
    SweepSpec spec;
    spec.sigma_o_values =
        Eigen::pow(10.0, Eigen::ArrayXd::LinSpaced(20, -2.0, 2.0));
    return spec;
}

namespace {

DailyBarSeries head_bars(const DailyBarSeries& bars, Eigen::Index count) {
    DailyBarSeries out;
    out.dates.assign(bars.dates.begin(), bars.dates.begin() + count);
    out.open = bars.open.head(count);
    out.close = bars.close.head(count);
    return out;
}

}  // namespace

SweepGrid parameter_sweep(const DailyBarSeries& bars, const SweepSpec& spec,
                          Eigen::Index holdout_days) {
    if (holdout_days < 0) throw ValidationError("parameter_sweep: holdout_days must be >= 0");
    if (spec.sigma_o_values.size() == 0 || spec.t_b_values.empty())
        throw ValidationError("parameter_sweep: empty grid");
    Eigen::Index max_tb = 0;
    for (Eigen::Index tb : spec.t_b_values) max_tb = std::max(max_tb, tb);
    if (bars.size() <= holdout_days + max_tb + spec.start_index)
        throw InsufficientDataError(
            "parameter_sweep: need more than holdout + max lookback + start_index rows");

    // The holdout rows are sliced away before any cell runs; nothing below can
    // read them.
    const DailyBarSeries train = head_bars(bars, bars.size() - holdout_days);
    const StatePath opens{0.0, 1.0, train.open};

    SweepGrid grid;
    grid.sigma_o_values = spec.sigma_o_values;
    grid.t_b_values = spec.t_b_values;
    const Eigen::Index rows = static_cast<Eigen::Index>(spec.t_b_values.size());
    const Eigen::Index cols = spec.sigma_o_values.size();
    grid.net_returns.resize(rows, cols);

    std::atomic<Eigen::Index> next_cell{0};
    std::atomic<std::size_t> warning_count{0};
    const Eigen::Index n_cells = rows * cols;
    const auto worker = [&]() {
        for (;;) {
            const Eigen::Index cell = next_cell.fetch_add(1);
            if (cell >= n_cells) return;
            const Eigen::Index row = cell / cols;
            const Eigen::Index col = cell % cols;
            RecursiveConfig config;
            config.sigma_o = spec.sigma_o_values[col];
            config.start_index = spec.start_index;
            config.lookback = spec.t_b_values[static_cast<std::size_t>(row)];
            config.initial_guess = spec.initial_guess;
            KalmanOptions options;
            options.legacy_update = spec.legacy_update;
            const FilterRun run = kalman_filter_recursive(opens, config, options);
            warning_count += run.warnings.size();
            const BacktestReport report = run_strategy(train, run, spec.start_index);
            grid.net_returns(row, col) = report.net_return;
        }
    };

    const int thread_count =
        std::max(1, std::min<int>(spec.threads, static_cast<int>(n_cells)));
    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(thread_count));
        for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    grid.warning_count = warning_count;

    // Argmax with ties broken by smallest sigma_o, then smallest t_b:
    // scan sigma_o-major so the first maximal hit wins.
    const double best = grid.net_returns.maxCoeff();
    for (Eigen::Index col = 0; col < cols; ++col) {
        bool found = false;
        for (Eigen::Index row = 0; row < rows; ++row) {
            if (grid.net_returns(row, col) == best) {
                grid.best_sigma_o = grid.sigma_o_values[col];
                grid.best_t_b = grid.t_b_values[static_cast<std::size_t>(row)];
                grid.best_net_return = best;
                found = true;
                break;
            }
        }
        if (found) break;
    }
    return grid;
}

void save_csv(const SweepGrid& grid, const std::string& file) {
    auto out = detail::open_out(file);
    for (Eigen::Index col = 0; col < grid.sigma_o_values.size(); ++col)
        out << ',' << detail::fmt17(grid.sigma_o_values[col]);
    out << '\n';
    for (Eigen::Index row = 0; row < grid.net_returns.rows(); ++row) {
        out << grid.t_b_values[static_cast<std::size_t>(row)];
        for (Eigen::Index col = 0; col < grid.net_returns.cols(); ++col) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6f", grid.net_returns(row, col) * 100.0);
            out << ',' << buf;
        }
        out << '\n';
    }
}

void save_csv(const BacktestReport& report, const std::string& file) {
    auto out = detail::open_out(file);
    out << "date,position,daily_pnl,cumulative_pnl\n";
    for (std::size_t i = 0; i < report.dates.size(); ++i) {
        const Eigen::Index k = static_cast<Eigen::Index>(i);
        out << report.dates[i] << ',' << report.positions[i] << ','
            << detail::fmt17(report.daily_pnl[k]) << ',' << detail::fmt17(report.profit_series[k])
            << '\n';
    }
}

}  // namespace meanrev
