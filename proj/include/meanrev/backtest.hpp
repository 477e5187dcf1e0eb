#pragma once

#include "meanrev/kalman.hpp"
#include "meanrev/market_data.hpp"

namespace meanrev {

// Long/short 100-share day trade per traded day. positions[k] is +1 (long) or
// -1 (short); profit_series[k] is cumulative P&L in currency through traded
// day k; net_return = P_T / (100 Z^o_0) with Z^o_0 the open on the first
// traded day (start_index); benchmark_return = (Z^c_T - Z^o_0) / Z^o_0.
struct BacktestReport {
    std::vector<std::string> dates;  // traded days only
    std::vector<int> positions;
    Eigen::ArrayXd daily_pnl;
    Eigen::ArrayXd profit_series;
    double start_price = 0.0;
    double net_return = 0.0;
    double benchmark_return = 0.0;
    int trade_count = 0;
};

// On each day i in (start_index, n): the signal is the filter's a-priori
// prediction for day i against day i's open. open < prediction (the filter
// overestimates) opens a long: P += 100 (close_i - open_i); otherwise a short:
// P -= 100 (close_i - open_i). Exact ties go short (strict-inequality long
// branch). Zero transaction costs. predictions must be a filter run over the
// bars' open column (same length), with start_index matching its warm-up.
BacktestReport run_strategy(const DailyBarSeries& bars, const FilterRun& predictions,
                            Eigen::Index start_index);

// (close_T - open_0) / open_0 of the passed series (text-form benchmark).
double buy_hold_return(const DailyBarSeries& bars);

struct SweepSpec {
    Eigen::ArrayXd sigma_o_values;  // default: 20 log-spaced points on [1e-2, 1e2]
    std::vector<Eigen::Index> t_b_values = {20, 50, 80, 110, 140, 170, 200};
    Eigen::Index start_index = 30;
    OUParams initial_guess{50.0, 3.0, 0.1};
    bool legacy_update = false;
    int threads = 1;

    static SweepSpec defaults();
};

struct SweepGrid {
    Eigen::ArrayXd sigma_o_values;
    std::vector<Eigen::Index> t_b_values;
    Eigen::MatrixXd net_returns;  // |t_b| rows x |sigma_o| columns
    double best_sigma_o = 0.0;
    Eigen::Index best_t_b = 0;
    double best_net_return = 0.0;
    std::size_t warning_count = 0;
};

// Runs kalman_filter_recursive + run_strategy per (sigma_o, t_b) cell on the
// bars excluding the final holdout_days rows. Cells never abort the sweep:
// estimation failures inside a cell are the recursive filter's warnings.
// The argmax tie-break is smallest sigma_o, then smallest t_b. Cells are
// independent; spec.threads > 1 evaluates them with a deterministic parallel
// map.
SweepGrid parameter_sweep(const DailyBarSeries& bars, const SweepSpec& spec,
                          Eigen::Index holdout_days = 252);

// CSV: first row sigma_o values (blank corner), first column t_b values,
// body net returns in percent with 6 decimals.
void save_csv(const SweepGrid& grid, const std::string& file);

// CSV: "date,position,daily_pnl,cumulative_pnl".
void save_csv(const BacktestReport& report, const std::string& file);

}  // namespace meanrev
