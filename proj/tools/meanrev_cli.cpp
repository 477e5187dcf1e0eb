// meanrev: command-line surface over the mean-reversion toolkit.
// Exit codes: 0 success, 1 runtime failure, 2 usage/validation failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "meanrev/backtest.hpp"
#include "meanrev/errors.hpp"
#include "meanrev/estimate.hpp"
#include "meanrev/heston.hpp"
#include "meanrev/kalman.hpp"
#include "meanrev/market_data.hpp"
#include "meanrev/mom.hpp"
#include "meanrev/ou.hpp"
#include "meanrev/svg.hpp"

namespace {

using namespace meanrev;

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string g10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

Eigen::ArrayXd index_axis(Eigen::Index n, double t0 = 0.0) {
    return t0 + Eigen::ArrayXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
}

// Estimation that downgrades non-convergence to a stderr warning and keeps
// the best iterate, matching the recursive filter's policy.
OUParams estimate_or_warn(const EstimationConfig& config, const StatePath& data, bool* converged) {
    try {
        if (converged) *converged = true;
        return estimate_parameters(config, data);
    } catch (const EstimationFailure& e) {
        if (converged) *converged = false;
        std::cerr << "warning: " << e.what() << "; using best iterate\n";
        return e.best_params;
    }
}

struct SimulateOuArgs {
    double mu = 0.0, alpha = 1.0, sigma = 1.0, x0 = 0.0, t = 1.0;
    int n = 1000;
    std::string scheme = "exact";
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;
    std::string out, svg;
};

void run_simulate_ou(const SimulateOuArgs& a) {
    const OUParams params{a.mu, a.alpha, a.sigma};
    params.validate();
    const SimGrid grid{0.0, a.t, a.n};
    grid.validate();
    const StatePath clean = a.scheme == "em" ? simulate_ou_em(params, a.x0, grid, a.seed)
                                             : simulate_ou_exact(params, a.x0, grid, a.seed);
    StatePath path = clean;
    if (a.noise_sigma > 0.0) path = add_observation_noise(clean, a.noise_sigma, a.seed + 1);
    save_csv(path, a.out);
    if (!a.svg.empty()) {
        std::vector<SvgSeries> series{{a.scheme + " path", clean.times(), clean.values}};
        if (a.noise_sigma > 0.0) series.push_back({"observed", path.times(), path.values});
        write_line_chart(a.svg, "OU simulation", "t", "X_t", series);
    }
    std::cout << "simulate-ou: wrote " << path.size() << " points to " << a.out << '\n';
}

struct EstimateOuArgs {
    std::string input;
    double mu0 = 0.0, alpha0 = 1.0, sigma0 = 1.0;
    std::string out;
};

void run_estimate_ou(const EstimateOuArgs& a) {
    const StatePath data = load_state_path_csv(a.input);
    EstimationConfig config;
    config.initial_guess = {a.mu0, a.alpha0, a.sigma0};
    bool converged = false;
    const OUParams est = estimate_or_warn(config, data, &converged);
    const double ll = loglikelihood(est, data);
    if (!a.out.empty()) {
        std::ofstream f(a.out, std::ios::binary);
        if (!f) throw Error("cannot open output file: " + a.out);
        f << "mu,alpha,sigma,loglik,converged\n"
          << g17(est.mu) << ',' << g17(est.alpha) << ',' << g17(est.sigma) << ',' << g17(ll)
          << ',' << int(converged) << '\n';
    }
    std::cout << "estimate-ou: mu=" << g10(est.mu) << " alpha=" << g10(est.alpha)
              << " sigma=" << g10(est.sigma) << " loglik=" << g10(ll)
              << " converged=" << int(converged) << '\n';
}

struct KalmanArgs {
    std::string input, column_name = "open";
    double sigma_o = 1.0;
    Eigen::Index start_index = 30, lookback = 30;
    bool recursive = false, legacy = false, diagnostics = false;
    double mu0 = 170.0, alpha0 = 3.0, sigma0 = 0.1;
    std::string out, svg;
};

FilterRun run_kalman_filtering(const KalmanArgs& a, const DailyBarSeries& bars) {
    const Eigen::ArrayXd& col = column(bars, a.column_name);
    const KalmanOptions options{a.legacy};
    if (a.recursive) {
        RecursiveConfig cfg;
        cfg.sigma_o = a.sigma_o;
        cfg.start_index = a.start_index;
        cfg.lookback = a.lookback;
        cfg.initial_guess = {a.mu0, a.alpha0, a.sigma0};
        cfg.validate();
        return kalman_filter_recursive(StatePath{0.0, 1.0, col}, cfg, options);
    }
    // Fixed mode: one estimate on the first start_index observations, then a
    // constant-parameter filter over the remainder of the series.
    if (!(a.sigma_o >= 0.0)) throw ValidationError("kalman: sigma-o must be >= 0");
    if (a.start_index < 3 || a.start_index >= col.size() - 1)
        throw ValidationError("kalman: start-index out of range for input length");
    EstimationConfig config;
    config.initial_guess = {a.mu0, a.alpha0, a.sigma0};
    const OUParams params =
        estimate_or_warn(config, StatePath{0.0, 1.0, col.head(a.start_index)}, nullptr);
    const StateSpaceModel model = build_state_space(params, 1.0, a.sigma_o);
    const Eigen::ArrayXd tail = col.tail(col.size() - a.start_index);
    FilterRun run = kalman_filter(StatePath{static_cast<double>(a.start_index), 1.0, tail},
                                  model, options);
    return run;
}

void run_kalman(const KalmanArgs& a) {
    const DailyBarSeries bars = load_csv(a.input);
    const FilterRun run = run_kalman_filtering(a, bars);
    print_warnings(run.warnings);
    save_csv(run, a.out, a.diagnostics);
    if (!a.svg.empty()) {
        const Eigen::ArrayXd x = index_axis(run.size(), run.t0);
        write_line_chart(a.svg, a.recursive ? "Kalman filter (recursive)" : "Kalman filter",
                         "day", a.column_name,
                         {{"observed", x, run.observations}, {"filtered", x, run.filtered}});
    }
    std::cout << "kalman: wrote " << run.size() << " rows to " << a.out
              << (a.recursive ? " (recursive)" : " (fixed)") << '\n';
}

struct BacktestArgs {
    std::string input;
    double sigma_o = 20.0;
    Eigen::Index start_index = 30, lookback = 30;
    bool legacy = false;
    double mu0 = 170.0, alpha0 = 3.0, sigma0 = 0.1;
    std::string out, svg;
};

void run_backtest(const BacktestArgs& a) {
    const DailyBarSeries bars = load_csv(a.input);
    RecursiveConfig cfg;
    cfg.sigma_o = a.sigma_o;
    cfg.start_index = a.start_index;
    cfg.lookback = a.lookback;
    cfg.initial_guess = {a.mu0, a.alpha0, a.sigma0};
    cfg.validate();
    const FilterRun run =
        kalman_filter_recursive(StatePath{0.0, 1.0, bars.open}, cfg, KalmanOptions{a.legacy});
    print_warnings(run.warnings);
    const BacktestReport report = run_strategy(bars, run, a.start_index);
    save_csv(report, a.out);
    if (!a.svg.empty()) {
        const Eigen::ArrayXd x = index_axis(report.profit_series.size());
        write_line_chart(a.svg, "Strategy cumulative P&L", "traded day", "P&L",
                         {{"cumulative P&L", x, report.profit_series}});
    }
    std::printf("backtest: net_return=%.4f%% benchmark=%.4f%% trades=%d\n",
                100.0 * report.net_return, 100.0 * report.benchmark_return, report.trade_count);
}

struct SweepArgs {
    std::string input;
    Eigen::Index holdout = 252, start_index = 30;
    int threads = 1;
    bool legacy = false;
    double mu0 = 50.0, alpha0 = 3.0, sigma0 = 0.1;
    std::string out;
};

void run_sweep(const SweepArgs& a) {
    const DailyBarSeries bars = load_csv(a.input);
    SweepSpec spec = SweepSpec::defaults();
    spec.start_index = a.start_index;
    spec.initial_guess = {a.mu0, a.alpha0, a.sigma0};
    spec.legacy_update = a.legacy;
    spec.threads = a.threads;
    const SweepGrid grid = parameter_sweep(bars, spec, a.holdout);
    if (grid.warning_count > 0)
        std::cerr << "warning: " << grid.warning_count << " estimation warnings across cells\n";
    save_csv(grid, a.out);
    std::printf("sweep: best sigma_o=%.10g t_b=%lld net_return=%.4f%% (train)\n",
                grid.best_sigma_o, static_cast<long long>(grid.best_t_b),
                100.0 * grid.best_net_return);
}

struct HestonSimArgs {
    double s0 = 100.0, mu = 0.0, alpha = 1.0, theta = 0.0, v0 = 0.0, rho = 0.0, xi = 0.0,
           t = 1.0;
    int steps = 500, paths = 1;
    std::uint64_t seed = 0;
    std::string out, variance_out, svg;
};

void run_heston_simulate(const HestonSimArgs& a) {
    const HestonParams params{a.mu, a.theta, a.alpha, a.xi, a.rho};
    params.validate_simulation();
    if (!(a.s0 > 0.0)) throw DomainError("heston simulate: s0 must be > 0");
    if (!(a.v0 >= 0.0)) throw DomainError("heston simulate: v0 must be >= 0");
    if (a.paths < 1) throw ValidationError("heston simulate: paths must be >= 1");
    const SimGrid grid{0.0, a.t, a.steps};
    grid.validate();
    const std::vector<HestonPath> paths = simulate_heston(params, a.s0, a.v0, grid, a.paths, a.seed);

    auto write_matrix = [&](const std::string& file, const char* prefix, bool variance) {
        std::ofstream f(file, std::ios::binary);
        if (!f) throw Error("cannot open output file: " + file);
        f << 't';
        for (std::size_t k = 0; k < paths.size(); ++k) f << ',' << prefix << '_' << k;
        f << '\n';
        for (int i = 0; i < grid.n_points(); ++i) {
            f << g17(paths[0].price.time(i));
            for (const auto& p : paths)
                f << ',' << g17(variance ? p.variance.values[i] : p.price.values[i]);
            f << '\n';
        }
    };
    write_matrix(a.out, "price", false);
    if (!a.variance_out.empty()) write_matrix(a.variance_out, "variance", true);
    if (!a.svg.empty()) {
        std::vector<SvgSeries> series;
        const std::size_t shown = std::min<std::size_t>(paths.size(), 6);
        for (std::size_t k = 0; k < shown; ++k)
            series.push_back({"path " + std::to_string(k), paths[k].price.times(),
                              paths[k].price.values});
        write_line_chart(a.svg, "Heston price paths", "t", "S_t", series);
    }
    std::cout << "heston simulate: wrote " << a.paths << " paths x " << grid.n_points()
              << " points to " << a.out << '\n';
}

struct HestonFitArgs {
    std::string input, column_name = "open";
    double alpha0 = 0.0, xi0 = 0.0;
    bool have_initial = false;
    std::string out;
};

MomSolution fit_mom(const HestonFitArgs& a, const DailyBarSeries& bars) {
    const MomentSet moments = sample_moments(ratio_series(column(bars, a.column_name)));
    std::optional<std::pair<double, double>> initial;
    if (a.have_initial) initial = std::pair<double, double>{a.alpha0, a.xi0};
    return solve_mom(moments, initial);
}

void run_heston_mom_fit(const HestonFitArgs& a) {
    const DailyBarSeries bars = load_csv(a.input);
    const MomSolution sol = fit_mom(a, bars);
    if (!sol.converged)
        std::cerr << "warning: moment equations did not converge (residual4="
                  << g10(sol.residual4) << ", residual5=" << g10(sol.residual5)
                  << "); reporting best iterate\n";
    if (!a.out.empty()) save_csv(sol, a.out);
    std::cout << "heston mom-fit: mu=" << g10(sol.mu) << " theta=" << g10(sol.theta)
              << " alpha=" << g10(sol.alpha) << " xi=" << g10(sol.xi)
              << " converged=" << int(sol.converged) << " valid_alpha=" << int(sol.valid_alpha)
              << '\n';
}

struct HestonReconstructArgs {
    HestonFitArgs fit;
    bool rho_search = false, redraw = false;
    double rho = 0.0;
    bool have_rho = false;
    std::uint64_t seed = 0;
    std::string out, path_out, curve_out, svg;
};

void run_heston_reconstruct(const HestonReconstructArgs& a) {
    const DailyBarSeries bars = load_csv(a.fit.input);
    const MomSolution sol = fit_mom(a.fit, bars);
    const Eigen::ArrayXd& truth = column(bars, a.fit.column_name);
    const double s0 = truth[0];

    if (a.rho_search) {
        RhoSearchOptions options;
        options.redraw_per_rho = a.redraw;
        options.record_curve = !a.curve_out.empty() || !a.svg.empty();
        const ReconstructionResult result = rho_grid_search(sol, truth, s0, a.seed, options);
        if (!a.out.empty()) save_csv(result, a.out);
        if (!a.path_out.empty()) save_csv(result.reconstructed, a.path_out);
        if (!a.curve_out.empty()) save_curve_csv(result, a.curve_out);
        if (!a.svg.empty())
            write_line_chart(a.svg, "SAE over rho", "rho", "SAE",
                             {{"SAE", result.curve_rho, result.curve_sae}});
        std::printf("heston reconstruct: rho_star=%.4f sae=%s\n", result.rho_star,
                    g10(result.sae).c_str());
        return;
    }
    if (!a.have_rho)
        throw ValidationError("heston reconstruct: pass --rho VALUE or --rho-search");
    const StatePath path = reconstruct_prices(sol, a.rho, s0, truth.size(), a.seed);
    double sae = 0.0;
    for (Eigen::Index t = 1; t < path.size(); ++t) sae += std::abs(truth[t - 1] - path.values[t]);
    if (!a.out.empty()) save_csv(path, a.out);
    if (!a.svg.empty()) {
        const Eigen::ArrayXd x = index_axis(truth.size());
        write_line_chart(a.svg, "Reconstructed prices", "day", "price",
                         {{"observed", x, truth},
                          {"reconstructed", index_axis(path.size()), path.values}});
    }
    std::printf("heston reconstruct: rho=%.4f sae=%s\n", a.rho, g10(sae).c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mean-reversion asset-price toolkit"};
    app.require_subcommand(1);

    SimulateOuArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate-ou", "Simulate an OU path to CSV");
    sim_cmd->set_config("--config", "", "Config file (key = value); flags override");
    sim_cmd->add_option("--mu", sim.mu, "Long-run mean")->required();
    sim_cmd->add_option("--alpha", sim.alpha, "Reversion speed (> 0)")->required();
    sim_cmd->add_option("--sigma", sim.sigma, "Diffusion scale (> 0)")->required();
    sim_cmd->add_option("--x0", sim.x0, "Initial state")->required();
    sim_cmd->add_option("--t", sim.t, "Horizon (default 1)");
    sim_cmd->add_option("--n", sim.n, "Number of steps (default 1000)");
    sim_cmd->add_option("--scheme", sim.scheme, "exact | em (default exact)")
        ->check(CLI::IsMember({"exact", "em"}));
    sim_cmd->add_option("--seed", sim.seed, "RNG seed (default 0)");
    sim_cmd->add_option("--noise-sigma", sim.noise_sigma,
                        "Add observation noise with this sigma_o (uses seed+1)");
    sim_cmd->add_option("--out", sim.out, "Output CSV")->required();
    sim_cmd->add_option("--svg", sim.svg, "Optional SVG line chart");
    sim_cmd->callback([&] { run_simulate_ou(sim); });

    EstimateOuArgs est;
    auto* est_cmd = app.add_subcommand("estimate-ou", "MLE of OU parameters from a path CSV");
    est_cmd->set_config("--config", "", "Config file (key = value); flags override");
    est_cmd->add_option("--input", est.input, "StatePath CSV (t,value)")->required();
    est_cmd->add_option("--mu0", est.mu0, "Initial mu (default 0)");
    est_cmd->add_option("--alpha0", est.alpha0, "Initial alpha (default 1)");
    est_cmd->add_option("--sigma0", est.sigma0, "Initial sigma (default 1)");
    est_cmd->add_option("--out", est.out, "Optional result CSV");
    est_cmd->callback([&] { run_estimate_ou(est); });

    KalmanArgs kal;
    auto* kal_cmd = app.add_subcommand("kalman", "Kalman-filter a market CSV column");
    kal_cmd->set_config("--config", "", "Config file (key = value); flags override");
    kal_cmd->add_option("--input", kal.input, "Market CSV (date,open,close)")->required();
    kal_cmd->add_option("--column", kal.column_name, "open | close (default open)")
        ->check(CLI::IsMember({"open", "close"}));
    kal_cmd->add_option("--sigma-o", kal.sigma_o, "Observation noise / model confidence")
        ->required();
    kal_cmd->add_option("--start-index", kal.start_index, "Warm-up length (default 30)");
    kal_cmd->add_flag("--recursive", kal.recursive, "Re-estimate over a trailing lookback");
    kal_cmd->add_option("--lookback", kal.lookback, "Lookback t_b for --recursive (default 30)");
    kal_cmd->add_flag("--legacy-update", kal.legacy, "Use the prior-state update form");
    kal_cmd->add_flag("--diagnostics", kal.diagnostics, "Include residual and gain columns");
    kal_cmd->add_option("--mu0", kal.mu0, "Initial mu guess (default 170)");
    kal_cmd->add_option("--alpha0", kal.alpha0, "Initial alpha guess (default 3)");
    kal_cmd->add_option("--sigma0", kal.sigma0, "Initial sigma guess (default 0.1)");
    kal_cmd->add_option("--out", kal.out, "Output CSV")->required();
    kal_cmd->add_option("--svg", kal.svg, "Optional SVG chart");
    kal_cmd->callback([&] { run_kalman(kal); });

    BacktestArgs bt;
    auto* bt_cmd = app.add_subcommand("backtest", "Recursive-filter day-trading backtest");
    bt_cmd->set_config("--config", "", "Config file (key = value); flags override");
    bt_cmd->add_option("--input", bt.input, "Market CSV (date,open,close)")->required();
    bt_cmd->add_option("--sigma-o", bt.sigma_o, "Model confidence (default 20)");
    bt_cmd->add_option("--lookback", bt.lookback, "Lookback t_b (default 30)");
    bt_cmd->add_option("--start-index", bt.start_index, "Warm-up length (default 30)");
    bt_cmd->add_flag("--legacy-update", bt.legacy, "Use the prior-state update form");
    bt_cmd->add_option("--mu0", bt.mu0, "Initial mu guess (default 170)");
    bt_cmd->add_option("--alpha0", bt.alpha0, "Initial alpha guess (default 3)");
    bt_cmd->add_option("--sigma0", bt.sigma0, "Initial sigma guess (default 0.1)");
    bt_cmd->add_option("--out", bt.out, "Report CSV")->required();
    bt_cmd->add_option("--svg", bt.svg, "Optional SVG chart of cumulative P&L");
    bt_cmd->callback([&] { run_backtest(bt); });

    SweepArgs sw;
    auto* sw_cmd = app.add_subcommand("sweep", "(sigma_o, t_b) grid sweep on a train split");
    sw_cmd->set_config("--config", "", "Config file (key = value); flags override");
    sw_cmd->add_option("--input", sw.input, "Market CSV (date,open,close)")->required();
    sw_cmd->add_option("--holdout", sw.holdout, "Holdout rows excluded from train (default 252)");
    sw_cmd->add_option("--threads", sw.threads, "Worker threads (default 1)")
        ->check(CLI::Range(1, 256));
    sw_cmd->add_option("--start-index", sw.start_index, "Warm-up length (default 30)");
    sw_cmd->add_flag("--legacy-update", sw.legacy, "Use the prior-state update form");
    sw_cmd->add_option("--mu0", sw.mu0, "Initial mu guess (default 50)");
    sw_cmd->add_option("--alpha0", sw.alpha0, "Initial alpha guess (default 3)");
    sw_cmd->add_option("--sigma0", sw.sigma0, "Initial sigma guess (default 0.1)");
    sw_cmd->add_option("--out", sw.out, "Grid CSV")->required();
    sw_cmd->callback([&] { run_sweep(sw); });

    auto* heston_cmd = app.add_subcommand("heston", "Heston pipeline");
    heston_cmd->require_subcommand(1);

    HestonSimArgs hs;
    auto* hs_cmd = heston_cmd->add_subcommand("simulate", "Simulate Heston price paths");
    hs_cmd->set_config("--config", "", "Config file (key = value); flags override");
    hs_cmd->add_option("--s0", hs.s0, "Initial price (> 0)")->required();
    hs_cmd->add_option("--mu", hs.mu, "Drift")->required();
    hs_cmd->add_option("--alpha", hs.alpha, "Variance reversion speed")->required();
    hs_cmd->add_option("--theta", hs.theta, "Long-run variance (>= 0)")->required();
    hs_cmd->add_option("--v0", hs.v0, "Initial variance (>= 0)")->required();
    hs_cmd->add_option("--rho", hs.rho, "Brownian correlation in [-1, 1]")->required();
    hs_cmd->add_option("--xi", hs.xi, "Vol of vol")->required();
    hs_cmd->add_option("--t", hs.t, "Horizon (default 1)");
    hs_cmd->add_option("--steps", hs.steps, "Steps (default 500)");
    hs_cmd->add_option("--paths", hs.paths, "Paths (default 1)");
    hs_cmd->add_option("--seed", hs.seed, "RNG seed (default 0)");
    hs_cmd->add_option("--out", hs.out, "Price CSV")->required();
    hs_cmd->add_option("--variance-out", hs.variance_out, "Optional variance CSV");
    hs_cmd->add_option("--svg", hs.svg, "Optional SVG (first 6 paths)");
    hs_cmd->callback([&] { run_heston_simulate(hs); });

    HestonFitArgs hf;
    auto* hf_cmd = heston_cmd->add_subcommand("mom-fit", "Method-of-moments Heston fit");
    hf_cmd->set_config("--config", "", "Config file (key = value); flags override");
    hf_cmd->add_option("--input", hf.input, "Market CSV (date,open,close)")->required();
    hf_cmd->add_option("--column", hf.column_name, "open | close (default open)")
        ->check(CLI::IsMember({"open", "close"}));
    auto* hf_a0 = hf_cmd->add_option("--alpha0", hf.alpha0, "Initial alpha for the solver");
    auto* hf_x0 = hf_cmd->add_option("--xi0", hf.xi0, "Initial xi for the solver");
    hf_a0->needs(hf_x0);
    hf_x0->needs(hf_a0);
    hf_cmd->add_option("--out", hf.out, "Optional MomSolution CSV");
    hf_cmd->callback([&] {
        hf.have_initial = hf_a0->count() > 0;
        run_heston_mom_fit(hf);
    });

    HestonReconstructArgs hr;
    auto* hr_cmd = heston_cmd->add_subcommand("reconstruct",
                                              "Reconstruct prices from a MOM fit");
    hr_cmd->set_config("--config", "", "Config file (key = value); flags override");
    hr_cmd->add_option("--input", hr.fit.input, "Market CSV (date,open,close)")->required();
    hr_cmd->add_option("--column", hr.fit.column_name, "open | close (default open)")
        ->check(CLI::IsMember({"open", "close"}));
    auto* hr_a0 = hr_cmd->add_option("--alpha0", hr.fit.alpha0, "Initial alpha for the solver");
    auto* hr_x0 = hr_cmd->add_option("--xi0", hr.fit.xi0, "Initial xi for the solver");
    hr_a0->needs(hr_x0);
    hr_x0->needs(hr_a0);
    auto* hr_rho = hr_cmd->add_option("--rho", hr.rho, "Fixed correlation in [-1, 1]");
    hr_cmd->add_flag("--rho-search", hr.rho_search, "Grid-search rho on [-1, 1)");
    hr_cmd->add_flag("--redraw-per-rho", hr.redraw,
                     "Fresh noise per rho instead of one shared draw");
    hr_cmd->add_option("--seed", hr.seed, "RNG seed (default 0)");
    hr_cmd->add_option("--out", hr.out, "Result CSV (search: rho_star,sae; fixed: the path)");
    hr_cmd->add_option("--path-out", hr.path_out, "Reconstructed path CSV (search mode)");
    hr_cmd->add_option("--curve-out", hr.curve_out, "Full (rho, SAE) curve CSV (search mode)");
    hr_cmd->add_option("--svg", hr.svg, "Optional SVG chart");
    hr_cmd->callback([&] {
        hr.fit.have_initial = hr_a0->count() > 0;
        hr.have_rho = hr_rho->count() > 0;
        run_heston_reconstruct(hr);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InsufficientDataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
