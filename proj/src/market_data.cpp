#include "meanrev/market_data.hpp"

#include <algorithm>
#include <numeric>

#include "csv_util.hpp"

namespace meanrev {

void DailyBarSeries::validate() const {
    const std::size_t n = dates.size();
    if (open.size() != static_cast<Eigen::Index>(n) || close.size() != static_cast<Eigen::Index>(n))
        throw ValidationError("DailyBarSeries: column lengths differ");
    for (std::size_t i = 1; i < n; ++i)
        if (!(dates[i - 1] < dates[i]))
            throw ValidationError("DailyBarSeries: dates must be strictly ascending (at " +
                                  dates[i] + ")");
    for (Eigen::Index i = 0; i < open.size(); ++i)
        if (!(open[i] > 0.0) || !(close[i] > 0.0))
            throw ValidationError("DailyBarSeries: prices must be > 0");
}

DailyBarSeries load_csv(const std::string& file) {
    auto in = detail::open_in(file);
    std::string line;
    std::size_t line_number = 0;

    struct Row {
        std::string date;
        double open;
        double close;
        std::size_t line;
    };
    std::vector<Row> rows;
    std::size_t dropped = 0;

    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_number == 1) {
            if (line != "date,open,close")
                throw ParseError("expected header 'date,open,close'", line_number);
            continue;
        }
        if (line.empty()) continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != 3) throw ParseError("expected 3 fields", line_number);
        const std::string date = detail::strip(fields[0]);
        if (date.empty()) throw ParseError("empty date field", line_number);
        // Missing-value semantics: a blank open or close drops the whole row.
        if (detail::strip(fields[1]).empty() || detail::strip(fields[2]).empty()) {
            ++dropped;
            continue;
        }
        rows.push_back({date, detail::parse_double(fields[1], line_number),
                        detail::parse_double(fields[2], line_number), line_number});
    }
    if (rows.empty()) throw InsufficientDataError("no usable rows in " + file);

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].date == rows[i - 1].date)
            throw ValidationError("duplicate date " + rows[i].date + " in " + file);

    DailyBarSeries bars;
    bars.dropped_rows = dropped;
    bars.dates.reserve(rows.size());
    bars.open.resize(static_cast<Eigen::Index>(rows.size()));
    bars.close.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        bars.dates.push_back(rows[i].date);
        bars.open[static_cast<Eigen::Index>(i)] = rows[i].open;
        bars.close[static_cast<Eigen::Index>(i)] = rows[i].close;
        if (!(rows[i].open > 0.0) || !(rows[i].close > 0.0))
            throw ValidationError("non-positive price on " + rows[i].date + " in " + file);
    }
    bars.validate();
    return bars;
}

void save_csv(const DailyBarSeries& bars, const std::string& file) {
    bars.validate();
    auto out = detail::open_out(file);
    out << "date,open,close\n";
    for (Eigen::Index i = 0; i < bars.size(); ++i)
        out << bars.dates[static_cast<std::size_t>(i)] << ',' << detail::fmt17(bars.open[i]) << ','
            << detail::fmt17(bars.close[i]) << '\n';
}

const Eigen::ArrayXd& column(const DailyBarSeries& bars, const std::string& name) {
    if (name == "open") return bars.open;
    if (name == "close") return bars.close;
    throw ValidationError("unknown column '" + name + "' (use 'open' or 'close')");
}

Eigen::ArrayXd ratio_series(const Eigen::ArrayXd& prices) {
    if (prices.size() < 2) throw InsufficientDataError("ratio_series: need at least 2 prices");
    if ((prices <= 0.0).any()) throw ValidationError("ratio_series: prices must be > 0");
    return prices.tail(prices.size() - 1) / prices.head(prices.size() - 1);
}

Eigen::ArrayXd pct_change(const Eigen::ArrayXd& prices) {
    if (prices.size() < 2) throw InsufficientDataError("pct_change: need at least 2 prices");
    if ((prices <= 0.0).any()) throw ValidationError("pct_change: prices must be > 0");
    return prices.tail(prices.size() - 1) / prices.head(prices.size() - 1) - 1.0;
}

DailyBarSeries CsvFileProvider::fetch(const DailyBarRequest& request) {
    DailyBarSeries all = load_csv(directory_ + "/" + request.symbol + ".csv");
    DailyBarSeries out;
    out.dropped_rows = all.dropped_rows;
    std::vector<double> open;
    std::vector<double> close;
    for (std::size_t i = 0; i < all.dates.size(); ++i) {
        const std::string& d = all.dates[i];
        if (!request.start_date.empty() && d < request.start_date) continue;
        if (!request.end_date.empty() && d > request.end_date) continue;
        out.dates.push_back(d);
        open.push_back(all.open[static_cast<Eigen::Index>(i)]);
        close.push_back(all.close[static_cast<Eigen::Index>(i)]);
    }
    if (out.dates.empty())
        throw InsufficientDataError("no rows in requested date range for " + request.symbol);
    out.open = Eigen::Map<const Eigen::ArrayXd>(open.data(), static_cast<Eigen::Index>(open.size()));
    out.close =
        Eigen::Map<const Eigen::ArrayXd>(close.data(), static_cast<Eigen::Index>(close.size()));
    return out;
}

}  // namespace meanrev
