#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "meanrev/errors.hpp"

namespace meanrev {

// Daily open/close bars with strictly ascending unique ISO-8601 dates and
// strictly positive prices.
struct DailyBarSeries {
    std::vector<std::string> dates;
    Eigen::ArrayXd open;
    Eigen::ArrayXd close;
    std::size_t dropped_rows = 0;  // rows removed by missing-value handling at load

    Eigen::Index size() const { return open.size(); }
    void validate() const;
};

// CSV format (bit-exact): header "date,open,close"; ISO-8601 dates; decimal
// prices; UTF-8; LF line endings. Rows with a missing open or close are
// dropped (the drop count is recorded on the result); remaining rows are
// sorted by date. Malformed rows raise ParseError with the line number;
// duplicate dates raise ValidationError; an empty result raises
// InsufficientDataError.
DailyBarSeries load_csv(const std::string& file);

// 17 significant digits so that write -> read is an exact round trip.
void save_csv(const DailyBarSeries& bars, const std::string& file);

// Select "open" or "close".
const Eigen::ArrayXd& column(const DailyBarSeries& bars, const std::string& name);

// Q_i = prices[i+1] / prices[i]; requires length >= 2 and positive prices.
Eigen::ArrayXd ratio_series(const Eigen::ArrayXd& prices);

// prices[i+1] / prices[i] - 1; same preconditions.
Eigen::ArrayXd pct_change(const Eigen::ArrayXd& prices);

// Provider abstraction for daily-bar sources. Only the CSV-file provider is
// implemented; remote sources would implement the same interface.
struct DailyBarRequest {
    std::string symbol;
    std::string start_date;  // inclusive, ISO-8601; empty = unbounded
    std::string end_date;    // inclusive, ISO-8601; empty = unbounded
};

class DailyBarProvider {
  public:
    virtual ~DailyBarProvider() = default;
    virtual DailyBarSeries fetch(const DailyBarRequest& request) = 0;
};

// Serves <directory>/<symbol>.csv filtered to the requested date range.
class CsvFileProvider : public DailyBarProvider {
  public:
    explicit CsvFileProvider(std::string directory) : directory_(std::move(directory)) {}
    DailyBarSeries fetch(const DailyBarRequest& request) override;

  private:
    std::string directory_;
};

}  // namespace meanrev
