#include "meanrev/state_path.hpp"

#include <cmath>
#include <vector>

#include "csv_util.hpp"

namespace meanrev {

void save_csv(const StatePath& path, const std::string& file) {
    auto out = detail::open_out(file);
    out << "t,value\n";
    for (Eigen::Index i = 0; i < path.size(); ++i)
        out << detail::fmt17(path.time(i)) << ',' << detail::fmt17(path.values[i]) << '\n';
}

StatePath load_state_path_csv(const std::string& file) {
    auto in = detail::open_in(file);
    std::string line;
    std::size_t line_number = 0;
    std::vector<double> times;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_number == 1) {
            if (line != "t,value") throw ParseError("expected header 't,value'", line_number);
            continue;
        }
        if (line.empty()) continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != 2) throw ParseError("expected 2 fields", line_number);
        times.push_back(detail::parse_double(fields[0], line_number));
        values.push_back(detail::parse_double(fields[1], line_number));
    }
    if (times.empty()) throw InsufficientDataError("state path file has no rows: " + file);

    StatePath path;
    path.t0 = times.front();
    path.dt = times.size() > 1 ? times[1] - times[0] : 1.0;
    if (times.size() > 1 && !(path.dt > 0.0))
        throw ValidationError("state path times must be strictly increasing");
    // Constant spacing within 1e-12 relative.
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double step = times[i] - times[i - 1];
        if (std::abs(step - path.dt) > 1e-12 * std::max(1.0, std::abs(path.dt)))
            throw ValidationError("state path grid is not uniform");
    }
    path.values = Eigen::Map<const Eigen::ArrayXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    return path;
}

}  // namespace meanrev
