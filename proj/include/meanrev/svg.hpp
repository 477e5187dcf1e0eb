#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace meanrev {

struct SvgSeries {
    std::string name;
    Eigen::ArrayXd x;
    Eigen::ArrayXd y;
};

// Minimal static SVG 1.1 line chart: axes with tick labels, one polyline per
// series, a small legend, and a caption. Enough to eyeball a result; not a
// plotting library.
void write_line_chart(const std::string& file, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series);

}  // namespace meanrev
