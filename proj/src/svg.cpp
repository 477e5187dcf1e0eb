#include "meanrev/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csv_util.hpp"
#include "meanrev/errors.hpp"

namespace meanrev {

namespace {

constexpr int kWidth = 900;
constexpr int kHeight = 540;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 50;
constexpr int kMarginBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string fmt_tick(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_line_chart(const std::string& file, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series) {
    if (series.empty()) throw ValidationError("write_line_chart: no series");
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw ValidationError("write_line_chart: series '" + s.name + "' x/y length mismatch");
        if (s.x.size() == 0)
            throw ValidationError("write_line_chart: series '" + s.name + "' is empty");
        x_min = std::min(x_min, s.x.minCoeff());
        x_max = std::max(x_max, s.x.maxCoeff());
        y_min = std::min(y_min, s.y.minCoeff());
        y_max = std::max(y_max, s.y.maxCoeff());
    }
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
        !std::isfinite(y_max))
        throw ValidationError("write_line_chart: non-finite data");
    if (x_max == x_min) { x_min -= 0.5; x_max += 0.5; }
    if (y_max == y_min) { y_min -= 0.5; y_max += 0.5; }
    // 5% headroom on y so lines do not sit on the frame.
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double y) { return kMarginTop + (y_max - y) / (y_max - y_min) * plot_h; };

    auto out = detail::open_out(file);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"18\">"
        << escape(title) << "</text>\n";

    // Axes and ticks.
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double fx = x_min + (x_max - x_min) * i / kTicks;
        const double fy = y_min + (y_max - y_min) * i / kTicks;
        const double px = sx(fx);
        const double py = sy(fy);
        out << "<line x1=\"" << px << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << px
            << "\" y2=\"" << kMarginTop + plot_h + 5 << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << kMarginTop + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(fx) << "</text>\n";
        out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kMarginLeft
            << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(fy) << "</text>\n";
    }
    out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape(x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 "
        << kMarginTop + plot_h / 2 << ")\">" << escape(y_label) << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % kPaletteSize];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (Eigen::Index i = 0; i < s.x.size(); ++i) {
            if (i) out << ' ';
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f", sx(s.x[i]), sy(s.y[i]));
            out << buf;
        }
        out << "\"/>\n";
        // Legend entry.
        const double ly = kMarginTop + 16 + 18 * static_cast<double>(k);
        out << "<line x1=\"" << kMarginLeft + plot_w - 150 << "\" y1=\"" << ly << "\" x2=\""
            << kMarginLeft + plot_w - 125 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kMarginLeft + plot_w - 120 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.name) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace meanrev
