#include "lqrl/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "lqrl/errors.hpp"

namespace lqrl {

namespace {

constexpr double kWidth = 860.0;
constexpr double kPanelHeight = 210.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 32.0;
constexpr double kMarginBottom = 34.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Series {
    const std::vector<double>* y;
    const char* label;
    const char* color;
};

struct Range {
    double lo, hi;
    double span() const { return hi - lo; }
};

Range fit_range(const std::vector<const std::vector<double>*>& columns) {
    double lo = columns.front()->front();
    double hi = lo;
    for (const auto* col : columns) {
        for (double v : *col) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(hi > lo)) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    return Range{lo - pad, hi + pad};
}

void render_panel(std::ostringstream& out, double top, const TrajectoryLog& log,
                  const std::vector<Series>& series, const char* title,
                  const char* y_label) {
    const double plot_left = kMarginLeft;
    const double plot_right = kWidth - kMarginRight;
    const double plot_top = top + kMarginTop;
    const double plot_bottom = top + kPanelHeight - kMarginBottom;

    std::vector<const std::vector<double>*> columns;
    for (const Series& s : series) columns.push_back(s.y);
    const Range yr = fit_range(columns);
    const Range xr{log.t.front(), log.t.back() > log.t.front() ? log.t.back()
                                                               : log.t.front() + 1.0};

    const auto sx = [&](double t) {
        return plot_left + (t - xr.lo) / xr.span() * (plot_right - plot_left);
    };
    const auto sy = [&](double v) {
        return plot_bottom - (v - yr.lo) / yr.span() * (plot_bottom - plot_top);
    };

    out << "  <text x=\"" << fmt(plot_left) << "\" y=\"" << fmt(top + 20.0)
        << "\" font-size=\"14\" font-family=\"sans-serif\">" << title << "</text>\n";
    // Axis frame.
    out << "  <line x1=\"" << fmt(plot_left) << "\" y1=\"" << fmt(plot_top)
        << "\" x2=\"" << fmt(plot_left) << "\" y2=\"" << fmt(plot_bottom)
        << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    out << "  <line x1=\"" << fmt(plot_left) << "\" y1=\"" << fmt(plot_bottom)
        << "\" x2=\"" << fmt(plot_right) << "\" y2=\"" << fmt(plot_bottom)
        << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    // Extremal tick labels.
    out << "  <text x=\"" << fmt(plot_left - 6.0) << "\" y=\"" << fmt(plot_bottom)
        << "\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"end\">"
        << fmt_label(yr.lo) << "</text>\n";
    out << "  <text x=\"" << fmt(plot_left - 6.0) << "\" y=\"" << fmt(plot_top + 4.0)
        << "\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"end\">"
        << fmt_label(yr.hi) << "</text>\n";
    out << "  <text x=\"" << fmt(plot_left) << "\" y=\"" << fmt(plot_bottom + 16.0)
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << fmt_label(xr.lo)
        << "</text>\n";
    out << "  <text x=\"" << fmt(plot_right) << "\" y=\"" << fmt(plot_bottom + 16.0)
        << "\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"end\">"
        << fmt_label(xr.hi) << " s</text>\n";
    out << "  <text x=\"14\" y=\"" << fmt((plot_top + plot_bottom) / 2.0)
        << "\" font-size=\"11\" font-family=\"sans-serif\" transform=\"rotate(-90 14 "
        << fmt((plot_top + plot_bottom) / 2.0) << ")\" text-anchor=\"middle\">" << y_label
        << "</text>\n";

    double legend_x = plot_left + 10.0;
    for (const Series& s : series) {
        out << "  <polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < log.size(); ++i) {
            if (i != 0) out << ' ';
            out << fmt(sx(log.t[i])) << ',' << fmt(sy((*s.y)[i]));
        }
        out << "\"/>\n";
        out << "  <text x=\"" << fmt(legend_x) << "\" y=\"" << fmt(plot_top + 14.0)
            << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"" << s.color << "\">"
            << s.label << "</text>\n";
        legend_x += 70.0;
    }
}

}  // namespace

std::string render_trajectory_svg(const TrajectoryLog& log) {
    log.validate();
    if (log.empty()) throw ConfigError("svg: empty trajectory");

    const double height = 3.0 * kPanelHeight;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth)
        << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' '
        << fmt(height) << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    render_panel(out, 0.0, log, {{&log.z, "z", "#1f77b4"}}, "Spacing error z(t)", "m");
    render_panel(out, kPanelHeight, log,
                 {{&log.v_r, "v_r", "#d62728"}, {&log.v_e, "v_e", "#2ca02c"}},
                 "Velocities v_r(t), v_e(t)", "m/s");
    render_panel(out, 2.0 * kPanelHeight, log, {{&log.vdot, "dV/dt", "#9467bd"}},
                 "Lyapunov derivative dV/dt", "1/s");

    out << "</svg>\n";
    return out.str();
}

void write_trajectory_svg(const TrajectoryLog& log, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("svg: cannot open '" + path.string() + "' for writing");
    out << render_trajectory_svg(log);
    if (!out) throw IoError("svg: write failed for '" + path.string() + "'");
}

}  // namespace lqrl
