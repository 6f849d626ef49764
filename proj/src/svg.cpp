#include "pzg/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace pzg {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 520;
constexpr int kMarginL = 70, kMarginR = 150, kMarginT = 20, kMarginB = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double m = 0.03 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const std::string& x_label,
                       const std::string& y_label) {
    if (series.empty()) throw std::invalid_argument("render_svg: no series");
    Range xr, yr;
    for (const PlotSeries& s : series) {
        if (s.x.empty() || s.x.size() != s.y.size())
            throw std::invalid_argument("render_svg: empty or mismatched series '" + s.name + "'");
        for (double v : s.x) xr.include(v);
        for (double v : s.y) yr.include(v);
    }
    xr.pad();
    yr.pad();

    const double pw = kWidth - kMarginL - kMarginR;
    const double ph = kHeight - kMarginT - kMarginB;
    const auto px = [&](double x) { return kMarginL + pw * (x - xr.lo) / (xr.hi - xr.lo); };
    const auto py = [&](double y) { return kMarginT + ph * (1.0 - (y - yr.lo) / (yr.hi - yr.lo)); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
           "\" height=\"" + std::to_string(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<rect x=\"" + std::to_string(kMarginL) + "\" y=\"" + std::to_string(kMarginT) + "\" width=\"" +
           fmt(pw) + "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"#444\"/>\n";

    // axis ticks
    for (int k = 0; k <= 5; ++k) {
        const double fx = xr.lo + (xr.hi - xr.lo) * k / 5.0;
        const double gx = px(fx);
        out += "<line x1=\"" + fmt(gx) + "\" y1=\"" + fmt(kMarginT + ph) + "\" x2=\"" + fmt(gx) +
               "\" y2=\"" + fmt(kMarginT + ph + 5) + "\" stroke=\"#444\"/>\n";
        out += "<text x=\"" + fmt(gx) + "\" y=\"" + fmt(kMarginT + ph + 20) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + fmt(fx) + "</text>\n";
        const double fy = yr.lo + (yr.hi - yr.lo) * k / 5.0;
        const double gy = py(fy);
        out += "<line x1=\"" + fmt(kMarginL - 5) + "\" y1=\"" + fmt(gy) + "\" x2=\"" +
               std::to_string(kMarginL) + "\" y2=\"" + fmt(gy) + "\" stroke=\"#444\"/>\n";
        out += "<text x=\"" + fmt(kMarginL - 8) + "\" y=\"" + fmt(gy + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + fmt(fy) + "</text>\n";
    }
    out += "<text x=\"" + fmt(kMarginL + pw / 2) + "\" y=\"" + fmt(kHeight - 10) +
           "\" font-size=\"13\" text-anchor=\"middle\">" + x_label + "</text>\n";
    out += "<text x=\"16\" y=\"" + fmt(kMarginT + ph / 2) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           fmt(kMarginT + ph / 2) + ")\">" + y_label + "</text>\n";

    for (size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out += "<polyline fill=\"none\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.2\" points=\"";
        for (size_t k = 0; k < series[i].x.size(); ++k) {
            out += fmt(px(series[i].x[k]));
            out += ",";
            out += fmt(py(series[i].y[k]));
            out += " ";
        }
        out += "\"/>\n";
        const double ly = kMarginT + 16.0 + 18.0 * static_cast<double>(i);
        out += "<line x1=\"" + fmt(kWidth - kMarginR + 10) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" +
               fmt(kWidth - kMarginR + 34) + "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + fmt(kWidth - kMarginR + 40) + "\" y=\"" + fmt(ly) +
               "\" font-size=\"12\">" + series[i].name + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

void emit_svg(const std::vector<PlotSeries>& series, const std::string& x_label,
              const std::string& y_label, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << render_svg(series, x_label, y_label);
}

}  // namespace pzg
