#pragma once

#include <string>
#include <vector>

#include "pzg/linalg.hpp"

namespace pzg {

struct PlotSeries {
    std::string name;
    std::vector<double> x, y;
};

// Standalone SVG line chart: one polyline per series, linear axes, legend.
// Output is byte-deterministic for identical input.
std::string render_svg(const std::vector<PlotSeries>& series, const std::string& x_label,
                       const std::string& y_label);
void emit_svg(const std::vector<PlotSeries>& series, const std::string& x_label,
              const std::string& y_label, const std::string& path);

}  // namespace pzg
