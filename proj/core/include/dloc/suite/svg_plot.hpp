#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dloc::suite {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Standalone SVG line chart on log-log axes. Non-positive points are skipped.
std::string render_loglog_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                              const std::vector<PlotSeries>& series);

}  // namespace dloc::suite
