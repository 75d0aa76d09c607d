// Minimal deterministic SVG charts: identical inputs yield identical bytes.
#pragma once

#include <string>
#include <vector>

namespace albatch {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  // Optional symmetric band half-width per point (e.g. std); empty = none.
  std::vector<double> band;
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 640;
  int height = 420;
  bool step = false;       // right-continuous steps between points
  bool log_x = false;
};

std::string render_line_chart(const std::vector<Series>& series, const ChartOptions& opts);

std::string render_bar_chart(const std::vector<std::string>& labels,
                             const std::vector<double>& values, const ChartOptions& opts);

}  // namespace albatch
