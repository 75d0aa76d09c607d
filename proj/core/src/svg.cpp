#include "albatch/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace albatch {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 16;
constexpr int kMarginTop = 32;
constexpr int kMarginBottom = 48;

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

struct Frame {
  double x_min, x_max, y_min, y_max;
  int width, height;
  bool log_x;

  double px(double x) const {
    const double t = log_x ? (std::log(x) - std::log(x_min)) /
                                 (std::log(x_max) - std::log(x_min))
                           : (x - x_min) / (x_max - x_min);
    return kMarginLeft + t * (width - kMarginLeft - kMarginRight);
  }
  double py(double y) const {
    const double t = (y - y_min) / (y_max - y_min);
    return height - kMarginBottom - t * (height - kMarginTop - kMarginBottom);
  }
};

void axes(std::string& out, const Frame& f, const ChartOptions& opts) {
  out += "<rect x=\"" + fmt(kMarginLeft, "%.1f") + "\" y=\"" + fmt(kMarginTop, "%.1f") +
         "\" width=\"" + fmt(f.width - kMarginLeft - kMarginRight, "%.1f") +
         "\" height=\"" + fmt(f.height - kMarginTop - kMarginBottom, "%.1f") +
         "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = f.log_x
                          ? std::exp(std::log(f.x_min) +
                                     t * (std::log(f.x_max) - std::log(f.x_min)) / 4.0)
                          : f.x_min + t * (f.x_max - f.x_min) / 4.0;
    const double yv = f.y_min + t * (f.y_max - f.y_min) / 4.0;
    out += "<text x=\"" + fmt(f.px(xv), "%.1f") + "\" y=\"" +
           fmt(f.height - kMarginBottom + 16.0, "%.1f") +
           "\" font-size=\"10\" text-anchor=\"middle\">" + fmt(xv, "%.4g") + "</text>\n";
    out += "<text x=\"" + fmt(kMarginLeft - 6.0, "%.1f") + "\" y=\"" +
           fmt(f.py(yv) + 3.0, "%.1f") +
           "\" font-size=\"10\" text-anchor=\"end\">" + fmt(yv, "%.4g") + "</text>\n";
  }
  if (!opts.title.empty()) {
    out += "<text x=\"" + fmt(f.width / 2.0, "%.1f") +
           "\" y=\"18\" font-size=\"13\" text-anchor=\"middle\">" + opts.title +
           "</text>\n";
  }
  if (!opts.x_label.empty()) {
    out += "<text x=\"" + fmt(f.width / 2.0, "%.1f") + "\" y=\"" +
           fmt(f.height - 8.0, "%.1f") + "\" font-size=\"11\" text-anchor=\"middle\">" +
           opts.x_label + "</text>\n";
  }
  if (!opts.y_label.empty()) {
    out += "<text x=\"14\" y=\"" + fmt(f.height / 2.0, "%.1f") +
           "\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
           fmt(f.height / 2.0, "%.1f") + ")\">" + opts.y_label + "</text>\n";
  }
}

std::string svg_open(int width, int height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
         std::to_string(width) + " " + std::to_string(height) +
         "\" font-family=\"sans-serif\">\n";
}

}  // namespace

std::string render_line_chart(const std::vector<Series>& series,
                              const ChartOptions& opts) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min, y_min = x_min, y_max = -x_min;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double half = i < s.band.size() ? s.band[i] : 0.0;
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i] - half);
      y_max = std::max(y_max, s.y[i] + half);
    }
  }
  if (!(x_min < x_max)) x_max = x_min + 1.0;
  if (!(y_min < y_max)) y_max = y_min + 1.0;
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  Frame f{x_min, x_max, y_min, y_max, opts.width, opts.height, opts.log_x};
  std::string out = svg_open(opts.width, opts.height);
  axes(out, f, opts);

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % kPaletteSize];
    if (!s.band.empty()) {
      std::string pts;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        pts += fmt(f.px(s.x[i]), "%.2f") + "," + fmt(f.py(s.y[i] + s.band[i]), "%.2f") + " ";
      }
      for (std::size_t i = s.x.size(); i-- > 0;) {
        pts += fmt(f.px(s.x[i]), "%.2f") + "," + fmt(f.py(s.y[i] - s.band[i]), "%.2f") + " ";
      }
      out += "<polygon points=\"" + pts + "\" fill=\"" + color +
             "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (opts.step && i > 0) {
        pts += fmt(f.px(s.x[i]), "%.2f") + "," + fmt(f.py(s.y[i - 1]), "%.2f") + " ";
      }
      pts += fmt(f.px(s.x[i]), "%.2f") + "," + fmt(f.py(s.y[i]), "%.2f") + " ";
    }
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
    // Legend entry.
    const double ly = kMarginTop + 14.0 * static_cast<double>(si) + 10.0;
    out += "<rect x=\"" + fmt(kMarginLeft + 8.0, "%.1f") + "\" y=\"" + fmt(ly - 8.0, "%.1f") +
           "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
    out += "<text x=\"" + fmt(kMarginLeft + 22.0, "%.1f") + "\" y=\"" + fmt(ly, "%.1f") +
           "\" font-size=\"10\">" + s.label + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_bar_chart(const std::vector<std::string>& labels,
                             const std::vector<double>& values,
                             const ChartOptions& opts) {
  double y_max = 0.0;
  for (double v : values) y_max = std::max(y_max, v);
  if (y_max <= 0.0) y_max = 1.0;
  Frame f{0.0, 1.0, 0.0, 1.05 * y_max, opts.width, opts.height, false};
  std::string out = svg_open(opts.width, opts.height);
  axes(out, f, opts);

  const double plot_w = opts.width - kMarginLeft - kMarginRight;
  const std::size_t n = values.size();
  const double slot = plot_w / static_cast<double>(n == 0 ? 1 : n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = kMarginLeft + slot * (static_cast<double>(i) + 0.2);
    const double w = slot * 0.6;
    const double y = f.py(values[i]);
    const double base = f.py(0.0);
    out += "<rect x=\"" + fmt(x, "%.2f") + "\" y=\"" + fmt(y, "%.2f") + "\" width=\"" +
           fmt(w, "%.2f") + "\" height=\"" + fmt(base - y, "%.2f") + "\" fill=\"" +
           kPalette[i % kPaletteSize] + "\"/>\n";
    out += "<text x=\"" + fmt(x + w / 2.0, "%.2f") + "\" y=\"" +
           fmt(base + 14.0, "%.2f") + "\" font-size=\"9\" text-anchor=\"middle\">" +
           labels[i] + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace albatch
