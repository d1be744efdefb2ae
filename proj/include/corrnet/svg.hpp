#pragma once

// Native SVG heatmap rendering: one rect per cell, blue->green->red linear
// ramp over [min, cap], optional white-above threshold, numeric legend.
// Output bytes are a pure function of the inputs.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corrnet/common.hpp"
#include "corrnet/matrix.hpp"
#include "corrnet/text.hpp"

namespace corrnet {

struct HeatmapOptions {
  std::optional<double> white_above;  // cells strictly above render white
  int cell = 0;                       // pixel size per cell; 0 = auto
  std::string title;
  // Tick positions (cell index) and texts; when empty, labels are thinned
  // automatically from the full label lists.
  std::vector<std::pair<std::size_t, std::string>> row_ticks;
  std::vector<std::pair<std::size_t, std::string>> col_ticks;
};

namespace detail {

inline std::string hex_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  int r, g, b;
  if (t < 0.5) {  // blue -> green
    double u = t * 2.0;
    r = 0;
    g = static_cast<int>(std::lround(255.0 * u));
    b = static_cast<int>(std::lround(255.0 * (1.0 - u)));
  } else {  // green -> red
    double u = t * 2.0 - 1.0;
    r = static_cast<int>(std::lround(255.0 * u));
    g = static_cast<int>(std::lround(255.0 * (1.0 - u)));
    b = 0;
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::vector<std::pair<std::size_t, std::string>> thin_ticks(
    const std::vector<std::string>& labels) {
  std::vector<std::pair<std::size_t, std::string>> ticks;
  if (labels.empty()) return ticks;
  std::size_t stride = (labels.size() + 47) / 48;
  for (std::size_t i = 0; i < labels.size(); i += stride)
    ticks.emplace_back(i, labels[i]);
  return ticks;
}

}  // namespace detail

inline std::string render_heatmap(const Matrix& values,
                                  const std::vector<std::string>& row_labels,
                                  const std::vector<std::string>& col_labels,
                                  const HeatmapOptions& opt = {}) {
  const std::size_t rows = values.rows(), cols = values.cols();
  if (rows == 0 || cols == 0) throw InputError("render_heatmap: empty matrix");
  if (row_labels.size() != rows || col_labels.size() != cols)
    throw InputError("render_heatmap: label count mismatch");
  double vmin = values(0, 0), vmax = values(0, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      double v = values(i, j);
      if (!std::isfinite(v))
        throw InputError("render_heatmap: non-finite value at (" +
                         std::to_string(i) + "," + std::to_string(j) + ")");
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }

  const double cap = opt.white_above ? *opt.white_above : vmax;
  const double span = cap - vmin;

  int cell = opt.cell;
  if (cell <= 0) {
    std::size_t longest = std::max(rows, cols);
    cell = longest <= 64 ? 16 : longest <= 200 ? 6 : 3;
  }

  const int margin_left = 64, margin_top = opt.title.empty() ? 12 : 32;
  const int margin_right = 16, label_band = 56, legend_band = 56;
  const int grid_w = cell * static_cast<int>(cols);
  const int grid_h = cell * static_cast<int>(rows);
  const int width = margin_left + grid_w + margin_right;
  const int height = margin_top + grid_h + label_band + legend_band;

  auto row_ticks = opt.row_ticks.empty() ? detail::thin_ticks(row_labels) : opt.row_ticks;
  auto col_ticks = opt.col_ticks.empty() ? detail::thin_ticks(col_labels) : opt.col_ticks;

  std::string svg;
  svg.reserve(64 * rows * cols + 4096);
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" font-family=\"monospace\" font-size=\"10\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" fill=\"#ffffff\"/>\n";
  if (!opt.title.empty())
    svg += "<text x=\"" + std::to_string(margin_left) +
           "\" y=\"20\" font-size=\"13\">" + detail::xml_escape(opt.title) +
           "</text>\n";

  // Cells. Row 0 is drawn at the bottom so the vertical axis increases upward.
  for (std::size_t i = 0; i < rows; ++i) {
    int y = margin_top + grid_h - cell * static_cast<int>(i + 1);
    for (std::size_t j = 0; j < cols; ++j) {
      double v = values(i, j);
      std::string fill;
      if (opt.white_above && v > *opt.white_above) {
        fill = "#ffffff";
      } else {
        double t = span > 0.0 ? (v - vmin) / span : 0.0;
        fill = detail::hex_color(t);
      }
      int x = margin_left + cell * static_cast<int>(j);
      svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
             "\" width=\"" + std::to_string(cell) + "\" height=\"" +
             std::to_string(cell) + "\" fill=\"" + fill + "\"/>\n";
    }
  }

  for (const auto& [idx, text] : row_ticks) {
    if (idx >= rows) throw InputError("render_heatmap: row tick out of range");
    int y = margin_top + grid_h - cell * static_cast<int>(idx) - cell / 2 + 3;
    svg += "<text x=\"" + std::to_string(margin_left - 6) + "\" y=\"" +
           std::to_string(y) + "\" text-anchor=\"end\">" +
           detail::xml_escape(text) + "</text>\n";
  }
  for (const auto& [idx, text] : col_ticks) {
    if (idx >= cols) throw InputError("render_heatmap: column tick out of range");
    int x = margin_left + cell * static_cast<int>(idx) + cell / 2;
    int y = margin_top + grid_h + 8;
    svg += "<text x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
           "\" text-anchor=\"end\" transform=\"rotate(-90 " + std::to_string(x) +
           " " + std::to_string(y) + ")\">" + detail::xml_escape(text) +
           "</text>\n";
  }

  // Legend: 100-strip gradient bar with numeric endpoints.
  const int legend_y = margin_top + grid_h + label_band;
  const int legend_w = std::min(grid_w, 300);
  for (int k = 0; k < 100; ++k) {
    int x0 = margin_left + k * legend_w / 100;
    int x1 = margin_left + (k + 1) * legend_w / 100;
    svg += "<rect x=\"" + std::to_string(x0) + "\" y=\"" +
           std::to_string(legend_y) + "\" width=\"" + std::to_string(x1 - x0) +
           "\" height=\"12\" fill=\"" + detail::hex_color((k + 0.5) / 100.0) +
           "\"/>\n";
  }
  svg += "<text x=\"" + std::to_string(margin_left) + "\" y=\"" +
         std::to_string(legend_y + 26) + "\">" + fmt_double(vmin) + "</text>\n";
  svg += "<text x=\"" + std::to_string(margin_left + legend_w) + "\" y=\"" +
         std::to_string(legend_y + 26) + "\" text-anchor=\"end\">" +
         fmt_double(cap) + "</text>\n";
  if (opt.white_above)
    svg += "<text x=\"" + std::to_string(margin_left + legend_w + 12) +
           "\" y=\"" + std::to_string(legend_y + 10) + "\">&gt; " +
           fmt_double(*opt.white_above) + " = white</text>\n";

  svg += "</svg>\n";
  return svg;
}

}  // namespace corrnet
