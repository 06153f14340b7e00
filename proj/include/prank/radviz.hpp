#pragma once

// 2-D RadViz coordinates for score matrices, plus a static SVG scatter.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "prank/core.hpp"
#include "prank/dominance.hpp"
#include "prank/io.hpp"

namespace prank {

struct RadvizPoint {
  std::string algorithm_id;
  std::size_t run_index = 1;
  std::size_t level = 1;
  double x = 0.0;
  double y = 0.0;

  bool operator==(const RadvizPoint&) const = default;
};

// Anchor k sits at angle 2*pi*k/m on the unit circle.
inline std::vector<std::array<double, 2>> radviz_anchors(std::size_t m) {
  std::vector<std::array<double, 2>> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    out[k] = {std::cos(a), std::sin(a)};
  }
  return out;
}

inline std::array<double, 2> radviz_position(const std::vector<double>& weights) {
  const auto anchors = radviz_anchors(weights.size());
  double x = 0.0, y = 0.0, total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    x += weights[k] * anchors[k][0];
    y += weights[k] * anchors[k][1];
    total += weights[k];
  }
  if (total <= 0.0) return {0.0, 0.0};
  return {x / total, y / total};
}

// Column-wise min-max scaling of oriented scores: 1 is the best row, 0 the
// worst, constant columns are all 0.
inline std::vector<std::vector<double>> radviz_weights(const ScoreMatrix& matrix) {
  const std::size_t n = matrix.row_count(), m = matrix.column_count();
  std::vector<std::vector<double>> w(n, std::vector<double>(m, 0.0));
  for (std::size_t c = 0; c < m; ++c) {
    const double sign = matrix.metrics[c].orientation == Orientation::maximize ? 1.0 : -1.0;
    double lo = 0.0, hi = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double v = sign * matrix.at(r, c);
      if (r == 0 || v < lo) lo = v;
      if (r == 0 || v > hi) hi = v;
    }
    if (hi <= lo) continue;
    for (std::size_t r = 0; r < n; ++r) w[r][c] = (sign * matrix.at(r, c) - lo) / (hi - lo);
  }
  return w;
}

inline std::vector<RadvizPoint> radviz_projection(const ScoreMatrix& matrix, const NdsResult& levels) {
  if (matrix.column_count() < 3) {
    throw error(errc::too_few_metrics, "RadViz needs at least 3 metric columns, got " +
                                           std::to_string(matrix.column_count()));
  }
  if (levels.level_of.size() != matrix.row_count()) {
    throw error(errc::dimension_mismatch, "level assignment does not match the score matrix");
  }
  const auto weights = radviz_weights(matrix);
  std::vector<RadvizPoint> out;
  out.reserve(matrix.row_count());
  for (std::size_t r = 0; r < matrix.row_count(); ++r) {
    const auto [x, y] = radviz_position(weights[r]);
    out.push_back({matrix.rows[r].algorithm_id, matrix.rows[r].run_index, levels.level_of[r], x, y});
  }
  return out;
}

inline std::string radviz_csv(const std::vector<RadvizPoint>& points) {
  std::string s = "algorithm_id,run_index,level,x,y\n";
  for (const auto& p : points) {
    s += p.algorithm_id + "," + std::to_string(p.run_index) + "," + std::to_string(p.level) + "," +
         format_double(p.x) + "," + format_double(p.y) + "\n";
  }
  return s;
}

inline const std::array<const char*, 12>& level_palette() {
  static const std::array<const char*, 12> colors = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
      "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};
  return colors;
}

// Levels past the palette reuse the last colour.
inline std::string radviz_svg(const std::vector<RadvizPoint>& points, const std::vector<MetricSpec>& metrics) {
  constexpr double size = 480.0, centre = size / 2.0, radius = 200.0;
  auto coord = [&](double v, bool flip) { return format_double(flip ? centre - v * radius : centre + v * radius); };
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n";
  s += "<rect width=\"480\" height=\"480\" fill=\"white\"/>\n";
  s += "<circle cx=\"240\" cy=\"240\" r=\"200\" fill=\"none\" stroke=\"#999999\"/>\n";
  const auto anchors = radviz_anchors(metrics.size());
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    const auto x = coord(anchors[k][0], false), y = coord(anchors[k][1], true);
    s += "<circle cx=\"" + x + "\" cy=\"" + y + "\" r=\"4\" fill=\"black\"/>\n";
    s += "<text x=\"" + coord(anchors[k][0] * 1.08, false) + "\" y=\"" + coord(anchors[k][1] * 1.08, true) +
         "\" font-size=\"12\" text-anchor=\"middle\">" + metrics[k].id + "</text>\n";
  }
  const auto& palette = level_palette();
  for (const auto& p : points) {
    const auto color = palette[std::min(p.level, palette.size()) - 1];
    s += "<circle cx=\"" + coord(p.x, false) + "\" cy=\"" + coord(p.y, true) + "\" r=\"2.5\" fill=\"" + color +
         "\" fill-opacity=\"0.7\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace prank
