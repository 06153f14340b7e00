#pragma once

// Pareto dominance, the counting epsilon-dominance relation, and
// non-dominated sorting. All relations assume minimization.

#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "prank/core.hpp"

namespace prank {

enum class Relation { pareto, epsilon };

inline std::string_view to_string(Relation r) noexcept {
  return r == Relation::pareto ? "pareto" : "epsilon";
}

// x_i <= y_i everywhere and x_j < y_j somewhere.
inline bool dominates(std::span<const double> x, std::span<const double> y) {
  detail::require_dimension(x.size(), y.size(), "dominates");
  bool strictly_better = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) return false;
    if (x[i] < y[i]) strictly_better = true;
  }
  return strictly_better;
}

// Dominates or equal.
inline bool weakly_dominates(std::span<const double> x, std::span<const double> y) {
  detail::require_dimension(x.size(), y.size(), "weakly_dominates");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) return false;
  }
  return true;
}

// x wins more coordinates than it loses, and has strictly smaller Euclidean norm.
inline bool epsilon_dominates(std::span<const double> x, std::span<const double> y) {
  detail::require_dimension(x.size(), y.size(), "epsilon_dominates");
  int better = 0;
  int worse = 0;
  double norm_x = 0.0;
  double norm_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) ++better;
    if (x[i] > y[i]) ++worse;
    norm_x += x[i] * x[i];
    norm_y += y[i] * y[i];
  }
  return better - worse > 0 && std::sqrt(norm_x) < std::sqrt(norm_y);
}

inline bool related(Relation relation, std::span<const double> x, std::span<const double> y) {
  return relation == Relation::pareto ? dominates(x, y) : epsilon_dominates(x, y);
}

struct NdsResult {
  // 1-based level per input point.
  std::vector<std::size_t> level_of;
  std::size_t level_count = 0;

  bool operator==(const NdsResult&) const = default;
};

namespace detail {

inline void check_uniform(const std::vector<ObjectiveVector>& points) {
  if (points.empty()) throw error(errc::empty_input, "non-dominated sort of an empty set");
  const std::size_t m = points.front().size();
  for (const auto& p : points) require_dimension(m, p.size(), "nds");
}

// Fast non-dominated sort: domination counts plus dominated-by lists.
inline NdsResult fast_nds(const std::vector<ObjectiveVector>& points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> counter(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(points[i], points[j])) {
        dominated[i].push_back(j);
        ++counter[j];
      } else if (dominates(points[j], points[i])) {
        dominated[j].push_back(i);
        ++counter[i];
      }
    }
  }
  NdsResult result{std::vector<std::size_t>(n, 0), 0};
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (counter[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    ++result.level_count;
    std::vector<std::size_t> next;
    for (auto i : current) {
      result.level_of[i] = result.level_count;
      for (auto j : dominated[i]) {
        if (--counter[j] == 0) next.push_back(j);
      }
    }
    current = std::move(next);
  }
  return result;
}

// Peel-off: each level is the set of remaining points not related-to by any
// other remaining point. Well defined for non-transitive relations; the
// epsilon relation requires a strictly smaller norm, so it has no cycles and
// every round removes at least one point.
inline NdsResult peel_nds(const std::vector<ObjectiveVector>& points, Relation relation) {
  const std::size_t n = points.size();
  NdsResult result{std::vector<std::size_t>(n, 0), 0};
  std::vector<std::size_t> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = i;
  while (!remaining.empty()) {
    ++result.level_count;
    std::vector<std::size_t> keep;
    std::vector<std::size_t> layer;
    for (auto i : remaining) {
      bool beaten = false;
      for (auto j : remaining) {
        if (j != i && related(relation, points[j], points[i])) {
          beaten = true;
          break;
        }
      }
      (beaten ? keep : layer).push_back(i);
    }
    for (auto i : layer) result.level_of[i] = result.level_count;
    remaining = std::move(keep);
  }
  return result;
}

}  // namespace detail

inline NdsResult nds(const std::vector<ObjectiveVector>& points, Relation relation = Relation::pareto) {
  detail::check_uniform(points);
  return relation == Relation::pareto ? detail::fast_nds(points) : detail::peel_nds(points, relation);
}

}  // namespace prank
