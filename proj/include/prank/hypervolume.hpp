#pragma once

// Hypervolume of a point set relative to a reference point (minimization).
//
// Exact computation uses the WFG recursion: the volume of a set is the sum
// of the exclusive contributions of its points, and the exclusive
// contribution of p is its box minus the volume of the remaining points
// clipped ("limited") to p's box. Two dimensions use a direct sweep.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "prank/core.hpp"
#include "prank/dominance.hpp"
#include "prank/random.hpp"

namespace prank {

namespace detail {

// Keeps the points strictly inside the reference box.
inline std::vector<ObjectiveVector> clip_to_reference(const std::vector<ObjectiveVector>& points,
                                                      const ObjectiveVector& ref) {
  std::vector<ObjectiveVector> out;
  for (const auto& p : points) {
    require_dimension(ref.size(), p.size(), "hypervolume");
    bool inside = true;
    for (std::size_t i = 0; i < p.size(); ++i) inside = inside && p[i] < ref[i];
    if (inside) out.push_back(p);
  }
  return out;
}

// Non-dominated subset with duplicates collapsed.
inline std::vector<ObjectiveVector> nondominated_unique(std::vector<ObjectiveVector> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<ObjectiveVector> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      dominated = j != i && dominates(points[j], points[i]);
    }
    if (!dominated) out.push_back(points[i]);
  }
  return out;
}

inline double box_volume(const ObjectiveVector& p, const ObjectiveVector& ref) {
  double v = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) v *= ref[i] - p[i];
  return v;
}

inline double sweep_2d(std::vector<ObjectiveVector> points, const ObjectiveVector& ref) {
  std::sort(points.begin(), points.end());
  double volume = 0.0;
  double ceiling = ref[1];
  for (const auto& p : points) {
    if (p[1] < ceiling) {
      volume += (ref[0] - p[0]) * (ceiling - p[1]);
      ceiling = p[1];
    }
  }
  return volume;
}

// Points must be mutually non-dominated and strictly inside the box.
inline double wfg(std::vector<ObjectiveVector> points, const ObjectiveVector& ref) {
  if (points.empty()) return 0.0;
  if (points.size() == 1) return box_volume(points.front(), ref);
  const std::size_t m = ref.size();
  if (m == 1) return ref[0] - points.front()[0];
  if (m == 2) return sweep_2d(std::move(points), ref);

  // Ordering by the last objective (worst first) keeps limit sets small.
  std::sort(points.begin(), points.end(),
            [](const ObjectiveVector& a, const ObjectiveVector& b) { return a.back() > b.back(); });
  double volume = 0.0;
  std::vector<ObjectiveVector> limited;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points[k];
    limited.clear();
    for (std::size_t j = k + 1; j < points.size(); ++j) {
      ObjectiveVector q(m);
      for (std::size_t i = 0; i < m; ++i) q[i] = std::max(p[i], points[j][i]);
      limited.push_back(std::move(q));
    }
    volume += box_volume(p, ref) - wfg(nondominated_unique(limited), ref);
  }
  return volume;
}

}  // namespace detail

inline double hypervolume_exact(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ref) {
  return detail::wfg(detail::nondominated_unique(detail::clip_to_reference(points, ref)), ref);
}

// Monte-Carlo estimate: fraction of uniform samples in the sampling box that
// are weakly dominated by some point, times the box volume. The box is
// [lower, ref] with lower = min(0, smallest coordinate), i.e. [0, ref] for
// points inside the normalized box.
inline double hypervolume_monte_carlo(const std::vector<ObjectiveVector>& points,
                                      const ObjectiveVector& ref, std::size_t samples,
                                      std::uint64_t seed) {
  if (samples == 0) throw error(errc::invalid_parameter, "hv_samples must be positive");
  const auto front = detail::nondominated_unique(detail::clip_to_reference(points, ref));
  if (front.empty()) return 0.0;
  const std::size_t m = ref.size();
  ObjectiveVector lower(m, 0.0);
  for (const auto& p : front) {
    for (std::size_t i = 0; i < m; ++i) lower[i] = std::min(lower[i], p[i]);
  }
  Rng rng(seed);
  ObjectiveVector sample(m);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < m; ++i) sample[i] = rng.uniform(lower[i], ref[i]);
    for (const auto& p : front) {
      if (weakly_dominates(p, sample)) {
        ++hits;
        break;
      }
    }
  }
  return detail::box_volume(lower, ref) * static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace prank
