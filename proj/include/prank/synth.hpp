#pragma once

// Synthetic approximation fronts on closed-form unit geometries, with
// controllable convergence and spread defects.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prank/aggregation.hpp"
#include "prank/core.hpp"
#include "prank/random.hpp"

namespace prank {

enum class Geometry { linear, concave, convex };

inline std::string_view to_string(Geometry g) noexcept {
  switch (g) {
    case Geometry::linear: return "linear";
    case Geometry::concave: return "concave";
    case Geometry::convex: return "convex";
  }
  return "unknown";
}

inline std::optional<Geometry> parse_geometry(std::string_view name) {
  for (auto g : {Geometry::linear, Geometry::concave, Geometry::convex}) {
    if (to_string(g) == name) return g;
  }
  return std::nullopt;
}

namespace detail {

// Point on the front for simplex weights w (sum 1, non-negative).
inline ObjectiveVector geometry_point(Geometry geometry, const ObjectiveVector& w) {
  ObjectiveVector f = w;
  if (geometry != Geometry::linear) {
    double norm = 0.0;
    for (double v : w) norm += v * v;
    norm = std::sqrt(norm);
    for (auto& v : f) v /= norm;
    if (geometry == Geometry::convex) {
      for (auto& v : f) v = 1.0 - v;
    }
  }
  for (auto& v : f) v = std::clamp(v, 0.0, 1.0);
  return f;
}

inline void check_generator_parameters(std::size_t m, std::size_t n, double noise, double deficit) {
  if (m < 2) throw error(errc::invalid_parameter, "synthetic fronts need at least 2 objectives");
  if (n < 1) throw error(errc::invalid_parameter, "synthetic fronts need at least 1 point");
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw error(errc::invalid_parameter, "convergence_noise must be finite and non-negative");
  }
  if (!(deficit >= 0.0 && deficit <= 1.0)) throw error(errc::invalid_parameter, "spread_deficit must lie in [0, 1]");
}

}  // namespace detail

// Samples simplex weights uniformly, contracts them toward the simplex
// centre by (1 - spread_deficit), maps them onto the geometry and pushes each
// point outward along its own direction by convergence_noise * U(0, 1).
// Linear is the unit simplex, concave the unit-sphere octant, convex the
// sphere octant reflected through (1, ..., 1).
inline Front generate_front(Geometry geometry, std::size_t objectives, std::size_t n_points,
                            double convergence_noise, double spread_deficit, std::uint64_t seed) {
  detail::check_generator_parameters(objectives, n_points, convergence_noise, spread_deficit);
  Rng rng(seed);
  const double centre = 1.0 / static_cast<double>(objectives);
  const double keep = 1.0 - spread_deficit;
  Front front;
  front.points.reserve(n_points);
  ObjectiveVector w(objectives);
  for (std::size_t k = 0; k < n_points; ++k) {
    double sum = 0.0;
    for (auto& v : w) sum += (v = rng.exponential());
    for (auto& v : w) v = centre + keep * (v / sum - centre);
    ObjectiveVector f = detail::geometry_point(geometry, w);
    const double push = convergence_noise * rng.uniform();
    if (push > 0.0) {
      double norm = 0.0;
      for (double v : f) norm += v * v;
      norm = std::sqrt(norm);
      for (auto& v : f) v += push * v / norm;
    }
    front.points.push_back(std::move(f));
  }
  return front;
}

// Noise-free sample of the geometry with the analytic unit bounds.
inline ReferenceSet generate_reference(Geometry geometry, std::size_t objectives, std::size_t n_points,
                                       std::uint64_t seed) {
  ReferenceSet ref;
  ref.points = generate_front(geometry, objectives, n_points, 0.0, 0.0, seed).points;
  ref.ideal.assign(objectives, 0.0);
  ref.nadir.assign(objectives, 1.0);
  if (n_points == 1) ref.notes.push_back("singleton_reference");
  return ref;
}

struct SyntheticAlgorithm {
  std::string id;
  double convergence_noise = 0.0;
  double spread_deficit = 0.0;
};

struct SyntheticProblem {
  std::string id;
  Geometry geometry = Geometry::linear;
};

struct SyntheticStudySpec {
  std::vector<SyntheticAlgorithm> algorithms;
  std::vector<SyntheticProblem> problems;
  std::vector<std::size_t> objective_counts;
  std::size_t runs = 20;
  std::size_t points_per_front = 50;
  std::size_t reference_points = 500;
  std::uint64_t seed = 1;
};

inline Study make_synthetic_study(const SyntheticStudySpec& spec) {
  Study study;
  for (const auto& a : spec.algorithms) study.layout.algorithms.push_back(a.id);
  for (const auto& p : spec.problems) study.layout.problems.push_back(p.id);
  study.layout.objective_counts = spec.objective_counts;
  study.layout.runs = spec.runs;
  for (auto m : spec.objective_counts) {
    for (const auto& problem : spec.problems) {
      const CellKey key{problem.id, m};
      study.references[key] = generate_reference(problem.geometry, m, spec.reference_points,
                                                 substream_seed(spec.seed, "reference", problem.id, m));
      auto& fronts = study.fronts[key];
      for (const auto& algorithm : spec.algorithms) {
        for (std::size_t run = 1; run <= spec.runs; ++run) {
          Front f = generate_front(problem.geometry, m, spec.points_per_front, algorithm.convergence_noise,
                                   algorithm.spread_deficit,
                                   substream_seed(spec.seed, "front", algorithm.id, problem.id, m, run));
          f.algorithm_id = algorithm.id;
          f.problem_id = problem.id;
          f.run_index = run;
          fronts.push_back(std::move(f));
        }
      }
    }
  }
  return study;
}

// Three algorithms of increasing convergence noise on one problem per geometry.
inline SyntheticStudySpec demo_study_spec() {
  SyntheticStudySpec spec;
  spec.algorithms = {{"clean", 0.0, 0.0}, {"noisy", 0.3, 0.0}, {"noisier", 0.6, 0.0}};
  spec.problems = {{"lin", Geometry::linear}, {"cav", Geometry::concave}, {"vex", Geometry::convex}};
  spec.objective_counts = {3, 5};
  spec.runs = 20;
  spec.points_per_front = 50;
  spec.reference_points = 500;
  return spec;
}

}  // namespace prank
