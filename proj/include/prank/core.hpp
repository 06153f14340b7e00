#pragma once

// Domain types shared by every part of the ranking pipeline.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prank {

enum class errc {
  non_finite_value,
  dimension_mismatch,
  empty_front,
  empty_input,
  degenerate_range,
  too_few_points,
  too_few_reference_points,
  missing_competitors,
  missing_run,
  missing_reference,
  grid_incomplete,
  algorithm_set_mismatch,
  missing_cell,
  invalid_parameter,
  unknown_metric,
  too_few_metrics,
  parse_error,
  io_error,
};

inline std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::non_finite_value: return "NonFiniteValue";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::empty_front: return "EmptyFront";
    case errc::empty_input: return "EmptyInput";
    case errc::degenerate_range: return "DegenerateRange";
    case errc::too_few_points: return "TooFewPoints";
    case errc::too_few_reference_points: return "TooFewReferencePoints";
    case errc::missing_competitors: return "MissingCompetitors";
    case errc::missing_run: return "MissingRun";
    case errc::missing_reference: return "MissingReference";
    case errc::grid_incomplete: return "GridIncomplete";
    case errc::algorithm_set_mismatch: return "AlgorithmSetMismatch";
    case errc::missing_cell: return "MissingCell";
    case errc::invalid_parameter: return "InvalidParameter";
    case errc::unknown_metric: return "UnknownMetric";
    case errc::too_few_metrics: return "TooFewMetrics";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

  // Errors that come from the filesystem rather than from the data itself.
  bool is_io() const noexcept { return code_ == errc::io_error; }

 private:
  errc code_;
};

using ObjectiveVector = std::vector<double>;
using Parameters = std::map<std::string, double>;

struct Front {
  std::vector<ObjectiveVector> points;
  std::string algorithm_id;
  std::string problem_id;
  std::size_t run_index = 1;

  std::size_t objective_count() const noexcept {
    return points.empty() ? 0 : points.front().size();
  }

  bool operator==(const Front&) const = default;
};

struct ReferenceSet {
  std::vector<ObjectiveVector> points;
  ObjectiveVector ideal;
  ObjectiveVector nadir;
  // Free-form flags carried into report metadata (e.g. "union_fallback").
  std::vector<std::string> notes;

  std::size_t objective_count() const noexcept { return ideal.size(); }

  bool operator==(const ReferenceSet&) const = default;
};

enum class Orientation { maximize, minimize };

inline std::string_view to_string(Orientation o) noexcept {
  return o == Orientation::maximize ? "maximize" : "minimize";
}

struct MetricSpec {
  std::string id;
  Orientation orientation = Orientation::minimize;
  Parameters parameters;

  double parameter(const std::string& key, double fallback) const {
    auto it = parameters.find(key);
    return it == parameters.end() ? fallback : it->second;
  }

  bool operator==(const MetricSpec&) const = default;
};

inline const std::vector<std::pair<std::string_view, Orientation>>& builtin_metrics() {
  static const std::vector<std::pair<std::string_view, Orientation>> table = {
      {"HV", Orientation::maximize},     {"GD", Orientation::minimize},
      {"IGD", Orientation::minimize},    {"C", Orientation::maximize},
      {"CPF", Orientation::maximize},    {"DeltaP", Orientation::minimize},
      {"PD", Orientation::maximize},     {"SP", Orientation::minimize},
      {"OS", Orientation::maximize},     {"DM", Orientation::minimize},
  };
  return table;
}

inline std::optional<Orientation> builtin_orientation(std::string_view id) {
  for (const auto& [name, orientation] : builtin_metrics()) {
    if (name == id) return orientation;
  }
  return std::nullopt;
}

// Built-in metric with its fixed orientation; throws UnknownMetric otherwise.
inline MetricSpec builtin_metric(std::string_view id, Parameters parameters = {}) {
  auto orientation = builtin_orientation(id);
  if (!orientation) throw error(errc::unknown_metric, std::string(id));
  return MetricSpec{std::string(id), *orientation, std::move(parameters)};
}

inline std::vector<MetricSpec> all_builtin_metrics() {
  std::vector<MetricSpec> specs;
  for (const auto& entry : builtin_metrics()) specs.push_back(builtin_metric(entry.first));
  return specs;
}

struct RowKey {
  std::string algorithm_id;
  std::size_t run_index = 1;

  bool operator==(const RowKey&) const = default;
};

// One row per (algorithm, run), one column per metric, row-major storage.
struct ScoreMatrix {
  std::vector<RowKey> rows;
  std::vector<MetricSpec> metrics;
  std::vector<double> values;
  std::vector<std::string> notes;

  std::size_t row_count() const noexcept { return rows.size(); }
  std::size_t column_count() const noexcept { return metrics.size(); }

  double& at(std::size_t row, std::size_t col) { return values[row * metrics.size() + col]; }
  double at(std::size_t row, std::size_t col) const { return values[row * metrics.size() + col]; }

  std::vector<double> row(std::size_t r) const {
    auto first = values.begin() + static_cast<std::ptrdiff_t>(r * metrics.size());
    return {first, first + static_cast<std::ptrdiff_t>(metrics.size())};
  }

  // Algorithms in order of first appearance among the rows.
  std::vector<std::string> algorithms() const {
    std::vector<std::string> out;
    for (const auto& key : rows) {
      if (std::find(out.begin(), out.end(), key.algorithm_id) == out.end()) {
        out.push_back(key.algorithm_id);
      }
    }
    return out;
  }

  bool operator==(const ScoreMatrix&) const = default;
};

struct LevelTable {
  std::vector<std::string> algorithms;
  // counts[i][l] = points of algorithm i on level l+1; every row has level_count() entries.
  std::vector<std::vector<std::size_t>> counts;

  std::size_t level_count() const noexcept { return counts.empty() ? 0 : counts.front().size(); }

  std::size_t row_sum(std::size_t i) const {
    std::size_t total = 0;
    for (auto c : counts[i]) total += c;
    return total;
  }

  bool operator==(const LevelTable&) const = default;
};

enum class RankMethod { olympic, linear, exponential, adaptive, average, reciprocal_baseline };

inline std::string_view to_string(RankMethod m) noexcept {
  switch (m) {
    case RankMethod::olympic: return "olympic";
    case RankMethod::linear: return "linear";
    case RankMethod::exponential: return "exponential";
    case RankMethod::adaptive: return "adaptive";
    case RankMethod::average: return "average";
    case RankMethod::reciprocal_baseline: return "reciprocal_baseline";
  }
  return "unknown";
}

inline std::optional<RankMethod> parse_rank_method(std::string_view name) {
  for (auto m : {RankMethod::olympic, RankMethod::linear, RankMethod::exponential,
                 RankMethod::adaptive, RankMethod::average, RankMethod::reciprocal_baseline}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

struct RankResult {
  RankMethod method = RankMethod::olympic;
  std::vector<std::string> algorithms;
  std::vector<double> scores;
  // Competition ranking, 1 = best.
  std::vector<int> ranks;
  // Groups of algorithms that remain exactly tied.
  std::vector<std::vector<std::string>> ties;

  int rank_of(std::string_view algorithm) const {
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
      if (algorithms[i] == algorithm) return ranks[i];
    }
    throw error(errc::algorithm_set_mismatch, "no rank for algorithm " + std::string(algorithm));
  }

  bool operator==(const RankResult&) const = default;
};

namespace detail {

inline void require_dimension(std::size_t expected, std::size_t actual, std::string_view where) {
  if (expected != actual) {
    throw error(errc::dimension_mismatch, std::string(where) + ": expected " +
                                              std::to_string(expected) + " objectives, got " +
                                              std::to_string(actual));
  }
}

inline void require_finite(const ObjectiveVector& v, std::string_view where) {
  for (double x : v) {
    if (!std::isfinite(x)) throw error(errc::non_finite_value, std::string(where));
  }
}

}  // namespace detail

inline const Front& validate_front(const Front& front) {
  const std::string where = "front " + front.algorithm_id + "/" + front.problem_id + "/run" +
                            std::to_string(front.run_index);
  if (front.points.empty()) throw error(errc::empty_front, where);
  const std::size_t m = front.points.front().size();
  if (m == 0) throw error(errc::dimension_mismatch, where + ": zero-length objective vector");
  for (const auto& p : front.points) {
    detail::require_dimension(m, p.size(), where);
    detail::require_finite(p, where);
  }
  return front;
}

inline const ReferenceSet& validate_reference(const ReferenceSet& ref) {
  if (ref.points.empty()) throw error(errc::empty_input, "reference set has no points");
  const std::size_t m = ref.ideal.size();
  if (m == 0) throw error(errc::dimension_mismatch, "reference ideal point is empty");
  detail::require_dimension(m, ref.nadir.size(), "reference nadir");
  detail::require_finite(ref.ideal, "reference ideal");
  detail::require_finite(ref.nadir, "reference nadir");
  for (std::size_t i = 0; i < m; ++i) {
    if (ref.ideal[i] > ref.nadir[i]) {
      throw error(errc::invalid_parameter, "reference ideal exceeds nadir in objective " +
                                               std::to_string(i + 1));
    }
  }
  for (const auto& p : ref.points) {
    detail::require_dimension(m, p.size(), "reference point");
    detail::require_finite(p, "reference point");
    for (std::size_t i = 0; i < m; ++i) {
      if (p[i] < ref.ideal[i] || p[i] > ref.nadir[i]) {
        throw error(errc::invalid_parameter, "reference point outside [ideal, nadir]");
      }
    }
  }
  return ref;
}

// Affine map of each coordinate onto [0, 1] relative to the reference box.
inline ObjectiveVector normalize_point(const ObjectiveVector& p, const ObjectiveVector& ideal,
                                       const ObjectiveVector& nadir) {
  detail::require_dimension(ideal.size(), p.size(), "normalize");
  ObjectiveVector out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double range = nadir[i] - ideal[i];
    if (!(range > 0.0)) {
      throw error(errc::degenerate_range, "nadir equals ideal in objective " + std::to_string(i + 1));
    }
    out[i] = (p[i] - ideal[i]) / range;
  }
  return out;
}

// Warnings (if requested) record points that escaped the reference box.
inline Front normalize(const Front& front, const ReferenceSet& ref,
                       std::vector<std::string>* warnings = nullptr) {
  Front out{{}, front.algorithm_id, front.problem_id, front.run_index};
  out.points.reserve(front.points.size());
  bool escaped = false;
  for (const auto& p : front.points) {
    auto q = normalize_point(p, ref.ideal, ref.nadir);
    for (double v : q) escaped = escaped || v < 0.0 || v > 1.0;
    out.points.push_back(std::move(q));
  }
  if (escaped && warnings) {
    warnings->push_back("front " + front.algorithm_id + "/" + front.problem_id + "/run" +
                        std::to_string(front.run_index) + " leaves the reference box");
  }
  return out;
}

inline ReferenceSet normalize(const ReferenceSet& ref) {
  ReferenceSet out;
  out.points.reserve(ref.points.size());
  for (const auto& p : ref.points) out.points.push_back(normalize_point(p, ref.ideal, ref.nadir));
  out.ideal.assign(ref.ideal.size(), 0.0);
  out.nadir.assign(ref.ideal.size(), 1.0);
  out.notes = ref.notes;
  return out;
}

}  // namespace prank
