#pragma once

// Quality indicators for approximation fronts and the per-problem score
// matrix built from them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "prank/core.hpp"
#include "prank/dominance.hpp"
#include "prank/hypervolume.hpp"
#include "prank/parallel.hpp"
#include "prank/random.hpp"

namespace prank {

struct IndicatorContext {
  const Front* front = nullptr;
  const ReferenceSet* reference = nullptr;
  // Other algorithms' fronts for the same problem and run index (C only).
  std::vector<const Front*> competitors;
  std::uint64_t rng_seed = 0;
  const Parameters* parameters = nullptr;

  const std::vector<ObjectiveVector>& points() const { return front->points; }

  double param(const std::string& key, double fallback) const {
    if (!parameters) return fallback;
    auto it = parameters->find(key);
    return it == parameters->end() ? fallback : it->second;
  }
};

namespace indicators {

inline double squared_distance(const ObjectiveVector& a, const ObjectiveVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double minkowski(const ObjectiveVector& a, const ObjectiveVector& b, double exponent) {
  if (exponent == 2.0) return std::sqrt(squared_distance(a, b));
  double s = 0.0;
  if (exponent == 1.0) {
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
  }
  for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(std::abs(a[i] - b[i]), exponent);
  return std::pow(s, 1.0 / exponent);
}

inline double nearest_squared_distance(const ObjectiveVector& p, const std::vector<ObjectiveVector>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : set) best = std::min(best, squared_distance(p, q));
  return best;
}

// sqrt(sum of squared nearest distances from S to P) / |S|.
inline double generational_distance(const std::vector<ObjectiveVector>& approx,
                                    const std::vector<ObjectiveVector>& reference) {
  if (approx.empty() || reference.empty()) throw error(errc::empty_input, "GD of an empty set");
  double sum = 0.0;
  for (const auto& s : approx) sum += nearest_squared_distance(s, reference);
  return std::sqrt(sum) / static_cast<double>(approx.size());
}

inline double inverted_generational_distance(const std::vector<ObjectiveVector>& approx,
                                             const std::vector<ObjectiveVector>& reference) {
  return generational_distance(reference, approx);
}

// Fraction of B weakly dominated by at least one member of A.
inline double coverage(const std::vector<ObjectiveVector>& a, const std::vector<ObjectiveVector>& b) {
  if (b.empty()) throw error(errc::empty_input, "coverage of an empty set");
  std::size_t covered = 0;
  for (const auto& q : b) {
    for (const auto& p : a) {
      if (weakly_dominates(p, q)) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(b.size());
}

// Fraction of reference points that are the nearest reference of some front point.
inline double claimed_reference_fraction(const std::vector<ObjectiveVector>& approx,
                                         const std::vector<ObjectiveVector>& reference) {
  std::vector<bool> claimed(reference.size(), false);
  for (const auto& p : approx) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < reference.size(); ++r) {
      const double d = squared_distance(p, reference[r]);
      if (d < best_d) {
        best_d = d;
        best = r;
      }
    }
    claimed[best] = true;
  }
  const auto count = std::count(claimed.begin(), claimed.end(), true);
  return static_cast<double>(count) / static_cast<double>(reference.size());
}

namespace detail {

inline std::vector<double> distance_matrix(const std::vector<ObjectiveVector>& points, double exponent) {
  const std::size_t n = points.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = d[j * n + i] = minkowski(points[i], points[j], exponent);
    }
  }
  return d;
}

// Exact evaluation of PD(A) = max_s PD(A - s) + d(s, A - s) by dynamic
// programming over subsets.
inline double pure_diversity_exact(const std::vector<double>& d, std::size_t n) {
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<double> pd(subsets, 0.0);
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    if ((mask & (mask - 1)) == 0) continue;  // singleton
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < n; ++s) {
      if (!(mask >> s & 1)) continue;
      const std::size_t rest = mask & ~(std::size_t{1} << s);
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (rest >> j & 1) nearest = std::min(nearest, d[s * n + j]);
      }
      best = std::max(best, pd[rest] + nearest);
    }
    pd[mask] = best;
  }
  return pd[subsets - 1];
}

// Removes, one at a time, the solution whose nearest-neighbour dissimilarity
// to the rest is largest, accumulating that dissimilarity.
inline double pure_diversity_greedy(const std::vector<double>& d, std::size_t n) {
  std::vector<std::size_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  double total = 0.0;
  while (remaining.size() > 1) {
    std::size_t pick = 0;
    double pick_d = -1.0;
    for (std::size_t a = 0; a < remaining.size(); ++a) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < remaining.size(); ++b) {
        if (a != b) nearest = std::min(nearest, d[remaining[a] * n + remaining[b]]);
      }
      if (nearest > pick_d) {
        pick_d = nearest;
        pick = a;
      }
    }
    total += pick_d;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return total;
}

}  // namespace detail

inline constexpr std::size_t pd_exact_hard_limit = 20;

// Pure diversity. Sets of up to exact_limit points are evaluated exactly;
// larger sets use the greedy removal order, a lower bound on the recursion.
// Greedy ties (mutual nearest neighbours) go to the lexicographically
// smaller point, so the result does not depend on input order.
inline double pure_diversity(const std::vector<ObjectiveVector>& points, double exponent = 2.0,
                             std::size_t exact_limit = 14) {
  if (points.empty()) throw error(errc::empty_input, "PD of an empty set");
  if (!(exponent > 0.0)) throw error(errc::invalid_parameter, "pd_p must be positive");
  const std::size_t n = points.size();
  if (n == 1) return 0.0;
  if (n <= std::min(exact_limit, pd_exact_hard_limit)) {
    return detail::pure_diversity_exact(detail::distance_matrix(points, exponent), n);
  }
  auto sorted = points;
  std::sort(sorted.begin(), sorted.end());
  return detail::pure_diversity_greedy(detail::distance_matrix(sorted, exponent), n);
}

inline double pure_diversity_greedy(const std::vector<ObjectiveVector>& points, double exponent = 2.0) {
  if (points.empty()) throw error(errc::empty_input, "PD of an empty set");
  auto sorted = points;
  std::sort(sorted.begin(), sorted.end());
  return detail::pure_diversity_greedy(detail::distance_matrix(sorted, exponent), points.size());
}

// Sample standard deviation of L1 nearest-neighbour distances.
inline double spacing(const std::vector<ObjectiveVector>& points) {
  const std::size_t n = points.size();
  if (n < 2) throw error(errc::too_few_points, "spacing needs at least 2 points");
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) nearest[i] = std::min(nearest[i], minkowski(points[i], points[j], 1.0));
    }
  }
  const double mean = std::accumulate(nearest.begin(), nearest.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : nearest) ss += (mean - v) * (mean - v);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

inline double overall_spread(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ideal,
                             const ObjectiveVector& nadir) {
  if (points.empty()) throw error(errc::empty_input, "OS of an empty set");
  double product = 1.0;
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    const double span = std::abs(nadir[i] - ideal[i]);
    if (!(span > 0.0)) throw error(errc::degenerate_range, "OS reference range is zero");
    double lo = points.front()[i];
    double hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p[i]);
      hi = std::max(hi, p[i]);
    }
    product *= (hi - lo) / span;
  }
  return product;
}

// Per objective: coefficient of variation of the consecutive gaps between
// sorted coordinate values, weighted by reference range over front range.
inline double distribution_metric(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ideal,
                                  const ObjectiveVector& nadir) {
  const std::size_t n = points.size();
  if (n < 3) throw error(errc::too_few_points, "DM needs at least 3 points");
  double sum = 0.0;
  std::vector<double> column(n);
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) column[k] = points[k][i];
    std::sort(column.begin(), column.end());
    const double range = column.back() - column.front();
    if (!(range > 0.0)) {
      throw error(errc::degenerate_range, "DM front range is zero in objective " + std::to_string(i + 1));
    }
    const std::size_t gaps = n - 1;
    double mean = 0.0;
    for (std::size_t k = 0; k < gaps; ++k) mean += column[k + 1] - column[k];
    mean /= static_cast<double>(gaps);
    double ss = 0.0;
    for (std::size_t k = 0; k < gaps; ++k) {
      const double g = column[k + 1] - column[k] - mean;
      ss += g * g;
    }
    const double sd = std::sqrt(ss / static_cast<double>(gaps - 1));
    sum += (sd / mean) * (std::abs(ideal[i] - nadir[i]) / range);
  }
  return sum / static_cast<double>(n);
}

// Context-level indicators.

inline ObjectiveVector hv_reference_point(const IndicatorContext& ctx) {
  const double scale = ctx.param("hv_ref_scale", 1.1);
  const auto& ref = *ctx.reference;
  ObjectiveVector r(ref.ideal.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = ref.ideal[i] + scale * (ref.nadir[i] - ref.ideal[i]);
  return r;
}

inline double hv(const IndicatorContext& ctx) {
  const auto r = hv_reference_point(ctx);
  const auto exact_max = static_cast<std::size_t>(ctx.param("hv_exact_max_objectives", 6));
  if (r.size() <= exact_max) return hypervolume_exact(ctx.points(), r);
  const auto samples = static_cast<std::size_t>(ctx.param("hv_samples", 100000));
  return hypervolume_monte_carlo(ctx.points(), r, samples, ctx.rng_seed);
}

inline double gd(const IndicatorContext& ctx) {
  return generational_distance(ctx.points(), ctx.reference->points);
}

inline double igd(const IndicatorContext& ctx) {
  return inverted_generational_distance(ctx.points(), ctx.reference->points);
}

inline double two_set_coverage(const IndicatorContext& ctx) {
  if (ctx.competitors.empty()) {
    throw error(errc::missing_competitors, "C needs at least one competing front");
  }
  double sum = 0.0;
  for (const Front* other : ctx.competitors) sum += coverage(ctx.points(), other->points);
  return sum / static_cast<double>(ctx.competitors.size());
}

inline double cpf(const IndicatorContext& ctx) {
  const auto min_refs = static_cast<std::size_t>(ctx.param("cpf_min_refs", 100));
  if (ctx.reference->points.size() < min_refs) {
    throw error(errc::too_few_reference_points,
                "CPF needs at least " + std::to_string(min_refs) + " reference points, got " +
                    std::to_string(ctx.reference->points.size()));
  }
  return claimed_reference_fraction(ctx.points(), ctx.reference->points);
}

inline double delta_p(const IndicatorContext& ctx) { return std::max(gd(ctx), igd(ctx)); }

inline double pd(const IndicatorContext& ctx) {
  return pure_diversity(ctx.points(), ctx.param("pd_p", 2.0),
                        static_cast<std::size_t>(ctx.param("pd_exact_max", 14)));
}

inline double sp(const IndicatorContext& ctx) { return spacing(ctx.points()); }

inline double os(const IndicatorContext& ctx) {
  return overall_spread(ctx.points(), ctx.reference->ideal, ctx.reference->nadir);
}

inline double dm(const IndicatorContext& ctx) {
  return distribution_metric(ctx.points(), ctx.reference->ideal, ctx.reference->nadir);
}

}  // namespace indicators

using IndicatorFn = std::function<double(const IndicatorContext&)>;

class MetricRegistry {
 public:
  struct Entry {
    Orientation orientation;
    IndicatorFn compute;
    bool needs_competitors = false;
  };

  static MetricRegistry builtin() {
    MetricRegistry r;
    r.add("HV", Orientation::maximize, indicators::hv);
    r.add("GD", Orientation::minimize, indicators::gd);
    r.add("IGD", Orientation::minimize, indicators::igd);
    r.add("C", Orientation::maximize, indicators::two_set_coverage, true);
    r.add("CPF", Orientation::maximize, indicators::cpf);
    r.add("DeltaP", Orientation::minimize, indicators::delta_p);
    r.add("PD", Orientation::maximize, indicators::pd);
    r.add("SP", Orientation::minimize, indicators::sp);
    r.add("OS", Orientation::maximize, indicators::os);
    r.add("DM", Orientation::minimize, indicators::dm);
    return r;
  }

  void add(std::string id, Orientation orientation, IndicatorFn fn, bool needs_competitors = false) {
    entries_[std::move(id)] = Entry{orientation, std::move(fn), needs_competitors};
  }

  const Entry* find(const std::string& id) const {
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
  }

  // Spec with the registered orientation; throws UnknownMetric.
  MetricSpec spec(const std::string& id, Parameters parameters = {}) const {
    const Entry* e = find(id);
    if (!e) throw error(errc::unknown_metric, id);
    return MetricSpec{id, e->orientation, std::move(parameters)};
  }

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (const auto& [id, entry] : entries_) out.push_back(id);
    return out;
  }

 private:
  std::map<std::string, Entry> entries_;
};

inline const MetricRegistry& builtin_registry() {
  static const MetricRegistry registry = MetricRegistry::builtin();
  return registry;
}

struct ScoreOptions {
  std::uint64_t seed = 1;
  bool normalize = true;
  std::size_t threads = 1;
  const MetricRegistry* registry = nullptr;
  // Optional explicit row order for algorithms; defaults to first appearance.
  std::vector<std::string> algorithm_order;
};

namespace detail {

inline bool is_degenerate_input(errc code) {
  return code == errc::too_few_points || code == errc::degenerate_range;
}

// Worst finite value in the column plus 10% of the column range, pushed in
// the metric's bad direction. A column with zero range is pushed by 10% of
// max(|worst|, 1); a column with no finite value at all becomes 0.
inline void apply_degenerate_policy(ScoreMatrix& m, const std::vector<char>& failed) {
  for (std::size_t c = 0; c < m.column_count(); ++c) {
    const bool maximize = m.metrics[c].orientation == Orientation::maximize;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t failures = 0;
    for (std::size_t r = 0; r < m.row_count(); ++r) {
      if (failed[r * m.column_count() + c]) {
        ++failures;
        continue;
      }
      lo = std::min(lo, m.at(r, c));
      hi = std::max(hi, m.at(r, c));
    }
    if (failures == 0) continue;
    double sentinel = 0.0;
    if (failures < m.row_count()) {
      const double worst = maximize ? lo : hi;
      double penalty = 0.1 * (hi - lo);
      if (!(penalty > 0.0)) penalty = 0.1 * std::max(std::abs(worst), 1.0);
      sentinel = maximize ? worst - penalty : worst + penalty;
    }
    for (std::size_t r = 0; r < m.row_count(); ++r) {
      if (failed[r * m.column_count() + c]) m.at(r, c) = sentinel;
    }
    m.notes.push_back(std::to_string(failures) + " degenerate " + m.metrics[c].id +
                      " cell(s) set to the column penalty value");
  }
}

}  // namespace detail

// Fills one row per (algorithm, run) and one column per metric for a single
// problem and objective count.
inline ScoreMatrix compute_score_matrix(const std::vector<Front>& fronts, const ReferenceSet& reference,
                                        const std::vector<MetricSpec>& specs,
                                        const ScoreOptions& options = {}) {
  const MetricRegistry& registry = options.registry ? *options.registry : builtin_registry();
  if (fronts.empty()) throw error(errc::empty_input, "no fronts to score");
  if (specs.empty()) throw error(errc::invalid_parameter, "no metrics selected");
  validate_reference(reference);
  const std::size_t m = reference.objective_count();
  std::vector<const MetricRegistry::Entry*> entries;
  for (const auto& spec : specs) {
    const auto* entry = registry.find(spec.id);
    if (!entry) throw error(errc::unknown_metric, spec.id);
    entries.push_back(entry);
  }
  for (const auto& f : fronts) {
    validate_front(f);
    detail::require_dimension(m, f.objective_count(), "front vs reference");
  }

  std::vector<std::string> algorithms = options.algorithm_order;
  for (const auto& f : fronts) {
    if (std::find(algorithms.begin(), algorithms.end(), f.algorithm_id) == algorithms.end()) {
      algorithms.push_back(f.algorithm_id);
    }
  }
  // runs[a] = run index -> front position.
  std::vector<std::map<std::size_t, std::size_t>> runs(algorithms.size());
  for (std::size_t i = 0; i < fronts.size(); ++i) {
    const auto a = static_cast<std::size_t>(
        std::find(algorithms.begin(), algorithms.end(), fronts[i].algorithm_id) - algorithms.begin());
    if (!runs[a].emplace(fronts[i].run_index, i).second) {
      throw error(errc::invalid_parameter, "duplicate run " + std::to_string(fronts[i].run_index) +
                                               " for algorithm " + fronts[i].algorithm_id);
    }
  }
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    if (runs[a].empty()) throw error(errc::missing_run, "algorithm " + algorithms[a] + " has no runs");
    std::vector<std::size_t> mine, first;
    for (const auto& kv : runs[a]) mine.push_back(kv.first);
    for (const auto& kv : runs[0]) first.push_back(kv.first);
    if (mine != first) {
      throw error(errc::missing_run, "algorithms " + algorithms[0] + " and " + algorithms[a] +
                                         " have different run sets");
    }
  }

  ScoreMatrix matrix;
  matrix.metrics = specs;
  for (std::size_t s = 0; s < specs.size(); ++s) matrix.metrics[s].orientation = entries[s]->orientation;

  ReferenceSet ref = options.normalize ? normalize(reference) : reference;
  std::vector<Front> work;
  work.reserve(fronts.size());
  for (const auto& f : fronts) {
    work.push_back(options.normalize ? normalize(f, reference, &matrix.notes) : f);
  }

  std::vector<std::size_t> row_front;
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    for (const auto& [run, index] : runs[a]) {
      matrix.rows.push_back(RowKey{algorithms[a], run});
      row_front.push_back(index);
    }
  }

  const std::size_t rows = matrix.row_count();
  const std::size_t cols = matrix.column_count();
  matrix.values.assign(rows * cols, 0.0);
  std::vector<char> failed(rows * cols, 0);

  parallel_for(rows * cols, options.threads, [&](std::size_t cell) {
    const std::size_t r = cell / cols;
    const std::size_t c = cell % cols;
    const Front& front = work[row_front[r]];
    IndicatorContext ctx;
    ctx.front = &front;
    ctx.reference = &ref;
    ctx.parameters = &specs[c].parameters;
    ctx.rng_seed = substream_seed(options.seed, front.algorithm_id, front.run_index, specs[c].id);
    if (entries[c]->needs_competitors) {
      for (std::size_t a = 0; a < algorithms.size(); ++a) {
        if (algorithms[a] == front.algorithm_id) continue;
        ctx.competitors.push_back(&work[runs[a].at(front.run_index)]);
      }
    }
    try {
      const double v = entries[c]->compute(ctx);
      if (!std::isfinite(v)) {
        throw error(errc::non_finite_value, specs[c].id + " produced a non-finite value");
      }
      matrix.values[cell] = v;
    } catch (const error& e) {
      if (!detail::is_degenerate_input(e.code())) throw;
      failed[cell] = 1;
    }
  });
  detail::apply_degenerate_policy(matrix, failed);

  for (const auto& spec : specs) {
    if (spec.id == "CPF") {
      matrix.notes.push_back("CPF approximated as the fraction of claimed reference points");
    }
  }
  for (const auto& note : reference.notes) matrix.notes.push_back("reference: " + note);
  return matrix;
}

}  // namespace prank
