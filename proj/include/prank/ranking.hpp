#pragma once

// Level-count tables from non-dominated sorting of score vectors, and the
// four level-based ranking schemes plus average rank, the reciprocal-rank
// competition baseline and rank correlation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "prank/core.hpp"
#include "prank/dominance.hpp"

namespace prank {

inline const std::vector<RankMethod>& level_methods() {
  static const std::vector<RankMethod> methods = {RankMethod::olympic, RankMethod::linear,
                                                  RankMethod::exponential, RankMethod::adaptive};
  return methods;
}

struct RankingConfig {
  std::vector<RankMethod> methods = level_methods();
  // Empty means the default olympic, linear, exponential, adaptive order
  // with the primary method dropped.
  std::vector<RankMethod> tie_break_order;
  bool report_average = true;
  bool break_ties = true;
  Relation relation = Relation::pareto;

  bool operator==(const RankingConfig&) const = default;
};

inline std::vector<RankMethod> tie_break_sequence(RankMethod primary, const RankingConfig& config) {
  const auto& order = config.tie_break_order.empty() ? level_methods() : config.tie_break_order;
  std::vector<RankMethod> out;
  for (auto m : order) {
    if (m != primary) out.push_back(m);
  }
  return out;
}

// How maximize-oriented columns are turned into minimization columns.
enum class OrientationTransform { negate, reciprocal };

// Minimization-oriented score vectors, one per matrix row. For the epsilon
// relation columns are additionally min-max scaled to [0, 1], since its norm
// condition is scale sensitive.
inline std::vector<ObjectiveVector> oriented_scores(const ScoreMatrix& matrix, Relation relation = Relation::pareto,
                                                    OrientationTransform transform = OrientationTransform::negate) {
  std::vector<ObjectiveVector> out(matrix.row_count(), ObjectiveVector(matrix.column_count()));
  for (std::size_t c = 0; c < matrix.column_count(); ++c) {
    const bool flip = matrix.metrics[c].orientation == Orientation::maximize;
    for (std::size_t r = 0; r < matrix.row_count(); ++r) {
      double v = matrix.at(r, c);
      if (flip) {
        if (transform == OrientationTransform::negate) {
          v = -v;
        } else {
          if (!(v > 0.0)) {
            throw error(errc::invalid_parameter, "reciprocal orientation needs positive " +
                                                     matrix.metrics[c].id + " scores");
          }
          v = 1.0 / v;
        }
      }
      out[r][c] = v;
    }
    if (relation == Relation::epsilon) {
      double lo = out.empty() ? 0.0 : out[0][c];
      double hi = lo;
      for (const auto& row : out) {
        lo = std::min(lo, row[c]);
        hi = std::max(hi, row[c]);
      }
      for (auto& row : out) row[c] = hi > lo ? (row[c] - lo) / (hi - lo) : 0.0;
    }
  }
  return out;
}

inline NdsResult level_assignment(const ScoreMatrix& matrix, Relation relation = Relation::pareto,
                                  OrientationTransform transform = OrientationTransform::negate) {
  return nds(oriented_scores(matrix, relation, transform), relation);
}

inline LevelTable tally_levels(const ScoreMatrix& matrix, const NdsResult& levels) {
  LevelTable table;
  table.algorithms = matrix.algorithms();
  table.counts.assign(table.algorithms.size(), std::vector<std::size_t>(levels.level_count, 0));
  for (std::size_t r = 0; r < matrix.row_count(); ++r) {
    const auto a = static_cast<std::size_t>(
        std::find(table.algorithms.begin(), table.algorithms.end(), matrix.rows[r].algorithm_id) -
        table.algorithms.begin());
    ++table.counts[a][levels.level_of[r] - 1];
  }
  return table;
}

inline LevelTable build_level_table(const ScoreMatrix& matrix, Relation relation = Relation::pareto,
                                    OrientationTransform transform = OrientationTransform::negate) {
  return tally_levels(matrix, level_assignment(matrix, relation, transform));
}

namespace detail {

inline bool scores_tied(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Competition ranking of `members` (indices into the algorithm list) under a
// strict "better" order; consecutive members that compare `same` share a rank.
template <typename Better, typename Same>
std::vector<std::vector<std::size_t>> ordered_groups(std::vector<std::size_t> members, Better better, Same same) {
  std::stable_sort(members.begin(), members.end(), better);
  std::vector<std::vector<std::size_t>> groups;
  for (auto i : members) {
    if (!groups.empty() && same(groups.back().front(), i)) {
      groups.back().push_back(i);
    } else {
      groups.push_back({i});
    }
  }
  return groups;
}

inline void assign_ranks(RankResult& result, const std::vector<std::vector<std::size_t>>& groups) {
  result.ranks.assign(result.algorithms.size(), 0);
  result.ties.clear();
  int position = 1;
  for (const auto& g : groups) {
    std::vector<std::size_t> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    for (auto i : sorted) result.ranks[i] = position;
    if (sorted.size() > 1) {
      std::vector<std::string> names;
      for (auto i : sorted) names.push_back(result.algorithms[i]);
      result.ties.push_back(std::move(names));
    }
    position += static_cast<int>(g.size());
  }
}

inline std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

// Higher score is better.
inline RankResult rank_by_score(RankMethod method, const std::vector<std::string>& algorithms,
                                std::vector<double> scores) {
  RankResult result{method, algorithms, std::move(scores), {}, {}};
  const auto& s = result.scores;
  auto groups = ordered_groups(
      all_indices(algorithms.size()), [&](std::size_t a, std::size_t b) { return s[a] > s[b]; },
      [&](std::size_t a, std::size_t b) { return scores_tied(s[a], s[b]); });
  assign_ranks(result, groups);
  return result;
}

inline void validate_table(const LevelTable& table) {
  if (table.algorithms.size() != table.counts.size()) {
    throw error(errc::invalid_parameter, "level table rows do not match its algorithms");
  }
  for (const auto& row : table.counts) {
    if (row.size() != table.level_count()) {
      throw error(errc::invalid_parameter, "level table rows have different lengths");
    }
  }
}

inline std::vector<double> linear_scores(const LevelTable& table) {
  const std::size_t levels = table.level_count();
  std::vector<double> s;
  for (const auto& row : table.counts) {
    double total = 0.0;
    for (std::size_t l = 0; l < levels; ++l) total += static_cast<double>(row[l] * (levels - l));
    s.push_back(total);
  }
  return s;
}

inline std::vector<double> exponential_scores(const LevelTable& table) {
  std::vector<double> s;
  for (const auto& row : table.counts) {
    double total = 0.0;
    for (std::size_t l = 0; l < row.size(); ++l) {
      total += static_cast<double>(row[l]) * std::ldexp(1.0, -static_cast<int>(l));
    }
    s.push_back(total);
  }
  return s;
}

// Sum over levels of each algorithm's share of the cumulative point counts.
inline std::vector<double> adaptive_scores(const LevelTable& table) {
  const std::size_t levels = table.level_count();
  const std::size_t n = table.algorithms.size();
  std::vector<std::vector<double>> cumulative(n, std::vector<double>(levels, 0.0));
  std::vector<double> totals(levels, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double running = 0.0;
    for (std::size_t l = 0; l < levels; ++l) {
      running += static_cast<double>(table.counts[i][l]);
      cumulative[i][l] = running;
      totals[l] += running;
    }
  }
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < levels; ++l) {
      if (!(totals[l] > 0.0)) throw error(errc::invalid_parameter, "adaptive score on an empty level table");
      s[i] += cumulative[i][l] / totals[l];
    }
  }
  return s;
}

}  // namespace detail

// Lexicographic comparison of count vectors, level 1 first. Scores are the
// level-1 counts; only identical count vectors tie.
inline RankResult olympic_rank(const LevelTable& table) {
  detail::validate_table(table);
  std::vector<double> level_one;
  for (const auto& row : table.counts) level_one.push_back(row.empty() ? 0.0 : static_cast<double>(row[0]));
  RankResult result{RankMethod::olympic, table.algorithms, std::move(level_one), {}, {}};
  const auto& c = table.counts;
  auto groups = detail::ordered_groups(
      detail::all_indices(table.algorithms.size()),
      [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(c[b].begin(), c[b].end(), c[a].begin(), c[a].end());
      },
      [&](std::size_t a, std::size_t b) { return c[a] == c[b]; });
  detail::assign_ranks(result, groups);
  return result;
}

// Level l of L weighs L - l + 1.
inline RankResult linear_rank(const LevelTable& table) {
  detail::validate_table(table);
  return detail::rank_by_score(RankMethod::linear, table.algorithms, detail::linear_scores(table));
}

// Level l weighs 2^-(l-1).
inline RankResult exponential_rank(const LevelTable& table) {
  detail::validate_table(table);
  return detail::rank_by_score(RankMethod::exponential, table.algorithms, detail::exponential_scores(table));
}

inline RankResult adaptive_rank(const LevelTable& table) {
  detail::validate_table(table);
  return detail::rank_by_score(RankMethod::adaptive, table.algorithms, detail::adaptive_scores(table));
}

inline RankResult rank_table(const LevelTable& table, RankMethod method) {
  switch (method) {
    case RankMethod::olympic: return olympic_rank(table);
    case RankMethod::linear: return linear_rank(table);
    case RankMethod::exponential: return exponential_rank(table);
    case RankMethod::adaptive: return adaptive_rank(table);
    default: break;
  }
  throw error(errc::invalid_parameter, std::string(to_string(method)) + " is not a level-table method");
}

namespace detail {

inline void refine_group(const std::vector<std::size_t>& group, const std::vector<RankResult>& breakers,
                         std::size_t depth, std::vector<std::vector<std::size_t>>& out) {
  if (group.size() == 1 || depth == breakers.size()) {
    out.push_back(group);
    return;
  }
  const RankResult& by = breakers[depth];
  auto sub = ordered_groups(
      group, [&](std::size_t a, std::size_t b) { return by.ranks[a] < by.ranks[b]; },
      [&](std::size_t a, std::size_t b) { return by.ranks[a] == by.ranks[b]; });
  for (const auto& g : sub) refine_group(g, breakers, depth + 1, out);
}

}  // namespace detail

// Re-ranks each tied group of the primary result by the tie-break methods in
// turn. Scores stay those of the primary method.
inline RankResult resolve_ties(const RankResult& primary, const LevelTable& table, const RankingConfig& config) {
  if (primary.ties.empty()) return primary;
  if (primary.algorithms != table.algorithms) {
    throw error(errc::algorithm_set_mismatch, "tie resolution table does not match the ranking");
  }
  std::vector<RankResult> breakers;
  for (auto m : tie_break_sequence(primary.method, config)) breakers.push_back(rank_table(table, m));

  std::map<int, std::vector<std::size_t>> by_rank;
  for (std::size_t i = 0; i < primary.ranks.size(); ++i) by_rank[primary.ranks[i]].push_back(i);
  std::vector<std::vector<std::size_t>> groups;
  for (const auto& [rank, members] : by_rank) detail::refine_group(members, breakers, 0, groups);

  RankResult result = primary;
  detail::assign_ranks(result, groups);
  return result;
}

namespace detail {

inline std::vector<int> aligned_ranks(const RankResult& r, const std::vector<std::string>& algorithms) {
  if (r.algorithms.size() != algorithms.size()) {
    throw error(errc::algorithm_set_mismatch, "rankings cover different algorithm sets");
  }
  std::vector<int> out;
  for (const auto& a : algorithms) {
    auto it = std::find(r.algorithms.begin(), r.algorithms.end(), a);
    if (it == r.algorithms.end()) throw error(errc::algorithm_set_mismatch, "algorithm " + a + " missing");
    out.push_back(r.ranks[static_cast<std::size_t>(it - r.algorithms.begin())]);
  }
  return out;
}

}  // namespace detail

// Mean of integer ranks across results, re-ranked ascending. Scores hold the
// mean ranks (lower is better).
inline RankResult average_rank(const std::vector<RankResult>& results) {
  if (results.empty()) throw error(errc::empty_input, "average of no rankings");
  const auto& algorithms = results.front().algorithms;
  std::vector<long> sums(algorithms.size(), 0);
  for (const auto& r : results) {
    const auto ranks = detail::aligned_ranks(r, algorithms);
    for (std::size_t i = 0; i < ranks.size(); ++i) sums[i] += ranks[i];
  }
  RankResult result{RankMethod::average, algorithms, {}, {}, {}};
  for (auto s : sums) result.scores.push_back(static_cast<double>(s) / static_cast<double>(results.size()));
  auto groups = detail::ordered_groups(
      detail::all_indices(algorithms.size()), [&](std::size_t a, std::size_t b) { return sums[a] < sums[b]; },
      [&](std::size_t a, std::size_t b) { return sums[a] == sums[b]; });
  detail::assign_ranks(result, groups);
  return result;
}

// Mean indicator values of every algorithm for one (problem, objective
// count, indicator) combination.
struct BaselineCell {
  std::string label;
  Orientation orientation = Orientation::minimize;
  std::vector<std::string> algorithms;
  std::vector<double> means;
};

// Ranks algorithms by mean in each cell; an algorithm's score is the sum of
// the reciprocals of its ranks. Higher is better.
inline RankResult reciprocal_baseline(const std::vector<BaselineCell>& cells,
                                      const std::vector<std::string>& algorithms) {
  if (cells.empty()) throw error(errc::missing_cell, "no baseline cells");
  std::vector<double> scores(algorithms.size(), 0.0);
  for (const auto& cell : cells) {
    std::vector<double> means;
    for (const auto& a : algorithms) {
      auto it = std::find(cell.algorithms.begin(), cell.algorithms.end(), a);
      if (it == cell.algorithms.end()) throw error(errc::missing_cell, cell.label + " lacks algorithm " + a);
      const double v = cell.means[static_cast<std::size_t>(it - cell.algorithms.begin())];
      if (!std::isfinite(v)) throw error(errc::missing_cell, cell.label + " has no value for " + a);
      means.push_back(cell.orientation == Orientation::maximize ? v : -v);
    }
    const auto ranked = detail::rank_by_score(RankMethod::reciprocal_baseline, algorithms, means);
    for (std::size_t i = 0; i < algorithms.size(); ++i) scores[i] += 1.0 / ranked.ranks[i];
  }
  return detail::rank_by_score(RankMethod::reciprocal_baseline, algorithms, std::move(scores));
}

namespace detail {

// Fractional (average) ranks of the values; ties share the mean position.
inline std::vector<double> fractional_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order = all_indices(n);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double mean_position = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) out[order[k]] = mean_position;
    i = j + 1;
  }
  return out;
}

}  // namespace detail

// Spearman correlation of two rankings over the same algorithms, with
// average-rank correction for ties. Two constant rankings correlate 1; a
// constant ranking against a varying one correlates 0.
inline double rank_correlation(const RankResult& r1, const RankResult& r2) {
  const auto a = detail::aligned_ranks(r1, r1.algorithms);
  const auto b = detail::aligned_ranks(r2, r1.algorithms);
  const auto ra = detail::fractional_ranks(std::vector<double>(a.begin(), a.end()));
  const auto rb = detail::fractional_ranks(std::vector<double>(b.begin(), b.end()));
  const double n = static_cast<double>(ra.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 && sbb == 0.0) return 1.0;
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace prank
