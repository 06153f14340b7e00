#pragma once

// Per-problem pipelines and their aggregation by objective count and overall.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prank/core.hpp"
#include "prank/dominance.hpp"
#include "prank/indicators.hpp"
#include "prank/parallel.hpp"
#include "prank/ranking.hpp"

namespace prank {

// Sums counts level by level; shorter tables are padded with zeros. Output
// rows follow the first table's algorithm order.
inline LevelTable merge_tables(const std::vector<LevelTable>& tables) {
  if (tables.empty()) throw error(errc::empty_input, "no tables to merge");
  LevelTable out;
  out.algorithms = tables.front().algorithms;
  std::size_t levels = 0;
  for (const auto& t : tables) levels = std::max(levels, t.level_count());
  out.counts.assign(out.algorithms.size(), std::vector<std::size_t>(levels, 0));
  for (const auto& t : tables) {
    if (t.algorithms.size() != out.algorithms.size()) {
      throw error(errc::algorithm_set_mismatch, "tables cover different algorithm sets");
    }
    for (std::size_t i = 0; i < t.algorithms.size(); ++i) {
      auto it = std::find(out.algorithms.begin(), out.algorithms.end(), t.algorithms[i]);
      if (it == out.algorithms.end()) {
        throw error(errc::algorithm_set_mismatch, "algorithm " + t.algorithms[i] + " not in every table");
      }
      auto& row = out.counts[static_cast<std::size_t>(it - out.algorithms.begin())];
      for (std::size_t l = 0; l < t.counts[i].size(); ++l) row[l] += t.counts[i][l];
    }
  }
  return out;
}

struct StudyLayout {
  std::vector<std::string> problems;
  std::vector<std::size_t> objective_counts;
  std::size_t runs = 0;
  std::vector<std::string> algorithms;

  bool operator==(const StudyLayout&) const = default;
};

struct CellKey {
  std::string problem;
  std::size_t objectives = 0;

  auto operator<=>(const CellKey&) const = default;
  bool operator==(const CellKey&) const = default;
};

// Every loaded front plus the reference sets that were found.
struct Study {
  StudyLayout layout;
  // Fronts keyed by cell; Front itself carries algorithm, problem and run.
  std::map<CellKey, std::vector<Front>> fronts;
  std::map<CellKey, ReferenceSet> references;
};

enum class ReferenceMode { files, union_fallback };

struct StudyOptions {
  std::vector<MetricSpec> metrics = all_builtin_metrics();
  RankingConfig ranking;
  bool normalize = true;
  ReferenceMode reference_mode = ReferenceMode::files;
  std::uint64_t seed = 1;
  bool allow_missing = false;
  bool baseline = false;
  std::size_t threads = 1;
  const MetricRegistry* registry = nullptr;
};

struct CellReport {
  CellKey key;
  ScoreMatrix matrix;
  NdsResult levels;
  LevelTable table;
  std::vector<RankResult> ranks;
  bool reference_from_union = false;

  bool operator==(const CellReport&) const = default;
};

struct GroupReport {
  std::string label;
  std::size_t tables_merged = 0;
  LevelTable table;
  std::vector<RankResult> ranks;

  bool operator==(const GroupReport&) const = default;
};

struct CorrelationReport {
  std::vector<RankMethod> methods;
  // matrix[i][j] = Spearman correlation of methods i and j on the overall table.
  std::vector<std::vector<double>> matrix;
  // Mean correlation of each method with the other methods.
  std::vector<double> average_pairwise;

  bool operator==(const CorrelationReport&) const = default;
};

struct StudyReport {
  StudyLayout layout;
  std::vector<MetricSpec> metrics;
  std::vector<CellReport> cells;
  std::vector<GroupReport> by_objectives;
  GroupReport overall;
  CorrelationReport correlations;
  std::optional<RankResult> baseline;
  std::vector<std::string> dropped_cells;
  std::vector<std::string> notes;

  bool operator==(const StudyReport&) const = default;
};

inline std::string cell_label(const CellKey& key) { return key.problem + "/M" + std::to_string(key.objectives); }

// All configured level methods (ties resolved when configured) followed by
// their average rank when requested.
inline std::vector<RankResult> rank_all(const LevelTable& table, const RankingConfig& config) {
  std::vector<RankResult> out;
  for (auto m : config.methods) {
    RankResult r = rank_table(table, m);
    if (config.break_ties) r = resolve_ties(r, table, config);
    out.push_back(std::move(r));
  }
  if (config.report_average && !out.empty()) out.push_back(average_rank(out));
  return out;
}

// Non-dominated subset of the union of all fronts for one cell; ideal and
// nadir span that subset.
inline ReferenceSet union_reference(const std::vector<Front>& fronts) {
  std::vector<ObjectiveVector> all;
  for (const auto& f : fronts) all.insert(all.end(), f.points.begin(), f.points.end());
  if (all.empty()) throw error(errc::missing_reference, "no points to build a union reference from");
  ReferenceSet ref;
  ref.points = detail::nondominated_unique(all);
  const std::size_t m = ref.points.front().size();
  ref.ideal = ref.points.front();
  ref.nadir = ref.points.front();
  for (const auto& p : ref.points) {
    for (std::size_t i = 0; i < m; ++i) {
      ref.ideal[i] = std::min(ref.ideal[i], p[i]);
      ref.nadir[i] = std::max(ref.nadir[i], p[i]);
    }
  }
  ref.notes.push_back("union_fallback");
  return ref;
}

namespace detail {

inline bool cell_complete(const StudyLayout& layout, const std::vector<Front>& fronts) {
  for (const auto& a : layout.algorithms) {
    for (std::size_t run = 1; run <= layout.runs; ++run) {
      bool found = false;
      for (const auto& f : fronts) found = found || (f.algorithm_id == a && f.run_index == run);
      if (!found) return false;
    }
  }
  return fronts.size() == layout.algorithms.size() * layout.runs;
}

inline std::vector<double> column_means(const ScoreMatrix& m, std::size_t col,
                                        const std::vector<std::string>& algorithms) {
  std::vector<double> sums(algorithms.size(), 0.0);
  std::vector<std::size_t> counts(algorithms.size(), 0);
  for (std::size_t r = 0; r < m.row_count(); ++r) {
    const auto a = static_cast<std::size_t>(
        std::find(algorithms.begin(), algorithms.end(), m.rows[r].algorithm_id) - algorithms.begin());
    sums[a] += m.at(r, col);
    ++counts[a];
  }
  for (std::size_t a = 0; a < sums.size(); ++a) sums[a] /= static_cast<double>(counts[a]);
  return sums;
}

}  // namespace detail

inline CorrelationReport correlate(const std::vector<RankResult>& ranks) {
  CorrelationReport out;
  std::vector<const RankResult*> level;
  for (const auto& r : ranks) {
    if (r.method != RankMethod::average && r.method != RankMethod::reciprocal_baseline) {
      out.methods.push_back(r.method);
      level.push_back(&r);
    }
  }
  const std::size_t k = level.size();
  out.matrix.assign(k, std::vector<double>(k, 1.0));
  out.average_pairwise.assign(k, 1.0);
  for (std::size_t i = 0; i < k; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j) {
        out.matrix[i][j] = rank_correlation(*level[i], *level[j]);
        sum += out.matrix[i][j];
      }
    }
    if (k > 1) out.average_pairwise[i] = sum / static_cast<double>(k - 1);
  }
  return out;
}

// Runs the per-(problem, M) pipelines, then merges their level tables per
// objective count and overall, ranking every table.
inline StudyReport run_study(const Study& study, const StudyOptions& options) {
  const auto& layout = study.layout;
  if (layout.algorithms.empty() || layout.problems.empty() || layout.objective_counts.empty()) {
    throw error(errc::empty_input, "study layout is empty");
  }
  if (options.metrics.empty()) throw error(errc::invalid_parameter, "no metrics selected");
  if (options.ranking.methods.empty()) throw error(errc::invalid_parameter, "no ranking methods selected");
  const MetricRegistry& registry = options.registry ? *options.registry : builtin_registry();

  StudyReport report;
  report.layout = layout;
  report.metrics = options.metrics;
  for (auto& spec : report.metrics) spec.orientation = registry.spec(spec.id).orientation;

  std::vector<CellKey> keys;
  for (auto m : layout.objective_counts) {
    for (const auto& p : layout.problems) {
      const CellKey key{p, m};
      auto it = study.fronts.find(key);
      const bool complete = it != study.fronts.end() && detail::cell_complete(layout, it->second);
      if (!complete) {
        if (!options.allow_missing) {
          throw error(errc::missing_run, "cell " + cell_label(key) + " does not hold every algorithm and run");
        }
        report.dropped_cells.push_back(cell_label(key));
        continue;
      }
      if (!study.references.count(key) && options.reference_mode != ReferenceMode::union_fallback) {
        throw error(errc::missing_reference, "no reference set for " + cell_label(key));
      }
      keys.push_back(key);
    }
  }
  if (keys.empty()) throw error(errc::grid_incomplete, "no complete cells to rank");

  ScoreOptions score_options;
  score_options.seed = options.seed;
  score_options.normalize = options.normalize;
  score_options.threads = options.threads;
  score_options.registry = &registry;
  score_options.algorithm_order = layout.algorithms;

  report.cells.resize(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const auto& key = keys[k];
    const auto& fronts = study.fronts.at(key);
    CellReport& cell = report.cells[k];
    cell.key = key;
    auto ref_it = study.references.find(key);
    const ReferenceSet reference = ref_it != study.references.end() ? ref_it->second : union_reference(fronts);
    cell.reference_from_union = ref_it == study.references.end();
    cell.matrix = compute_score_matrix(fronts, reference, options.metrics, score_options);
    cell.levels = level_assignment(cell.matrix, options.ranking.relation);
    cell.table = tally_levels(cell.matrix, cell.levels);
    cell.ranks = rank_all(cell.table, options.ranking);
  }

  for (auto m : layout.objective_counts) {
    std::vector<LevelTable> tables;
    for (const auto& cell : report.cells) {
      if (cell.key.objectives == m) tables.push_back(cell.table);
    }
    if (tables.empty()) continue;
    GroupReport group{"M" + std::to_string(m), tables.size(), merge_tables(tables), {}};
    group.ranks = rank_all(group.table, options.ranking);
    report.by_objectives.push_back(std::move(group));
  }

  std::vector<LevelTable> all_tables;
  for (const auto& cell : report.cells) all_tables.push_back(cell.table);
  report.overall = GroupReport{"overall", all_tables.size(), merge_tables(all_tables), {}};
  report.overall.ranks = rank_all(report.overall.table, options.ranking);
  report.correlations = correlate(report.overall.ranks);

  if (options.baseline) {
    std::vector<BaselineCell> cells;
    for (const auto& cell : report.cells) {
      for (const char* id : {"HV", "IGD"}) {
        const auto& metrics = cell.matrix.metrics;
        auto it = std::find_if(metrics.begin(), metrics.end(), [&](const MetricSpec& s) { return s.id == id; });
        BaselineCell bc{cell_label(cell.key) + "/" + id, builtin_metric(id).orientation, layout.algorithms, {}};
        if (it != metrics.end()) {
          bc.means = detail::column_means(cell.matrix, static_cast<std::size_t>(it - metrics.begin()),
                                          layout.algorithms);
        } else {
          const auto& fronts = study.fronts.at(cell.key);
          auto ref_it = study.references.find(cell.key);
          const ReferenceSet reference =
              ref_it != study.references.end() ? ref_it->second : union_reference(fronts);
          const auto single = compute_score_matrix(fronts, reference, {builtin_metric(id)}, score_options);
          bc.means = detail::column_means(single, 0, layout.algorithms);
        }
        cells.push_back(std::move(bc));
      }
    }
    report.baseline = reciprocal_baseline(cells, layout.algorithms);
  }

  for (const auto& spec : report.metrics) {
    if (spec.id == "CPF") report.notes.push_back("CPF approximated as the fraction of claimed reference points");
  }
  for (const auto& cell : report.cells) {
    if (cell.reference_from_union) report.notes.push_back(cell_label(cell.key) + ": reference built from union of fronts");
  }
  return report;
}

}  // namespace prank
