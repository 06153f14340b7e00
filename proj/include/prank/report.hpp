#pragma once

// Study report serialization. emit_report writes, under one output directory:
//
//   cells/<problem>/M<m>/{scores,table,ranks,rank_scores}.csv [radviz.csv, radviz.svg]
//   by_objectives/M<m>/{table,ranks,rank_scores}.csv
//   overall/{table,ranks,rank_scores,correlations}.csv
//   report.json  report.md  manifest.json
//
// Nothing depends on time or locale, so identical inputs give identical bytes.

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "prank/aggregation.hpp"
#include "prank/config.hpp"
#include "prank/core.hpp"
#include "prank/io.hpp"
#include "prank/radviz.hpp"

namespace prank {

inline constexpr int report_schema_version = 1;

// ---- JSON ----------------------------------------------------------------

inline nlohmann::json to_json(const MetricSpec& m) {
  return {{"id", m.id}, {"orientation", std::string(to_string(m.orientation))}, {"params", m.parameters}};
}

inline nlohmann::json to_json(const LevelTable& t) { return {{"algorithms", t.algorithms}, {"counts", t.counts}}; }

inline nlohmann::json to_json(const RankResult& r) {
  return {{"method", std::string(to_string(r.method))},
          {"algorithms", r.algorithms},
          {"scores", r.scores},
          {"ranks", r.ranks},
          {"ties", r.ties}};
}

inline nlohmann::json to_json(const ScoreMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& k : m.rows) rows.push_back({{"algorithm", k.algorithm_id}, {"run", k.run_index}});
  nlohmann::json metrics = nlohmann::json::array();
  for (const auto& s : m.metrics) metrics.push_back(to_json(s));
  return {{"rows", rows}, {"metrics", metrics}, {"values", m.values}, {"notes", m.notes}};
}

inline nlohmann::json to_json(const GroupReport& g) {
  nlohmann::json ranks = nlohmann::json::array();
  for (const auto& r : g.ranks) ranks.push_back(to_json(r));
  return {{"label", g.label}, {"tables_merged", g.tables_merged}, {"table", to_json(g.table)}, {"ranks", ranks}};
}

inline nlohmann::json to_json(const StudyReport& report) {
  nlohmann::json j;
  j["schema_version"] = report_schema_version;
  j["layout"] = {{"problems", report.layout.problems},
                 {"objective_counts", report.layout.objective_counts},
                 {"runs", report.layout.runs},
                 {"algorithms", report.layout.algorithms}};
  j["metrics"] = nlohmann::json::array();
  for (const auto& m : report.metrics) j["metrics"].push_back(to_json(m));
  j["cells"] = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json ranks = nlohmann::json::array();
    for (const auto& r : c.ranks) ranks.push_back(to_json(r));
    j["cells"].push_back({{"problem", c.key.problem},
                          {"objectives", c.key.objectives},
                          {"reference_from_union", c.reference_from_union},
                          {"matrix", to_json(c.matrix)},
                          {"levels", {{"level_of", c.levels.level_of}, {"level_count", c.levels.level_count}}},
                          {"table", to_json(c.table)},
                          {"ranks", ranks}});
  }
  j["by_objectives"] = nlohmann::json::array();
  for (const auto& g : report.by_objectives) j["by_objectives"].push_back(to_json(g));
  j["overall"] = to_json(report.overall);
  nlohmann::json methods = nlohmann::json::array();
  for (auto m : report.correlations.methods) methods.push_back(std::string(to_string(m)));
  j["correlations"] = {{"methods", methods},
                       {"matrix", report.correlations.matrix},
                       {"average_pairwise", report.correlations.average_pairwise}};
  j["baseline"] = report.baseline ? to_json(*report.baseline) : nlohmann::json(nullptr);
  j["dropped_cells"] = report.dropped_cells;
  j["notes"] = report.notes;
  return j;
}

namespace detail {

inline RankMethod method_from_json(const nlohmann::json& j) {
  auto m = parse_rank_method(j.get<std::string>());
  if (!m) throw error(errc::parse_error, "unknown ranking method " + j.dump());
  return *m;
}

inline MetricSpec metric_from_json(const nlohmann::json& j) {
  MetricSpec m;
  m.id = j.at("id").get<std::string>();
  m.orientation = j.at("orientation").get<std::string>() == "maximize" ? Orientation::maximize : Orientation::minimize;
  m.parameters = j.at("params").get<Parameters>();
  return m;
}

inline LevelTable table_from_json(const nlohmann::json& j) {
  return {j.at("algorithms").get<std::vector<std::string>>(),
          j.at("counts").get<std::vector<std::vector<std::size_t>>>()};
}

inline RankResult rank_from_json(const nlohmann::json& j) {
  RankResult r;
  r.method = method_from_json(j.at("method"));
  r.algorithms = j.at("algorithms").get<std::vector<std::string>>();
  r.scores = j.at("scores").get<std::vector<double>>();
  r.ranks = j.at("ranks").get<std::vector<int>>();
  r.ties = j.at("ties").get<std::vector<std::vector<std::string>>>();
  return r;
}

inline std::vector<RankResult> ranks_from_json(const nlohmann::json& j) {
  std::vector<RankResult> out;
  for (const auto& r : j) out.push_back(rank_from_json(r));
  return out;
}

inline GroupReport group_from_json(const nlohmann::json& j) {
  return {j.at("label").get<std::string>(), j.at("tables_merged").get<std::size_t>(), table_from_json(j.at("table")),
          ranks_from_json(j.at("ranks"))};
}

inline ScoreMatrix matrix_from_json(const nlohmann::json& j) {
  ScoreMatrix m;
  for (const auto& r : j.at("rows")) m.rows.push_back({r.at("algorithm").get<std::string>(), r.at("run").get<std::size_t>()});
  for (const auto& s : j.at("metrics")) m.metrics.push_back(metric_from_json(s));
  m.values = j.at("values").get<std::vector<double>>();
  m.notes = j.at("notes").get<std::vector<std::string>>();
  return m;
}

}  // namespace detail

inline StudyReport report_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != report_schema_version) {
      throw error(errc::parse_error, "unsupported report schema_version " + j.at("schema_version").dump());
    }
    StudyReport r;
    const auto& layout = j.at("layout");
    r.layout.problems = layout.at("problems").get<std::vector<std::string>>();
    r.layout.objective_counts = layout.at("objective_counts").get<std::vector<std::size_t>>();
    r.layout.runs = layout.at("runs").get<std::size_t>();
    r.layout.algorithms = layout.at("algorithms").get<std::vector<std::string>>();
    for (const auto& m : j.at("metrics")) r.metrics.push_back(detail::metric_from_json(m));
    for (const auto& c : j.at("cells")) {
      CellReport cell;
      cell.key = {c.at("problem").get<std::string>(), c.at("objectives").get<std::size_t>()};
      cell.reference_from_union = c.at("reference_from_union").get<bool>();
      cell.matrix = detail::matrix_from_json(c.at("matrix"));
      cell.levels.level_of = c.at("levels").at("level_of").get<std::vector<std::size_t>>();
      cell.levels.level_count = c.at("levels").at("level_count").get<std::size_t>();
      cell.table = detail::table_from_json(c.at("table"));
      cell.ranks = detail::ranks_from_json(c.at("ranks"));
      r.cells.push_back(std::move(cell));
    }
    for (const auto& g : j.at("by_objectives")) r.by_objectives.push_back(detail::group_from_json(g));
    r.overall = detail::group_from_json(j.at("overall"));
    const auto& corr = j.at("correlations");
    for (const auto& m : corr.at("methods")) r.correlations.methods.push_back(detail::method_from_json(m));
    r.correlations.matrix = corr.at("matrix").get<std::vector<std::vector<double>>>();
    r.correlations.average_pairwise = corr.at("average_pairwise").get<std::vector<double>>();
    if (!j.at("baseline").is_null()) r.baseline = detail::rank_from_json(j.at("baseline"));
    r.dropped_cells = j.at("dropped_cells").get<std::vector<std::string>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, std::string("malformed report JSON: ") + e.what());
  }
}

// ---- CSV -----------------------------------------------------------------

inline std::string table_csv(const LevelTable& t) {
  std::string s = "algorithm";
  for (std::size_t l = 0; l < t.level_count(); ++l) s += ",L" + std::to_string(l + 1);
  s += "\n";
  for (std::size_t i = 0; i < t.algorithms.size(); ++i) {
    s += t.algorithms[i];
    for (auto c : t.counts[i]) s += "," + std::to_string(c);
    s += "\n";
  }
  return s;
}

namespace detail {

// Fixed column order: the level methods, average, then the baseline.
inline std::vector<const RankResult*> ordered_columns(const std::vector<RankResult>& ranks, const RankResult* extra) {
  std::vector<const RankResult*> cols;
  for (auto m : {RankMethod::olympic, RankMethod::linear, RankMethod::exponential, RankMethod::adaptive,
                 RankMethod::average}) {
    for (const auto& r : ranks) {
      if (r.method == m) cols.push_back(&r);
    }
  }
  if (extra) cols.push_back(extra);
  return cols;
}

inline std::size_t position_of(const RankResult& r, const std::string& algorithm) {
  auto it = std::find(r.algorithms.begin(), r.algorithms.end(), algorithm);
  if (it == r.algorithms.end()) throw error(errc::algorithm_set_mismatch, "no entry for " + algorithm);
  return static_cast<std::size_t>(it - r.algorithms.begin());
}

}  // namespace detail

inline std::string ranks_csv(const std::vector<std::string>& algorithms, const std::vector<RankResult>& ranks,
                             const RankResult* baseline = nullptr, bool scores = false) {
  const auto cols = detail::ordered_columns(ranks, baseline);
  std::string s = "algorithm";
  for (const auto* c : cols) s += "," + std::string(to_string(c->method));
  s += "\n";
  for (const auto& a : algorithms) {
    s += a;
    for (const auto* c : cols) {
      const auto i = detail::position_of(*c, a);
      s += "," + (scores ? format_double(c->scores[i]) : std::to_string(c->ranks[i]));
    }
    s += "\n";
  }
  return s;
}

// The level column is present only when levels are given.
inline std::string scores_csv(const ScoreMatrix& m, const NdsResult& levels = {}) {
  std::string s = "algorithm,run";
  for (const auto& spec : m.metrics) s += "," + spec.id;
  const bool with_levels = !levels.level_of.empty();
  s += with_levels ? ",level\n" : "\n";
  for (std::size_t r = 0; r < m.row_count(); ++r) {
    s += m.rows[r].algorithm_id + "," + std::to_string(m.rows[r].run_index);
    for (std::size_t c = 0; c < m.column_count(); ++c) s += "," + format_double(m.at(r, c));
    if (with_levels) s += "," + std::to_string(levels.level_of.at(r));
    s += "\n";
  }
  return s;
}

inline std::string correlations_csv(const CorrelationReport& c) {
  std::string s = "method";
  for (auto m : c.methods) s += "," + std::string(to_string(m));
  s += ",average_pairwise\n";
  for (std::size_t i = 0; i < c.methods.size(); ++i) {
    s += std::string(to_string(c.methods[i]));
    for (double v : c.matrix[i]) s += "," + format_double(v);
    s += "," + format_double(c.average_pairwise[i]) + "\n";
  }
  return s;
}

// ---- Markdown ------------------------------------------------------------

namespace detail {

inline std::string method_title(RankMethod m) {
  switch (m) {
    case RankMethod::olympic: return "Olympic";
    case RankMethod::linear: return "Linear";
    case RankMethod::exponential: return "Exponential";
    case RankMethod::adaptive: return "Adaptive";
    case RankMethod::average: return "Average rank";
    case RankMethod::reciprocal_baseline: return "Reciprocal baseline";
  }
  return "?";
}

inline std::string md_row(const std::vector<std::string>& cells) {
  std::string s = "|";
  for (const auto& c : cells) s += " " + c + " |";
  return s + "\n";
}

inline std::string md_rule(std::size_t n) {
  std::string s = "|";
  for (std::size_t i = 0; i < n; ++i) s += " --- |";
  return s + "\n";
}

}  // namespace detail

inline std::string markdown_level_table(const LevelTable& t) {
  std::vector<std::string> head{"Algorithm"};
  for (std::size_t l = 0; l < t.level_count(); ++l) head.push_back("L" + std::to_string(l + 1));
  std::string s = detail::md_row(head) + detail::md_rule(head.size());
  for (std::size_t i = 0; i < t.algorithms.size(); ++i) {
    std::vector<std::string> row{t.algorithms[i]};
    for (auto c : t.counts[i]) row.push_back(std::to_string(c));
    s += detail::md_row(row);
  }
  return s;
}

// One row per algorithm. Cells hold "rank (score)", except the average
// column, whose score is already a mean rank.
inline std::string markdown_rank_table(const std::vector<std::string>& algorithms, const std::vector<RankResult>& ranks,
                                       const RankResult* baseline = nullptr) {
  const auto cols = detail::ordered_columns(ranks, baseline);
  std::vector<std::string> head{"Algorithm"};
  for (const auto* c : cols) head.push_back(detail::method_title(c->method));
  std::string s = detail::md_row(head) + detail::md_rule(head.size());
  for (const auto& a : algorithms) {
    std::vector<std::string> row{a};
    for (const auto* c : cols) {
      const auto i = detail::position_of(*c, a);
      row.push_back(std::to_string(c->ranks[i]) + " (" + format_double(c->scores[i]) + ")");
    }
    s += detail::md_row(row);
  }
  return s;
}

inline std::string markdown_report(const StudyReport& report) {
  std::string s = "# Pareto-level ranking report\n\n";
  s += "Algorithms: " + std::to_string(report.layout.algorithms.size()) +
       ", problems: " + std::to_string(report.layout.problems.size()) + ", runs: " + std::to_string(report.layout.runs) +
       "\n\nMetrics:";
  for (const auto& m : report.metrics) s += " " + m.id;
  s += "\n\n## Overall\n\nLevel counts over " + std::to_string(report.overall.tables_merged) + " cells.\n\n";
  s += markdown_level_table(report.overall.table) + "\n";
  s += markdown_rank_table(report.overall.table.algorithms, report.overall.ranks,
                           report.baseline ? &*report.baseline : nullptr) + "\n";
  if (!report.correlations.methods.empty()) {
    std::vector<std::string> head{"Method"};
    for (auto m : report.correlations.methods) head.push_back(detail::method_title(m));
    head.push_back("Average pairwise");
    s += "Spearman correlation between methods.\n\n" + detail::md_row(head) + detail::md_rule(head.size());
    for (std::size_t i = 0; i < report.correlations.methods.size(); ++i) {
      std::vector<std::string> row{detail::method_title(report.correlations.methods[i])};
      for (double v : report.correlations.matrix[i]) row.push_back(format_double(v));
      row.push_back(format_double(report.correlations.average_pairwise[i]));
      s += detail::md_row(row);
    }
    s += "\n";
  }
  for (const auto& g : report.by_objectives) {
    s += "## " + g.label + "\n\nLevel counts over " + std::to_string(g.tables_merged) + " cells.\n\n";
    s += markdown_level_table(g.table) + "\n" + markdown_rank_table(g.table.algorithms, g.ranks) + "\n";
  }
  s += "## Cells\n\n";
  for (const auto& c : report.cells) {
    s += "### " + cell_label(c.key) + "\n\n" + markdown_level_table(c.table) + "\n" +
         markdown_rank_table(c.table.algorithms, c.ranks) + "\n";
  }
  if (!report.dropped_cells.empty() || !report.notes.empty()) {
    s += "## Notes\n\n";
    for (const auto& d : report.dropped_cells) s += "- dropped incomplete cell " + d + "\n";
    for (const auto& n : report.notes) s += "- " + n + "\n";
  }
  return s;
}

// ---- Report tree ---------------------------------------------------------

struct EmitResult {
  // Paths relative to the output directory, sorted.
  std::vector<std::string> files;
  std::vector<std::string> warnings;
};

inline EmitResult emit_report(const StudyReport& report, const StudyConfig& config) {
  namespace fs = std::filesystem;
  const fs::path& root = config.output_dir;
  EmitResult result;
  auto put = [&](const fs::path& rel, const std::string& text) {
    detail::write_text(root / rel, text);
    result.files.push_back(rel.generic_string());
  };
  const bool csv = config.output.has("csv");

  for (const auto& c : report.cells) {
    const fs::path dir = fs::path("cells") / c.key.problem / ("M" + std::to_string(c.key.objectives));
    if (csv) {
      put(dir / "scores.csv", scores_csv(c.matrix, c.levels));
      put(dir / "table.csv", table_csv(c.table));
      put(dir / "ranks.csv", ranks_csv(c.table.algorithms, c.ranks));
      put(dir / "rank_scores.csv", ranks_csv(c.table.algorithms, c.ranks, nullptr, true));
    }
    if (config.output.radviz || config.output.svg) {
      if (c.matrix.column_count() < 3) {
        result.warnings.push_back("RadViz skipped for " + cell_label(c.key) + ": fewer than 3 metrics");
        continue;
      }
      const auto points = radviz_projection(c.matrix, c.levels);
      if (config.output.radviz) put(dir / "radviz.csv", radviz_csv(points));
      if (config.output.svg) put(dir / "radviz.svg", radviz_svg(points, c.matrix.metrics));
    }
  }
  if (csv) {
    for (const auto& g : report.by_objectives) {
      const fs::path dir = fs::path("by_objectives") / g.label;
      put(dir / "table.csv", table_csv(g.table));
      put(dir / "ranks.csv", ranks_csv(g.table.algorithms, g.ranks));
      put(dir / "rank_scores.csv", ranks_csv(g.table.algorithms, g.ranks, nullptr, true));
    }
    const RankResult* baseline = report.baseline ? &*report.baseline : nullptr;
    const auto& algorithms = report.overall.table.algorithms;
    put("overall/table.csv", table_csv(report.overall.table));
    put("overall/ranks.csv", ranks_csv(algorithms, report.overall.ranks, baseline));
    put("overall/rank_scores.csv", ranks_csv(algorithms, report.overall.ranks, baseline, true));
    put("overall/correlations.csv", correlations_csv(report.correlations));
  }
  if (config.output.has("json")) put("report.json", to_json(report).dump(1) + "\n");
  if (config.output.has("markdown")) put("report.md", markdown_report(report));

  std::sort(result.files.begin(), result.files.end());
  nlohmann::json manifest{{"schema_version", report_schema_version}, {"files", result.files},
                          {"warnings", result.warnings}};
  detail::write_text(root / "manifest.json", manifest.dump(1) + "\n");
  return result;
}

}  // namespace prank
