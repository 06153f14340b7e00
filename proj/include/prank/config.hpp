#pragma once

// Study configuration files (JSON).
//
//   {
//     "data_root": "data",
//     "output_dir": "report",
//     "metrics": ["HV", "IGD", {"id": "PD", "params": {"pd_exact_max": 10}}],
//     "ranking": {"methods": ["olympic", "linear"], "tie_break_order": [],
//                 "report_average": true, "relation": "pareto"},
//     "normalization": true,
//     "reference_mode": "files",
//     "seed": 1,
//     "output": {"formats": ["csv", "json", "markdown"], "radviz": false, "svg": false}
//   }
//
// Relative paths resolve against the directory holding the config file.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "prank/aggregation.hpp"
#include "prank/core.hpp"
#include "prank/dominance.hpp"
#include "prank/indicators.hpp"
#include "prank/ranking.hpp"

namespace prank {

struct OutputOptions {
  std::vector<std::string> formats{"csv", "json", "markdown"};
  bool radviz = false;
  bool svg = false;

  bool has(std::string_view format) const {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
  }

  bool operator==(const OutputOptions&) const = default;
};

struct StudyConfig {
  std::filesystem::path data_root;
  std::filesystem::path output_dir = "report";
  std::vector<MetricSpec> metrics = all_builtin_metrics();
  RankingConfig ranking;
  bool normalization = true;
  ReferenceMode reference_mode = ReferenceMode::files;
  std::uint64_t seed = 1;
  bool allow_missing = false;
  bool baseline = false;
  OutputOptions output;

  bool operator==(const StudyConfig&) const = default;
};

namespace detail {

template <class T>
T json_get(const nlohmann::json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw error(errc::invalid_parameter, std::string("config field '") + key + "' has the wrong type");
  }
}

inline std::vector<RankMethod> parse_methods(const nlohmann::json& list, const char* field) {
  if (!list.is_array()) throw error(errc::invalid_parameter, std::string("config field '") + field + "' must be a list");
  std::vector<RankMethod> out;
  for (const auto& item : list) {
    const auto name = item.is_string() ? item.get<std::string>() : item.dump();
    auto m = parse_rank_method(name);
    if (!m || *m == RankMethod::average || *m == RankMethod::reciprocal_baseline) {
      throw error(errc::invalid_parameter, std::string("unknown ranking method in '") + field + "': " + name);
    }
    out.push_back(*m);
  }
  return out;
}

inline std::filesystem::path resolve_path(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace detail

inline MetricSpec parse_metric_entry(const nlohmann::json& entry, const MetricRegistry& registry) {
  std::string id;
  Parameters params;
  if (entry.is_string()) {
    id = entry.get<std::string>();
  } else if (entry.is_object() && entry.contains("id") && entry["id"].is_string()) {
    id = entry["id"].get<std::string>();
    if (entry.contains("params")) {
      const auto& p = entry["params"];
      if (!p.is_object()) throw error(errc::invalid_parameter, "params of metric " + id + " must be an object");
      for (const auto& [key, value] : p.items()) {
        if (!value.is_number()) throw error(errc::invalid_parameter, "parameter " + key + " of " + id + " must be numeric");
        params[key] = value.get<double>();
      }
    }
  } else {
    throw error(errc::invalid_parameter, "metric entries must be names or {\"id\": ...} objects");
  }
  if (!registry.find(id)) throw error(errc::unknown_metric, "unknown metric: " + id);
  return registry.spec(id, std::move(params));
}

inline std::vector<MetricSpec> parse_metric_list(const std::string& csv, const MetricRegistry& registry) {
  std::vector<MetricSpec> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto comma = csv.find(',', start);
    if (comma == std::string::npos) comma = csv.size();
    const auto name = csv.substr(start, comma - start);
    if (!name.empty()) out.push_back(parse_metric_entry(nlohmann::json(name), registry));
    start = comma + 1;
  }
  if (out.empty()) throw error(errc::invalid_parameter, "metric list is empty");
  return out;
}

inline void validate_config(const StudyConfig& config) {
  if (config.metrics.empty()) throw error(errc::invalid_parameter, "config selects no metrics");
  if (config.output.formats.empty()) throw error(errc::invalid_parameter, "config selects no output format");
  for (const auto& f : config.output.formats) {
    if (f != "csv" && f != "json" && f != "markdown") throw error(errc::invalid_parameter, "unknown output format: " + f);
  }
  if (config.ranking.methods.empty()) throw error(errc::invalid_parameter, "config selects no ranking method");
}

inline StudyConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir,
                                const MetricRegistry& registry = builtin_registry()) {
  if (!j.is_object()) throw error(errc::invalid_parameter, "config must be a JSON object");
  StudyConfig c;
  if (!j.contains("data_root")) throw error(errc::invalid_parameter, "config needs data_root");
  c.data_root = detail::resolve_path(base_dir, detail::json_get<std::string>(j, "data_root", ""));
  c.output_dir = detail::resolve_path(base_dir, detail::json_get<std::string>(j, "output_dir", "report"));
  if (j.contains("metrics")) {
    const auto& list = j["metrics"];
    if (!list.is_array()) throw error(errc::invalid_parameter, "config field 'metrics' must be a list");
    c.metrics.clear();
    for (const auto& entry : list) c.metrics.push_back(parse_metric_entry(entry, registry));
  }
  if (j.contains("ranking")) {
    const auto& r = j["ranking"];
    if (!r.is_object()) throw error(errc::invalid_parameter, "config field 'ranking' must be an object");
    if (r.contains("methods")) c.ranking.methods = detail::parse_methods(r["methods"], "methods");
    if (r.contains("tie_break_order")) c.ranking.tie_break_order = detail::parse_methods(r["tie_break_order"], "tie_break_order");
    c.ranking.report_average = detail::json_get<bool>(r, "report_average", true);
    c.ranking.break_ties = detail::json_get<bool>(r, "break_ties", true);
    const auto relation = detail::json_get<std::string>(r, "relation", "pareto");
    if (relation == "pareto") {
      c.ranking.relation = Relation::pareto;
    } else if (relation == "epsilon") {
      c.ranking.relation = Relation::epsilon;
    } else {
      throw error(errc::invalid_parameter, "unknown relation: " + relation);
    }
  }
  c.normalization = detail::json_get<bool>(j, "normalization", true);
  const auto mode = detail::json_get<std::string>(j, "reference_mode", "files");
  if (mode == "files") {
    c.reference_mode = ReferenceMode::files;
  } else if (mode == "union_fallback") {
    c.reference_mode = ReferenceMode::union_fallback;
  } else {
    throw error(errc::invalid_parameter, "unknown reference_mode: " + mode);
  }
  c.seed = detail::json_get<std::uint64_t>(j, "seed", 1);
  c.allow_missing = detail::json_get<bool>(j, "allow_missing", false);
  c.baseline = detail::json_get<bool>(j, "baseline", false);
  if (j.contains("output")) {
    const auto& o = j["output"];
    if (!o.is_object()) throw error(errc::invalid_parameter, "config field 'output' must be an object");
    c.output.formats = detail::json_get<std::vector<std::string>>(o, "formats", c.output.formats);
    c.output.radviz = detail::json_get<bool>(o, "radviz", false);
    c.output.svg = detail::json_get<bool>(o, "svg", false);
  }
  validate_config(c);
  return c;
}

inline StudyConfig load_config(const std::filesystem::path& path, const MetricRegistry& registry = builtin_registry()) {
  std::ifstream in(path);
  if (!in) throw error(errc::io_error, "cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw error(errc::parse_error, path.string() + ": " + e.what());
  }
  return parse_config(j, path.parent_path(), registry);
}

// Paths are written as given; callers pick relative or absolute ones.
inline nlohmann::json config_to_json(const StudyConfig& c) {
  nlohmann::json j;
  j["data_root"] = c.data_root.generic_string();
  j["output_dir"] = c.output_dir.generic_string();
  j["metrics"] = nlohmann::json::array();
  for (const auto& m : c.metrics) {
    if (m.parameters.empty()) {
      j["metrics"].push_back(m.id);
    } else {
      j["metrics"].push_back({{"id", m.id}, {"params", m.parameters}});
    }
  }
  nlohmann::json methods = nlohmann::json::array();
  for (auto m : c.ranking.methods) methods.push_back(std::string(to_string(m)));
  nlohmann::json order = nlohmann::json::array();
  for (auto m : c.ranking.tie_break_order) order.push_back(std::string(to_string(m)));
  j["ranking"] = {{"methods", methods},
                  {"tie_break_order", order},
                  {"report_average", c.ranking.report_average},
                  {"break_ties", c.ranking.break_ties},
                  {"relation", std::string(to_string(c.ranking.relation))}};
  j["normalization"] = c.normalization;
  j["reference_mode"] = c.reference_mode == ReferenceMode::files ? "files" : "union_fallback";
  j["seed"] = c.seed;
  j["allow_missing"] = c.allow_missing;
  j["baseline"] = c.baseline;
  j["output"] = {{"formats", c.output.formats}, {"radviz", c.output.radviz}, {"svg", c.output.svg}};
  return j;
}

inline StudyOptions study_options(const StudyConfig& c) {
  StudyOptions o;
  o.metrics = c.metrics;
  o.ranking = c.ranking;
  o.normalize = c.normalization;
  o.reference_mode = c.reference_mode;
  o.seed = c.seed;
  o.allow_missing = c.allow_missing;
  o.baseline = c.baseline;
  return o;
}

}  // namespace prank
