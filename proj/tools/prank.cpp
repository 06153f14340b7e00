// prank: command-line front end.
//
//   prank rank --config study.json [--no-normalize] [--metrics HV,IGD] [--seed N] [--epsilon-dominance] [--out DIR]
//   prank indicators --config study.json [same overrides]
//   prank synth --out DIR [--preset demo|grid] [--seed N] [--runs N] [--points N] [--reference-points N]
//   prank verify DATA_ROOT [--metrics ...] [--union-reference]
//
// Exit status: 0 success, 1 validation error, 2 IO error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "prank/prank.hpp"

namespace fs = std::filesystem;

namespace {

struct Overrides {
  std::string config;
  bool no_normalize = false;
  std::string metrics;
  std::optional<std::uint64_t> seed;
  bool epsilon = false;
  std::string out;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "study configuration (JSON)")->required();
  cmd->add_flag("--no-normalize", o.no_normalize, "score raw objective values");
  cmd->add_option("--metrics", o.metrics, "comma-separated metric ids, replacing the configured list");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_flag("--epsilon-dominance", o.epsilon, "sort score vectors with epsilon dominance");
  cmd->add_option("--out", o.out, "output directory, replacing output_dir");
}

prank::StudyConfig resolve_config(const Overrides& o) {
  auto config = prank::load_config(o.config);
  if (o.no_normalize) config.normalization = false;
  if (!o.metrics.empty()) config.metrics = prank::parse_metric_list(o.metrics, prank::builtin_registry());
  if (o.seed) config.seed = *o.seed;
  if (o.epsilon) config.ranking.relation = prank::Relation::epsilon;
  if (!o.out.empty()) config.output_dir = o.out;
  prank::validate_config(config);
  return config;
}

prank::StudyOptions options_for(const prank::StudyConfig& config) {
  auto options = prank::study_options(config);
  options.threads = prank::configured_threads();
  return options;
}

int cmd_rank(const Overrides& o) {
  const auto config = resolve_config(o);
  const auto study = prank::load_study(config.data_root, config.allow_missing);
  const auto report = prank::run_study(study, options_for(config));
  const auto written = prank::emit_report(report, config);
  for (const auto& w : written.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& d : report.dropped_cells) std::cerr << "warning: dropped incomplete cell " << d << "\n";
  return 0;
}

int cmd_indicators(const Overrides& o) {
  const auto config = resolve_config(o);
  const auto study = prank::load_study(config.data_root, config.allow_missing);
  auto options = options_for(config);
  prank::ScoreOptions score;
  score.seed = options.seed;
  score.normalize = options.normalize;
  score.threads = options.threads;
  score.algorithm_order = study.layout.algorithms;
  std::vector<std::string> files;
  for (const auto& [key, fronts] : study.fronts) {
    auto ref = study.references.find(key);
    if (ref == study.references.end() && config.reference_mode != prank::ReferenceMode::union_fallback) {
      throw prank::error(prank::errc::missing_reference, "no reference set for " + prank::cell_label(key));
    }
    const auto reference = ref != study.references.end() ? ref->second : prank::union_reference(fronts);
    const auto matrix = prank::compute_score_matrix(fronts, reference, config.metrics, score);
    const auto rel = fs::path("cells") / key.problem / ("M" + std::to_string(key.objectives)) / "scores.csv";
    prank::detail::write_text(config.output_dir / rel, prank::scores_csv(matrix));
    files.push_back(rel.generic_string());
  }
  nlohmann::json manifest{{"schema_version", prank::report_schema_version}, {"files", files}, {"warnings", nlohmann::json::array()}};
  prank::detail::write_text(config.output_dir / "manifest.json", manifest.dump(1) + "\n");
  return 0;
}

struct SynthArgs {
  std::string out;
  std::string preset = "demo";
  std::uint64_t seed = 1;
  std::optional<std::size_t> runs, points, reference_points;
};

// Ten algorithms of graded noise and spread deficit on fifteen problems
// cycling through the three geometries.
prank::SyntheticStudySpec grid_spec() {
  prank::SyntheticStudySpec spec;
  for (int a = 0; a < 10; ++a) {
    spec.algorithms.push_back({"alg" + std::string(a < 9 ? "0" : "") + std::to_string(a + 1), 0.04 * a, 0.05 * (a % 4)});
  }
  const prank::Geometry geometries[] = {prank::Geometry::linear, prank::Geometry::concave, prank::Geometry::convex};
  for (int p = 0; p < 15; ++p) {
    spec.problems.push_back({"P" + std::string(p < 9 ? "0" : "") + std::to_string(p + 1), geometries[p % 3]});
  }
  spec.objective_counts = {2, 3, 4};
  spec.runs = 20;
  spec.points_per_front = 10;
  spec.reference_points = 100;
  return spec;
}

int cmd_synth(const SynthArgs& a) {
  prank::SyntheticStudySpec spec;
  prank::StudyConfig config;
  if (a.preset == "demo") {
    spec = prank::demo_study_spec();
    config.metrics.clear();
    for (const char* id : {"HV", "GD", "IGD", "C", "CPF", "DeltaP"}) config.metrics.push_back(prank::builtin_metric(id));
    config.output.radviz = true;
    config.output.svg = true;
  } else if (a.preset == "grid") {
    spec = grid_spec();
    config.baseline = true;
  } else {
    throw prank::error(prank::errc::invalid_parameter, "unknown preset: " + a.preset);
  }
  spec.seed = a.seed;
  if (a.runs) spec.runs = *a.runs;
  if (a.points) spec.points_per_front = *a.points;
  if (a.reference_points) spec.reference_points = *a.reference_points;
  const fs::path out(a.out);
  prank::write_study(out / "data", prank::make_synthetic_study(spec));
  config.data_root = "data";
  config.output_dir = "report";
  config.seed = a.seed;
  prank::detail::write_text(out / "study.json", prank::config_to_json(config).dump(2) + "\n");
  return 0;
}

int cmd_verify(const std::string& root, const std::string& metrics, bool union_reference) {
  const auto study = prank::load_study(root);
  prank::StudyOptions options;
  options.threads = prank::configured_threads();
  if (!metrics.empty()) options.metrics = prank::parse_metric_list(metrics, prank::builtin_registry());
  if (union_reference) options.reference_mode = prank::ReferenceMode::union_fallback;
  const auto result = prank::oracle::verify_study(study, options);
  for (const auto& f : result.failures) std::cerr << "mismatch: " << f << "\n";
  std::cerr << result.checks << " checks, " << result.failures.size() << " mismatches\n";
  return result.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pareto-level ranking of multi-objective optimizers"};
  app.require_subcommand(1);

  Overrides rank_args, indicator_args;
  auto* rank = app.add_subcommand("rank", "full pipeline: scores, levels, rankings and report tree");
  add_overrides(rank, rank_args);
  auto* indicators = app.add_subcommand("indicators", "score matrices only");
  add_overrides(indicators, indicator_args);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "write a synthetic study (data, references, study.json)");
  synth->add_option("--out", synth_args.out, "destination directory")->required();
  synth->add_option("--preset", synth_args.preset, "demo or grid")->check(CLI::IsMember({"demo", "grid"}));
  synth->add_option("--seed", synth_args.seed, "master seed");
  synth->add_option("--runs", synth_args.runs, "runs per algorithm");
  synth->add_option("--points", synth_args.points, "points per front");
  synth->add_option("--reference-points", synth_args.reference_points, "points per reference set");

  std::string verify_root, verify_metrics;
  bool verify_union = false;
  auto* verify = app.add_subcommand("verify", "check fast code paths against brute-force oracles on a data root");
  verify->add_option("data_root", verify_root, "study data directory")->required();
  verify->add_option("--metrics", verify_metrics, "metrics for the NDS check");
  verify->add_flag("--union-reference", verify_union, "build missing reference sets from the fronts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return 1;
  }

  try {
    if (*rank) return cmd_rank(rank_args);
    if (*indicators) return cmd_indicators(indicator_args);
    if (*synth) return cmd_synth(synth_args);
    if (*verify) return cmd_verify(verify_root, verify_metrics, verify_union);
  } catch (const prank::error& e) {
    std::cerr << "error: " << prank::to_string(e.code()) << ": " << e.what() << "\n";
    return e.is_io() ? 2 : 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: IoError: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
