// Acceptance harness: one PASS/FAIL line per criterion.
//
//   acceptance <path-to-prank-cli> <work-dir>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "prank/prank.hpp"

namespace fs = std::filesystem;
using namespace prank;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<ObjectiveVector> random_points(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<ObjectiveVector> pts(n, ObjectiveVector(m));
  for (auto& p : pts) {
    for (auto& v : p) v = rng.uniform();
  }
  return pts;
}

Outcome golden_examples() {
  Outcome o;
  const auto t0 = Clock::now();
  const LevelTable t{{"a1", "a2"}, {{20, 10, 1}, {15, 14, 2}}};
  const auto lin = linear_rank(t), ex = exponential_rank(t), ad = adaptive_rank(t), ol = olympic_rank(t);
  o.require(lin.scores == std::vector<double>{81, 75}, "linear scores");
  o.require(ex.scores == std::vector<double>{25.25, 22.5}, "exponential scores");
  o.require(close(ad.scores[0], 1.58, 0.005) && close(ad.scores[1], 1.42, 0.005), "adaptive scores");
  o.require(ol.ranks == std::vector<int>{1, 2}, "olympic ordering");
  const double s = seconds_since(t0);
  o.require(s < 1.0, "runtime");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("linear 81/75, exponential 25.25/22.5, adaptive ") +
              format_double(ad.scores[0]) + "/" + format_double(ad.scores[1]);
  return o;
}

Outcome aggregation_examples() {
  Outcome o;
  const auto a = merge_tables({LevelTable{{"x"}, {{20}}}, LevelTable{{"x"}, {{12, 8}}}});
  const auto b = merge_tables({LevelTable{{"x"}, {{120, 80}}}, LevelTable{{"x"}, {{100, 55, 45}}}});
  o.require(a.counts[0] == std::vector<std::size_t>{32, 8}, "(32, 8)");
  o.require(b.counts[0] == std::vector<std::size_t>{220, 135, 45}, "(220, 135, 45)");
  return o;
}

Outcome adaptive_identity() {
  Outcome o;
  Rng rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t algorithms = 1 + rng.below(12), levels = 1 + rng.below(20);
    LevelTable t;
    for (std::size_t i = 0; i < algorithms; ++i) {
      t.algorithms.push_back("a" + std::to_string(i));
      std::vector<std::size_t> row(levels);
      for (auto& c : row) c = rng.below(51);
      t.counts.push_back(row);
    }
    if (t.counts[0][0] == 0) t.counts[0][0] = 1;
    double sum = 0.0;
    for (double s : adaptive_rank(t).scores) sum += s;
    worst = std::max(worst, std::abs(sum - static_cast<double>(levels)));
  }
  o.require(worst <= 1e-9, "sum deviates from L");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("max |sum - L| = ") + format_double(worst);
  return o;
}

Outcome nds_oracle() {
  Outcome o;
  Rng rng(1002);
  const auto t0 = Clock::now();
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(200), m = 1 + rng.below(10);
    auto pts = random_points(rng, n, m);
    // Coarse grids force duplicates and ties.
    if (trial % 3 == 0) {
      for (auto& p : pts) {
        for (auto& v : p) v = std::floor(v * 4.0);
      }
    }
    const auto relation = trial % 2 ? Relation::epsilon : Relation::pareto;
    if (nds(pts, relation).level_of != oracle::peel_levels(pts, relation)) ++mismatches;
  }
  const double s = seconds_since(t0);
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatching instances");
  o.require(s < 30.0, "runtime");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("500 instances in ") + fixed(s, 2) + " s";
  return o;
}

Outcome transform_invariance() {
  Outcome o;
  Rng rng(1003);
  const auto& builtins = builtin_metrics();
  for (int trial = 0; trial < 200; ++trial) {
    ScoreMatrix m;
    const std::size_t cols = 2 + rng.below(5), algorithms = 2 + rng.below(5), runs = 1 + rng.below(8);
    for (std::size_t c = 0; c < cols; ++c) m.metrics.push_back(builtin_metric(builtins[rng.below(builtins.size())].first));
    for (std::size_t a = 0; a < algorithms; ++a) {
      for (std::size_t r = 1; r <= runs; ++r) m.rows.push_back({"alg" + std::to_string(a), r});
    }
    for (std::size_t k = 0; k < m.rows.size() * cols; ++k) m.values.push_back(0.05 + std::floor(rng.uniform() * 6.0) / 3.0);
    const auto t1 = build_level_table(m, Relation::pareto, OrientationTransform::negate);
    const auto t2 = build_level_table(m, Relation::pareto, OrientationTransform::reciprocal);
    o.require(t1 == t2, "level table differs on trial " + std::to_string(trial));
    o.require(rank_all(t1, RankingConfig{}) == rank_all(t2, RankingConfig{}), "ranks differ on trial " + std::to_string(trial));
  }
  return o;
}

Outcome indicator_oracles() {
  Outcome o;
  namespace ind = indicators;
  const double tol = 1e-9;
  auto near = [&](double got, double want, const char* what) { o.require(close(got, want, tol), what); };
  const ObjectiveVector r2{1.1, 1.1};

  near(hypervolume_exact({{0, 0}}, r2), 1.21, "HV single point");
  near(hypervolume_exact({{0.5, 0.5}}, r2), 0.36, "HV centre");
  near(hypervolume_exact({{0.2, 0.8}, {0.8, 0.2}}, r2), 0.45, "HV two points");
  near(hypervolume_exact({{0.5, 0.5, 0.5}}, {1.1, 1.1, 1.1}), 0.216, "HV 3-D");
  near(ind::generational_distance({{3, 4}}, {{0, 0}}), 5.0, "GD");
  near(ind::generational_distance({{1, 0}, {0, 1}}, {{0, 0}}), std::sqrt(2.0) / 2.0, "GD two points");
  near(ind::inverted_generational_distance({{0, 0}}, {{1, 0}, {0, 1}}), std::sqrt(2.0) / 2.0, "IGD");
  near(ind::coverage({{0, 0}}, {{1, 1}, {2, 0.5}}), 1.0, "C full");
  near(ind::coverage({{0.5, 0.5}}, {{0.6, 0.6}, {0.1, 0.9}, {0.9, 0.1}, {0.4, 0.4}}), 0.25, "C quarter");

  std::vector<ObjectiveVector> grid;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) grid.push_back({i / 9.0, j / 9.0});
  }
  const ReferenceSet ref{grid, {0, 0}, {1, 1}, {}};
  const Front same{grid, "a", "p", 1}, one{{{0.3, 0.3}}, "a", "p", 1};
  IndicatorContext ctx{&same, &ref, {}, 1, nullptr};
  near(ind::cpf(ctx), 1.0, "CPF identical");
  ctx.front = &one;
  near(ind::cpf(ctx), 0.01, "CPF single point");

  const ReferenceSet origin{{{0, 0}}, {0, 0}, {4, 4}, {}};
  const Front far{{{3, 4}}, "a", "p", 1};
  ctx = {&far, &origin, {}, 1, nullptr};
  near(ind::delta_p(ctx), 5.0, "DeltaP");

  near(ind::pure_diversity({{0, 0}, {3, 4}}), 5.0, "PD pair");
  near(ind::pure_diversity({{0}, {1}, {3}}), 4.0, "PD triple");
  near(ind::spacing({{0}, {1}, {3}}), std::sqrt(1.0 / 3.0), "SP");
  near(ind::spacing({{0}, {1}, {2}, {3}}), 0.0, "SP uniform");
  near(ind::overall_spread({{0.1, 0.5}, {0.6, 0.1}}, {0, 0}, {1, 1}), 0.2, "OS");
  near(ind::overall_spread({{1, 2}, {2, 6}}, {0, 0}, {2, 8}), 0.25, "OS scaled");
  const double ratio = std::sqrt(0.5) / 1.5;
  near(ind::distribution_metric({{0, 3}, {1, 2}, {3, 0}}, {0, 0}, {1, 1}), (ratio / 3 + ratio / 3) / 3, "DM");
  near(ind::distribution_metric({{0, 1}, {0.5, 0.5}, {1, 0}}, {0, 0}, {1, 1}), 0.0, "DM uniform");

  Rng rng(1004);
  double worst = 0.0;
  for (std::size_t m : {2u, 3u}) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<ObjectiveVector> pts = random_points(rng, 20, m);
      const ObjectiveVector r(m, 1.1);
      const double exact = hypervolume_exact(pts, r);
      const double mc = hypervolume_monte_carlo(pts, r, 100000, rng());
      worst = std::max(worst, std::abs(mc - exact) / exact);
    }
  }
  o.require(worst <= 0.01, "Monte Carlo HV off by more than 1%");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("worst MC relative error ") + format_double(worst);
  return o;
}

Outcome pd_recursion() {
  Outcome o;
  std::size_t subsets = 0, mismatches = 0, greedy_mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed * 7919);
    const auto pts = random_points(rng, 6, 2 + rng.below(3));
    for (unsigned mask = 1; mask < 64; ++mask) {
      std::vector<ObjectiveVector> subset;
      for (unsigned k = 0; k < 6; ++k) {
        if (mask >> k & 1) subset.push_back(pts[k]);
      }
      ++subsets;
      const double want = oracle::pd_exhaustive(subset);
      if (!close(indicators::pure_diversity(subset), want, 1e-9 * std::max(1.0, want))) ++mismatches;
      if (!close(indicators::pure_diversity_greedy(subset), want, 1e-9 * std::max(1.0, want))) ++greedy_mismatches;
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " PD mismatches");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(subsets) + " subsets, PD exact on all; greedy fallback differs on " +
              std::to_string(greedy_mismatches);
  return o;
}

Outcome synthetic_ordering() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto study = make_synthetic_study(demo_study_spec());
  StudyOptions options;
  options.metrics.clear();
  for (const char* id : {"HV", "GD", "IGD", "C", "CPF", "DeltaP"}) options.metrics.push_back(builtin_metric(id));
  options.threads = configured_threads();
  const auto report = run_study(study, options);
  std::size_t checked = 0;
  auto check = [&](const std::vector<RankResult>& ranks, const std::string& where) {
    for (const auto& r : ranks) {
      const bool ok = r.rank_of("clean") == 1 && r.rank_of("noisy") == 2 && r.rank_of("noisier") == 3;
      o.require(ok, where + " " + std::string(to_string(r.method)));
      ++checked;
    }
  };
  for (const auto& c : report.cells) check(c.ranks, cell_label(c.key));
  for (const auto& g : report.by_objectives) check(g.ranks, g.label);
  check(report.overall.ranks, "overall");
  const double s = seconds_since(t0);
  o.require(s < 120.0, "runtime");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(checked) + " rankings in " +
              fixed(s, 2) + " s";
  return o;
}

std::vector<std::pair<std::string, std::string>> tree(const fs::path& root) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out.emplace_back(fs::relative(e.path(), root).generic_string(), slurp(e.path()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome determinism(const std::string& cli, const fs::path& work) {
  Outcome o;
  const auto dir = work / "determinism";
  fs::remove_all(dir);
  const std::string q = "\"";
  o.require(shell(q + cli + q + " synth --out " + q + dir.string() + q) == 0, "synth failed");
  const std::string config = q + (dir / "study.json").string() + q;
  o.require(shell("PARETO_RANK_THREADS=1 " + q + cli + q + " rank --config " + config + " --out " + q + (dir / "a").string() + q) == 0,
            "first rank failed");
  o.require(shell("PARETO_RANK_THREADS=3 " + q + cli + q + " rank --config " + config + " --out " + q + (dir / "b").string() + q) == 0,
            "second rank failed");
  if (!o.pass) return o;
  const auto a = tree(dir / "a"), b = tree(dir / "b");
  o.require(!a.empty(), "empty report tree");
  o.require(a == b, "report trees differ");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(a.size()) + " files identical";
  return o;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

bool row_sums_are(const fs::path& table, std::size_t algorithms, std::size_t expected) {
  const auto rows = read_csv(table);
  if (rows.size() != algorithms + 1) return false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::size_t sum = 0;
    for (std::size_t k = 1; k < rows[i].size(); ++k) sum += std::stoul(rows[i][k]);
    if (sum != expected || rows[i].size() != rows[0].size()) return false;
  }
  return true;
}

Outcome report_shapes(const std::string& cli, const fs::path& work) {
  Outcome o;
  const auto dir = work / "grid";
  fs::remove_all(dir);
  const auto t0 = Clock::now();
  const std::string q = "\"";
  o.require(shell(q + cli + q + " synth --preset grid --out " + q + dir.string() + q) == 0, "grid synth failed");
  o.require(shell(q + cli + q + " rank --config " + q + (dir / "study.json").string() + q) == 0, "grid rank failed");
  if (!o.pass) return o;
  const auto report = dir / "report";
  o.require(row_sums_are(report / "overall/table.csv", 10, 900), "overall row sums are not 900");
  for (const char* m : {"M2", "M3", "M4"}) {
    o.require(row_sums_are(report / "by_objectives" / m / "table.csv", 10, 300), std::string(m) + " row sums are not 300");
  }
  std::size_t cells = 0;
  for (const auto& p : fs::directory_iterator(report / "cells")) {
    for (const auto& m : fs::directory_iterator(p.path())) {
      ++cells;
      o.require(row_sums_are(m.path() / "table.csv", 10, 20), m.path().string() + " row sums are not 20");
    }
  }
  o.require(cells == 45, "expected 45 cells");
  const auto ranks = read_csv(report / "overall/ranks.csv");
  const std::vector<std::string> header{"algorithm", "olympic", "linear", "exponential", "adaptive", "average",
                                        "reciprocal_baseline"};
  o.require(!ranks.empty() && ranks[0] == header, "overall ranks header");
  o.require(ranks.size() == 11, "overall ranks rows");
  const auto grid_levels = read_csv(report / "overall/table.csv")[0].size() - 1;

  // 18-level capacity, using the published overall level counts.
  const LevelTable cec{{"AGE-II", "AMPDEA", "BCE-IBEA", "CVEA3", "fastCAR", "HHcMOEA", "KnEA", "RPEA", "RSEA", "RVEA"},
                       {{601, 127, 59, 35, 15, 34, 17, 2, 0, 0, 9, 1, 0, 0, 0, 0, 0, 0},
                        {571, 166, 97, 40, 19, 6, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                        {618, 134, 89, 37, 14, 5, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                        {619, 136, 86, 33, 13, 4, 4, 3, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                        {747, 83, 31, 15, 4, 3, 0, 3, 0, 3, 7, 1, 0, 0, 3, 0, 0, 0},
                        {747, 53, 30, 12, 8, 15, 13, 8, 1, 0, 10, 3, 0, 0, 0, 0, 0, 0},
                        {595, 142, 86, 37, 13, 4, 4, 4, 4, 4, 3, 2, 1, 1, 0, 0, 0, 0},
                        {467, 152, 102, 60, 43, 29, 13, 13, 9, 8, 3, 1, 0, 0, 0, 0, 0, 0},
                        {517, 165, 99, 48, 28, 17, 11, 6, 8, 1, 0, 0, 0, 0, 0, 0, 0, 0},
                        {513, 135, 125, 44, 29, 14, 5, 8, 4, 2, 1, 5, 2, 2, 4, 4, 2, 1}}};
  const auto cec_path = work / "cec_table.csv";
  detail::write_text(cec_path, table_csv(cec));
  o.require(row_sums_are(cec_path, 10, 900), "18-level table row sums");
  o.require(read_csv(cec_path)[0].size() == 19 && read_csv(cec_path)[0].back() == "L18", "18-level table header");
  const auto cec_ranks = rank_all(cec, RankingConfig{});
  o.require(cec_ranks.size() == 5 && cec_ranks[4].ranks == std::vector<int>{7, 6, 3, 4, 1, 2, 5, 10, 8, 9},
            "18-level table ranks");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("10x15x3x20 grid, ") + std::to_string(grid_levels) +
              " overall levels, " + fixed(seconds_since(t0), 1) + " s";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <prank-cli> <work-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path work = argv[2];
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden worked examples", golden_examples},
      {"aggregation golden examples", aggregation_examples},
      {"adaptive identity on 1000 tables", adaptive_identity},
      {"NDS oracle equivalence on 500 instances", nds_oracle},
      {"monotone-transform invariance on 200 matrices", transform_invariance},
      {"indicator hand oracles", indicator_oracles},
      {"PD recursion on subsets of size <= 6", pd_recursion},
      {"synthetic end-to-end ordering", synthetic_ordering},
      {"determinism of the rank command", [&] { return determinism(cli, work); }},
      {"report tree shapes on the full grid", [&] { return report_shapes(cli, work); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << std::endl;
  }
  return failed ? 1 : 0;
}
