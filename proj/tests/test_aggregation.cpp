#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "prank/aggregation.hpp"
#include "prank/random.hpp"
#include "prank/synth.hpp"

using namespace prank;

namespace {

LevelTable table(std::vector<std::vector<std::size_t>> counts, std::vector<std::string> algs = {}) {
  if (algs.empty()) {
    for (std::size_t i = 0; i < counts.size(); ++i) algs.push_back("a" + std::to_string(i + 1));
  }
  return LevelTable{std::move(algs), std::move(counts)};
}

LevelTable random_table(Rng& rng, std::size_t algorithms, std::size_t runs) {
  const std::size_t levels = 1 + rng.below(6);
  LevelTable t = table(std::vector<std::vector<std::size_t>>(algorithms, std::vector<std::size_t>(levels, 0)));
  for (auto& row : t.counts) {
    for (std::size_t r = 0; r < runs; ++r) ++row[rng.below(levels)];
  }
  return t;
}

LevelTable trim(LevelTable t) {
  while (t.level_count() > 0) {
    bool empty = true;
    for (const auto& row : t.counts) empty = empty && row.back() == 0;
    if (!empty) break;
    for (auto& row : t.counts) row.pop_back();
  }
  return t;
}

StudyOptions quick_options(std::vector<std::string> metrics = {"HV", "GD", "IGD", "C"}) {
  StudyOptions o;
  o.metrics.clear();
  for (const auto& id : metrics) o.metrics.push_back(builtin_metric(id));
  return o;
}

SyntheticStudySpec small_spec() {
  SyntheticStudySpec spec;
  spec.algorithms = {{"good", 0.0, 0.0}, {"fair", 0.3, 0.0}, {"poor", 0.6, 0.0}};
  spec.problems = {{"lin", Geometry::linear}, {"cav", Geometry::concave}};
  spec.objective_counts = {2, 3};
  spec.runs = 6;
  spec.points_per_front = 15;
  spec.reference_points = 100;
  return spec;
}

}  // namespace

TEST_CASE("merge worked examples") {
  CHECK(merge_tables({table({{20}}), table({{12, 8}})}).counts[0] == std::vector<std::size_t>{32, 8});
  CHECK(merge_tables({table({{120, 80}}), table({{100, 55, 45}})}).counts[0] == std::vector<std::size_t>{220, 135, 45});
}

TEST_CASE("merging with a zero-padded copy doubles the counts") {
  const auto t = table({{3, 2}, {1, 4}});
  const auto padded = table({{3, 2, 0, 0}, {1, 4, 0, 0}});
  CHECK(trim(merge_tables({t, padded})) == table({{6, 4}, {2, 8}}));
}

TEST_CASE("merge aligns algorithms by name") {
  const auto a = table({{5, 0}, {2, 3}}, {"x", "y"});
  const auto b = table({{1, 4}, {5, 0}}, {"y", "x"});
  CHECK(merge_tables({a, b}).counts == std::vector<std::vector<std::size_t>>{{10, 0}, {3, 7}});
  CHECK_THROWS_AS(merge_tables({a, table({{5}, {5}}, {"x", "z"})}), error);
  CHECK_THROWS_AS(merge_tables({a, table({{5}}, {"x"})}), error);
  CHECK_THROWS_AS(merge_tables({}), error);
}

TEST_CASE("merge is associative and commutative and conserves points") {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_table(rng, 4, 20), b = random_table(rng, 4, 20), c = random_table(rng, 4, 20);
    const auto left = merge_tables({merge_tables({a, b}), c});
    const auto right = merge_tables({a, merge_tables({b, c})});
    CHECK(trim(left) == trim(right));
    CHECK(trim(merge_tables({a, b})) == trim(merge_tables({b, a})));
    CHECK(trim(left) == trim(merge_tables({a, b, c})));
    std::size_t total = 0;
    for (std::size_t i = 0; i < left.algorithms.size(); ++i) {
      CHECK(left.row_sum(i) == 60);
      total += left.row_sum(i);
    }
    CHECK(total == 4 * 20 * 3);
  }
}

TEST_CASE("run_study produces the three granularities") {
  const auto study = make_synthetic_study(small_spec());
  const auto report = run_study(study, quick_options());
  CHECK(report.cells.size() == 4);
  CHECK(report.by_objectives.size() == 2);
  CHECK(report.overall.tables_merged == 4);
  for (const auto& cell : report.cells) {
    CHECK(cell.matrix.row_count() == 18);
    for (std::size_t i = 0; i < 3; ++i) CHECK(cell.table.row_sum(i) == 6);
    CHECK(cell.ranks.size() == 5);
  }
  for (const auto& g : report.by_objectives) {
    for (std::size_t i = 0; i < 3; ++i) CHECK(g.table.row_sum(i) == 12);
  }
  for (std::size_t i = 0; i < 3; ++i) CHECK(report.overall.table.row_sum(i) == 24);
  CHECK(report.correlations.methods.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(report.correlations.matrix[i][i] == 1.0);
  CHECK_FALSE(report.baseline);
}

TEST_CASE("run_study is deterministic and thread independent") {
  const auto study = make_synthetic_study(small_spec());
  auto options = quick_options({"HV", "IGD", "PD", "SP", "DM"});
  const auto a = run_study(study, options);
  options.threads = 3;
  CHECK(run_study(study, options) == a);
}

TEST_CASE("a single cell equals the overall result") {
  auto spec = small_spec();
  spec.problems.resize(1);
  spec.objective_counts = {3};
  const auto report = run_study(make_synthetic_study(spec), quick_options());
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].table == report.overall.table);
  CHECK(report.cells[0].ranks == report.overall.ranks);
  CHECK(report.by_objectives[0].ranks == report.overall.ranks);
}

TEST_CASE("an algorithm dominating on every run is ranked first everywhere") {
  Study study;
  study.layout = {{"p1", "p2"}, {3}, 5, {"other", "best", "third"}};
  Rng rng(52);
  for (const auto& p : study.layout.problems) {
    const CellKey key{p, 3};
    study.references[key] = generate_reference(Geometry::linear, 3, 100, rng());
    for (std::size_t run = 1; run <= 5; ++run) {
      const auto base = generate_front(Geometry::linear, 3, 10, 0.0, 0.0, rng()).points;
      std::vector<ObjectiveVector> best = base, worse = base, worst = base;
      for (auto& q : worse) {
        for (auto& v : q) v += 0.2;
      }
      for (auto& q : worst) {
        for (auto& v : q) v += 0.25 + 0.05 * static_cast<double>(run);
      }
      study.fronts[key].push_back({worse, "other", p, run});
      study.fronts[key].push_back({best, "best", p, run});
      study.fronts[key].push_back({worst, "third", p, run});
    }
  }
  const auto report = run_study(study, quick_options());
  auto check_first = [](const std::vector<RankResult>& ranks) {
    for (const auto& r : ranks) CHECK(r.rank_of("best") == 1);
  };
  for (const auto& c : report.cells) {
    CHECK(c.table.counts[0][0] == 0);
    CHECK(c.table.counts[2][0] == 0);
    check_first(c.ranks);
  }
  for (const auto& g : report.by_objectives) check_first(g.ranks);
  check_first(report.overall.ranks);
}

TEST_CASE("incomplete grids are rejected or dropped") {
  auto study = make_synthetic_study(small_spec());
  auto& fronts = study.fronts.at(CellKey{"cav", 2});
  fronts.erase(std::remove_if(fronts.begin(), fronts.end(),
                              [](const Front& f) { return f.algorithm_id == "fair" && f.run_index == 3; }),
               fronts.end());
  auto options = quick_options();
  try {
    run_study(study, options);
    FAIL("expected MissingRun");
  } catch (const error& e) {
    CHECK(e.code() == errc::missing_run);
  }
  options.allow_missing = true;
  const auto report = run_study(study, options);
  CHECK(report.cells.size() == 3);
  CHECK(report.dropped_cells == std::vector<std::string>{"cav/M2"});
  for (std::size_t i = 0; i < 3; ++i) CHECK(report.overall.table.row_sum(i) == 18);
}

TEST_CASE("missing reference sets need the union fallback") {
  auto study = make_synthetic_study(small_spec());
  study.references.erase(CellKey{"lin", 3});
  auto options = quick_options();
  try {
    run_study(study, options);
    FAIL("expected MissingReference");
  } catch (const error& e) {
    CHECK(e.code() == errc::missing_reference);
  }
  options.reference_mode = ReferenceMode::union_fallback;
  const auto report = run_study(study, options);
  const auto it = std::find_if(report.cells.begin(), report.cells.end(),
                               [](const CellReport& c) { return c.key == CellKey{"lin", 3}; });
  REQUIRE(it != report.cells.end());
  CHECK(it->reference_from_union);
  CHECK(std::any_of(report.notes.begin(), report.notes.end(),
                    [](const std::string& n) { return n.find("lin/M3") != std::string::npos; }));
}

TEST_CASE("union reference is the non-dominated union") {
  const std::vector<Front> fronts{{{{0, 1}, {0.5, 0.5}, {1, 1}}, "a", "p", 1}, {{{0.4, 0.4}, {1, 0}}, "b", "p", 1}};
  const auto ref = union_reference(fronts);
  CHECK(ref.points.size() == 3);
  CHECK(ref.ideal == ObjectiveVector{0, 0});
  CHECK(ref.nadir == ObjectiveVector{1, 1});
  CHECK(ref.notes == std::vector<std::string>{"union_fallback"});
}

TEST_CASE("the reciprocal baseline uses HV and IGD means") {
  auto options = quick_options({"GD", "C"});
  options.baseline = true;
  const auto study = make_synthetic_study(small_spec());
  const auto report = run_study(study, options);
  REQUIRE(report.baseline);
  CHECK(report.baseline->method == RankMethod::reciprocal_baseline);
  double total = 0;
  for (double s : report.baseline->scores) total += s;
  // Eight (cell, indicator) pairs; each distributes 1 + 1/2 + 1/3 when untied.
  CHECK(total == Catch::Approx(8 * (1 + 0.5 + 1.0 / 3.0)));
  CHECK(report.baseline->rank_of("good") == 1);
}

TEST_CASE("run_study validates its options") {
  const auto study = make_synthetic_study(small_spec());
  auto options = quick_options();
  options.metrics.clear();
  CHECK_THROWS_AS(run_study(study, options), error);
  options = quick_options();
  options.ranking.methods.clear();
  CHECK_THROWS_AS(run_study(study, options), error);
}

TEST_CASE("epsilon relation runs end to end") {
  const auto study = make_synthetic_study(small_spec());
  auto options = quick_options();
  options.ranking.relation = Relation::epsilon;
  const auto report = run_study(study, options);
  for (std::size_t i = 0; i < 3; ++i) CHECK(report.overall.table.row_sum(i) == 24);
  CHECK(report.overall.ranks.front().rank_of("good") == 1);
}
