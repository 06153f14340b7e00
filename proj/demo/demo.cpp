// Ranks three synthetic optimizers on two problems and prints the overall
// Pareto-level table and rankings.

#include <iostream>

#include "prank/prank.hpp"

int main() {
  prank::SyntheticStudySpec spec;
  spec.algorithms = {{"steady", 0.05, 0.0}, {"narrow", 0.05, 0.5}, {"sloppy", 0.4, 0.0}};
  spec.problems = {{"dtlz1-like", prank::Geometry::linear}, {"dtlz2-like", prank::Geometry::concave}};
  spec.objective_counts = {3};
  spec.runs = 10;
  spec.points_per_front = 30;
  spec.reference_points = 200;

  prank::StudyOptions options;
  options.metrics = {prank::builtin_metric("HV"), prank::builtin_metric("IGD"), prank::builtin_metric("PD"),
                     prank::builtin_metric("OS")};
  options.baseline = true;
  const auto report = prank::run_study(prank::make_synthetic_study(spec), options);

  std::cout << prank::markdown_level_table(report.overall.table) << "\n"
            << prank::markdown_rank_table(report.overall.table.algorithms, report.overall.ranks, &*report.baseline);
  return 0;
}
