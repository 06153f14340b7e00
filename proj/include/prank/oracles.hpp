#pragma once

// Slow, direct reference implementations used to cross-check the fast code
// paths. They share no code with the library beyond the data types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "prank/aggregation.hpp"
#include "prank/core.hpp"
#include "prank/dominance.hpp"
#include "prank/hypervolume.hpp"
#include "prank/indicators.hpp"
#include "prank/ranking.hpp"

namespace prank::oracle {

inline bool pareto_better(const ObjectiveVector& x, const ObjectiveVector& y) {
  bool strict = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) return false;
    if (x[i] < y[i]) strict = true;
  }
  return strict;
}

inline bool epsilon_better(const ObjectiveVector& x, const ObjectiveVector& y) {
  int better = 0, worse = 0;
  double nx = 0.0, ny = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    better += x[i] < y[i];
    worse += x[i] > y[i];
    nx += x[i] * x[i];
    ny += y[i] * y[i];
  }
  return better - worse > 0 && nx < ny;
}

// Repeatedly strips the points no remaining point beats.
inline std::vector<std::size_t> peel_levels(const std::vector<ObjectiveVector>& points,
                                            Relation relation = Relation::pareto) {
  const auto better = relation == Relation::pareto ? pareto_better : epsilon_better;
  std::vector<std::size_t> level(points.size(), 0);
  std::size_t assigned = 0;
  for (std::size_t current = 1; assigned < points.size(); ++current) {
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (level[i]) continue;
      bool beaten = false;
      for (std::size_t j = 0; j < points.size() && !beaten; ++j) {
        beaten = j != i && !level[j] && better(points[j], points[i]);
      }
      if (!beaten) layer.push_back(i);
    }
    for (auto i : layer) level[i] = current;
    assigned += layer.size();
  }
  return level;
}

inline double euclid(const ObjectiveVector& a, const ObjectiveVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

inline double gd(const std::vector<ObjectiveVector>& s, const std::vector<ObjectiveVector>& p) {
  double total = 0.0;
  for (const auto& x : s) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : p) best = std::min(best, euclid(x, y));
    total += best * best;
  }
  return std::sqrt(total) / static_cast<double>(s.size());
}

inline double igd(const std::vector<ObjectiveVector>& s, const std::vector<ObjectiveVector>& p) { return gd(p, s); }

// Inclusion-exclusion over all non-empty subsets of the points strictly
// inside the reference box. Exponential; keep n small.
inline double hv_inclusion_exclusion(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ref) {
  std::vector<ObjectiveVector> inside;
  for (const auto& p : points) {
    bool ok = true;
    for (std::size_t i = 0; i < p.size(); ++i) ok = ok && p[i] < ref[i];
    if (ok) inside.push_back(p);
  }
  const std::size_t n = inside.size();
  if (n > 20) throw error(errc::invalid_parameter, "inclusion-exclusion oracle limited to 20 points");
  double total = 0.0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    ObjectiveVector corner(ref.size(), -std::numeric_limits<double>::infinity());
    int bits = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) {
        ++bits;
        for (std::size_t i = 0; i < ref.size(); ++i) corner[i] = std::max(corner[i], inside[k][i]);
      }
    }
    double v = 1.0;
    for (std::size_t i = 0; i < ref.size(); ++i) v *= ref[i] - corner[i];
    total += bits % 2 ? v : -v;
  }
  return total;
}

inline double minkowski(const ObjectiveVector& a, const ObjectiveVector& b, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(std::abs(a[i] - b[i]), p);
  return std::pow(s, 1.0 / p);
}

// PD(X) = max over s in X of PD(X - s) + d(s, X - s), tried over every
// removal order without memoisation.
inline double pd_exhaustive(const std::vector<ObjectiveVector>& points, double p = 2.0) {
  std::function<double(std::vector<std::size_t>&)> rec = [&](std::vector<std::size_t>& set) -> double {
    if (set.size() <= 1) return 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < set.size(); ++k) {
      const std::size_t s = set[k];
      std::vector<std::size_t> rest;
      for (std::size_t j = 0; j < set.size(); ++j) {
        if (j != k) rest.push_back(set[j]);
      }
      double nearest = std::numeric_limits<double>::infinity();
      for (auto t : rest) nearest = std::min(nearest, minkowski(points[s], points[t], p));
      best = std::max(best, nearest + rec(rest));
    }
    return best;
  };
  std::vector<std::size_t> all(points.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return rec(all);
}

// 1 - 6 * sum(d^2) / (n (n^2 - 1)); valid for rankings without ties.
inline double spearman_untied(const std::vector<int>& a, const std::vector<int>& b) {
  const double n = static_cast<double>(a.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += static_cast<double>((a[i] - b[i]) * (a[i] - b[i]));
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

// Pearson correlation of mid-ranks; handles ties.
inline double spearman(const std::vector<int>& a, const std::vector<int>& b) {
  auto mid = [](const std::vector<int>& r) {
    std::vector<double> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      double less = 0, equal = 0;
      for (auto v : r) {
        less += v < r[i];
        equal += v == r[i];
      }
      out[i] = less + (equal + 1.0) / 2.0;
    }
    return out;
  };
  const auto x = mid(a), y = mid(b);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n, my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline std::vector<double> linear_dot(const LevelTable& t) {
  std::vector<double> out;
  const std::size_t levels = t.level_count();
  for (const auto& row : t.counts) {
    double s = 0.0;
    for (std::size_t l = 0; l < levels; ++l) s += static_cast<double>(row[l] * (levels - l));
    out.push_back(s);
  }
  return out;
}

inline std::vector<double> exponential_dot(const LevelTable& t) {
  std::vector<double> out;
  for (const auto& row : t.counts) {
    double s = 0.0, w = 1.0;
    for (auto c : row) {
      s += static_cast<double>(c) * w;
      w /= 2.0;
    }
    out.push_back(s);
  }
  return out;
}

struct VerifyResult {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  bool ok() const noexcept { return failures.empty(); }
};

namespace detail {

inline bool close(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

// Cross-checks NDS, GD, IGD, exact HV and PD on every cell of a study.
// HV and PD oracles run on the leading points of each front (10 and 6).
inline VerifyResult verify_study(const Study& study, const StudyOptions& options) {
  VerifyResult out;
  auto check = [&](bool ok, const std::string& what) {
    ++out.checks;
    if (!ok) out.failures.push_back(what);
  };
  ScoreOptions score_options;
  score_options.seed = options.seed;
  score_options.normalize = options.normalize;
  score_options.threads = options.threads;
  score_options.registry = options.registry;
  score_options.algorithm_order = study.layout.algorithms;
  for (const auto& [key, fronts] : study.fronts) {
    const std::string label = cell_label(key);
    auto ref_it = study.references.find(key);
    if (ref_it == study.references.end() && options.reference_mode != ReferenceMode::union_fallback) {
      out.failures.push_back(label + ": no reference set");
      continue;
    }
    const ReferenceSet raw = ref_it != study.references.end() ? ref_it->second : union_reference(fronts);
    const ReferenceSet ref = options.normalize ? normalize(raw) : raw;
    ObjectiveVector hv_ref(ref.ideal.size());
    for (std::size_t i = 0; i < hv_ref.size(); ++i) hv_ref[i] = ref.ideal[i] + 1.1 * (ref.nadir[i] - ref.ideal[i]);
    for (const auto& f : fronts) {
      const std::string where = label + "/" + f.algorithm_id + "/run" + std::to_string(f.run_index);
      const auto pts = options.normalize ? normalize(f, raw, nullptr).points : f.points;
      check(detail::close(indicators::generational_distance(pts, ref.points), gd(pts, ref.points)), where + ": GD");
      check(detail::close(indicators::inverted_generational_distance(pts, ref.points), igd(pts, ref.points)),
            where + ": IGD");
      const std::vector<ObjectiveVector> head(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(pts.size(), 10)));
      check(detail::close(hypervolume_exact(head, hv_ref), hv_inclusion_exclusion(head, hv_ref)), where + ": HV");
      const std::vector<ObjectiveVector> six(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(pts.size(), 6)));
      check(detail::close(indicators::pure_diversity(six), pd_exhaustive(six)), where + ": PD");
    }
    const auto matrix = compute_score_matrix(fronts, raw, options.metrics, score_options);
    const auto oriented = oriented_scores(matrix, options.ranking.relation, OrientationTransform::negate);
    const auto levels = nds(oriented, options.ranking.relation);
    check(levels.level_of == peel_levels(oriented, options.ranking.relation), label + ": NDS levels");
  }
  return out;
}

}  // namespace prank::oracle
