#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prank/dominance.hpp"
#include "prank/oracles.hpp"
#include "prank/random.hpp"

using namespace prank;

namespace {

std::vector<ObjectiveVector> random_points(Rng& rng, std::size_t n, std::size_t m, bool lattice) {
  std::vector<ObjectiveVector> pts(n, ObjectiveVector(m));
  for (auto& p : pts) {
    for (auto& v : p) v = lattice ? std::floor(rng.uniform(0, 5)) : rng.uniform();
  }
  return pts;
}

}  // namespace

TEST_CASE("dominates on small cases") {
  CHECK(dominates(ObjectiveVector{1, 2}, ObjectiveVector{2, 3}));
  CHECK_FALSE(dominates(ObjectiveVector{1, 2}, ObjectiveVector{1, 2}));
  CHECK_FALSE(dominates(ObjectiveVector{1, 3}, ObjectiveVector{2, 2}));
  CHECK(dominates(ObjectiveVector{1, 2}, ObjectiveVector{1, 3}));
  CHECK(weakly_dominates(ObjectiveVector{1, 2}, ObjectiveVector{1, 2}));
  CHECK_THROWS_AS(dominates(ObjectiveVector{1, 2}, ObjectiveVector{1, 2, 3}), error);
}

TEST_CASE("epsilon dominance on small cases") {
  CHECK(epsilon_dominates(ObjectiveVector{1, 2}, ObjectiveVector{2, 3}));
  CHECK_FALSE(epsilon_dominates(ObjectiveVector{1, 3}, ObjectiveVector{2, 2}));
  CHECK_FALSE(epsilon_dominates(ObjectiveVector{1, 2}, ObjectiveVector{1, 2}));
  // Two better, one worse, smaller norm.
  CHECK(epsilon_dominates(ObjectiveVector{0, 0, 2}, ObjectiveVector{1, 1, 1.9}));
  // Same count condition but larger norm.
  CHECK_FALSE(epsilon_dominates(ObjectiveVector{0, 0, 5}, ObjectiveVector{1, 1, 1}));
}

TEST_CASE("dominance is irreflexive, asymmetric and transitive") {
  Rng rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto pts = random_points(rng, 3, 3, true);
    const auto &x = pts[0], &y = pts[1], &z = pts[2];
    CHECK_FALSE(dominates(x, x));
    if (dominates(x, y)) CHECK_FALSE(dominates(y, x));
    if (dominates(x, y) && dominates(y, z)) CHECK(dominates(x, z));
  }
}

TEST_CASE("Pareto dominance implies epsilon dominance on non-negative data") {
  Rng rng(12);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto pts = random_points(rng, 2, 4, true);
    if (dominates(pts[0], pts[1])) CHECK(epsilon_dominates(pts[0], pts[1]));
  }
}

TEST_CASE("nds on an antichain and a chain") {
  const auto anti = nds({{1, 2}, {2, 1}});
  CHECK(anti.level_of == std::vector<std::size_t>{1, 1});
  CHECK(anti.level_count == 1);
  const auto chain = nds({{1, 1}, {2, 2}, {3, 3}});
  CHECK(chain.level_of == std::vector<std::size_t>{1, 2, 3});
  CHECK(chain.level_count == 3);
}

TEST_CASE("duplicate points share a level") {
  const auto r = nds({{1, 1}, {1, 1}, {2, 2}});
  CHECK(r.level_of == std::vector<std::size_t>{1, 1, 2});
}

TEST_CASE("nds rejects bad input") {
  CHECK_THROWS_AS(nds({}), error);
  CHECK_THROWS_AS(nds({{1, 2}, {1}}), error);
}

TEST_CASE("nds equals the peel-off oracle on random 4-D points") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = random_points(rng, 50, 4, trial % 2 == 0);
    CHECK(nds(pts).level_of == oracle::peel_levels(pts));
    CHECK(nds(pts, Relation::epsilon).level_of == oracle::peel_levels(pts, Relation::epsilon));
  }
}

TEST_CASE("nds levels satisfy the partition invariants") {
  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pts = random_points(rng, 60, 3, true);
    const auto r = nds(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      bool parent = r.level_of[i] == 1;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (dominates(pts[j], pts[i])) {
          CHECK(r.level_of[j] < r.level_of[i]);
          parent = parent || r.level_of[j] == r.level_of[i] - 1;
        }
      }
      CHECK(parent);
    }
  }
}

TEST_CASE("nds is independent of input order") {
  Rng rng(15);
  auto pts = random_points(rng, 40, 3, true);
  const auto base = nds(pts);
  std::vector<std::size_t> perm(pts.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::vector<ObjectiveVector> shuffled;
  for (auto i : perm) shuffled.push_back(pts[i]);
  const auto r = nds(shuffled);
  for (std::size_t k = 0; k < perm.size(); ++k) CHECK(r.level_of[k] == base.level_of[perm[k]]);
}

TEST_CASE("nds is invariant under strictly increasing coordinate transforms") {
  Rng rng(16);
  for (int trial = 0; trial < 30; ++trial) {
    auto pts = random_points(rng, 40, 3, false);
    auto transformed = pts;
    for (auto& p : transformed) {
      p[0] = std::exp(p[0]);
      p[1] = -1.0 / (p[1] + 0.5);
      p[2] = p[2] * p[2] * p[2] + 3.0;
    }
    CHECK(nds(pts).level_of == nds(transformed).level_of);
  }
}

TEST_CASE("level 1 equals the set of undominated points") {
  Rng rng(17);
  const auto pts = random_points(rng, 100, 4, false);
  const auto r = nds(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (const auto& q : pts) dominated = dominated || dominates(q, pts[i]);
    CHECK((r.level_of[i] == 1) == !dominated);
  }
}
