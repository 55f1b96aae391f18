#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "theta2/errors.hpp"
#include "theta2/strata_nerve.hpp"

#include <map>
#include <set>

using namespace theta2;

TEST_CASE("nerve counts") {
  Nerve small = build_nerve(1, 0);
  CHECK(small.components.size() == 2);
  CHECK(small.pairs.size() == 1);

  Nerve mid = build_nerve(3, 2);
  CHECK(mid.components.size() == 150);  // 3 * 2 * 25
  CHECK(mid.pairs.size() == 1875);      // 3 * 25 * 25

  CHECK(build_nerve(0, 3).components.empty());
  CHECK(build_nerve(0, 3).pairs.empty());
}

TEST_CASE("nerve pairs follow the intersection rule") {
  Nerve nerve = build_nerve(3, 2);

  // recount the pairs independently from the component list
  long long expected_pairs = 0;
  std::map<int, std::pair<long long, long long>> by_beta;
  for (const ComponentId& c : nerve.components)
    (c.kind == 1 ? by_beta[c.beta].first : by_beta[c.beta].second)++;
  for (const auto& [beta, counts] : by_beta) expected_pairs += counts.first * counts.second;
  CHECK(expected_pairs == static_cast<long long>(nerve.pairs.size()));

  std::set<std::pair<int, int>> seen;
  for (const auto& [i, j] : nerve.pairs) {
    CHECK(i < j);
    const ComponentId& a = nerve.components[i];
    const ComponentId& b = nerve.components[j];
    CHECK(a.beta == b.beta);
    CHECK(a.kind != b.kind);
    CHECK(std::abs(a.m) <= nerve.radius);
    CHECK(std::abs(a.n) <= nerve.radius);
    seen.insert({i, j});
  }
  CHECK(seen.size() == nerve.pairs.size()); // no duplicates

  // no triple intersections: any three components contain two of equal kind
  // within a beta, and those never pair; verified on the pair list.
  std::set<std::pair<int, int>> pair_set(nerve.pairs.begin(), nerve.pairs.end());
  for (const auto& [i, j] : pair_set) {
    const ComponentId& a = nerve.components[i];
    const ComponentId& b = nerve.components[j];
    CHECK(!(a.beta == b.beta && a.kind == b.kind));
  }
}

TEST_CASE("resource limits") {
  CHECK_THROWS_AS(build_nerve(51, 0), Error);
  CHECK_THROWS_AS(build_nerve(1, 11), Error);
  CHECK_THROWS_AS(build_nerve(-1, 0), Error);
}

TEST_CASE("compact-support ranks") {
  CHECK(compute_hc(build_nerve(1, 0)) == GradedRanks{{5, 1}, {6, 2}});
  CHECK(compute_hc(build_nerve(3, 2)) == GradedRanks{{5, 1875}, {6, 150}});
  CHECK(compute_hc(build_nerve(0, 0)).empty());

  // support never leaves {5, 6}
  for (int n_beta = 0; n_beta <= 10; ++n_beta)
    for (int radius = 0; radius <= 4; ++radius) {
      Nerve nerve = build_nerve(n_beta, radius);
      GradedRanks hc = compute_hc(nerve);
      for (const auto& [degree, rank] : hc) {
        CHECK((degree == 5 || degree == 6));
        CHECK(rank > 0);
      }
      const long long side = 2LL * radius + 1;
      CHECK((hc.count(6) ? hc[6] : 0) == n_beta * 2 * side * side);
      CHECK((hc.count(5) ? hc[5] : 0) == n_beta * side * side * side * side);
    }
}

TEST_CASE("gysin vanishing") {
  const std::vector<int> full{4, 5, 6, 7, 8};
  CHECK(gysin_vanishing(GradedRanks{{5, 1}, {6, 2}}, 3, 8) == full);
  CHECK(gysin_vanishing(GradedRanks{{5, 1875}, {6, 150}}, 3, 8) == full);

  // empty input forces everything from the threshold up
  CHECK(gysin_vanishing(GradedRanks{}, 3, 8) == std::vector<int>{3, 4, 5, 6, 7, 8});

  // a class in degree 4 blocks the conclusion at k = 4
  CHECK(gysin_vanishing(GradedRanks{{4, 1}, {5, 1}, {6, 1}}, 3, 8) ==
        std::vector<int>{5, 6, 7, 8});

  // removing classes never shrinks the forced set
  const GradedRanks big{{4, 2}, {5, 3}, {6, 1}};
  const auto base = gysin_vanishing(big, 3, 8);
  for (int drop : {4, 5, 6}) {
    GradedRanks smaller = big;
    smaller.erase(drop);
    const auto more = gysin_vanishing(smaller, 3, 8);
    for (int k : base) CHECK(std::find(more.begin(), more.end(), k) != more.end());
  }
}

TEST_CASE("kernel rank growth") {
  CHECK(kernel_rank(0) == 0);
  CHECK(kernel_rank(1) == 1);
  CHECK(kernel_rank(7) == 7); // the 7 x 14 difference matrix
  for (int n = 0; n <= 20; ++n) CHECK(kernel_rank(n) == n);
  CHECK_THROWS_AS(kernel_rank(-2), Error);
}
