#include "doctest.h"

#include "edgesim/knapsack.hpp"
#include "edgesim/rng.hpp"

using namespace edgesim;

TEST_CASE("weight units round safely") {
  CHECK(weight_units_up(174.32) == 17432);
  CHECK(weight_units_up(174.321) == 17433);
  CHECK(weight_units_down(300.0) == 30000);
  CHECK(weight_units_down(299.999) == 29999);
  CHECK(weight_units_up(0.0) == 0);
}

TEST_CASE("the more valuable option that fits wins") {
  std::vector<KnapsackGroup> g{{{0, 0}, {174.32, 1.0}}, {{0, 0}, {227.42, 2.0}}};
  for (const auto& res : {knapsack_enumerate(g, 300), knapsack_dp(g, 300), knapsack_solve(g, 300)}) {
    REQUIRE(res.feasible);
    CHECK(res.choice == std::vector<int>{0, 1});
    CHECK(res.value == 2.0);
  }
  const auto both = knapsack_solve(g, 401.74);
  CHECK(both.choice == std::vector<int>{1, 1});
}

TEST_CASE("infeasible and empty instances") {
  std::vector<KnapsackGroup> g{{{10, 1}}, {{10, 1}}};
  CHECK_FALSE(knapsack_enumerate(g, 15).feasible);
  CHECK_FALSE(knapsack_dp(g, 15).feasible);
  const auto none = knapsack_solve({}, 10);
  CHECK(none.feasible);
  CHECK(none.choice.empty());
  CHECK(none.value == 0.0);
}

TEST_CASE("ties go to lighter, then lexicographically smaller choices") {
  std::vector<KnapsackGroup> g{{{5, 1}, {3, 1}}, {{2, 0}, {1, 0}}};
  for (const auto& res : {knapsack_enumerate(g, 10), knapsack_dp(g, 10)}) {
    CHECK(res.choice == std::vector<int>{1, 1});
    CHECK(res.weight == 400);
  }
  std::vector<KnapsackGroup> same{{{2, 1}, {2, 1}}, {{2, 1}, {2, 1}}};
  for (const auto& res : {knapsack_enumerate(same, 10), knapsack_dp(same, 10)}) {
    CHECK(res.choice == std::vector<int>{0, 0});
  }
}

TEST_CASE("dynamic programming matches enumeration on random instances") {
  Rng rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const int groups = 1 + static_cast<int>(rng.below(8));
    std::vector<KnapsackGroup> g;
    for (int i = 0; i < groups; ++i) {
      KnapsackGroup opts;
      const int k = 1 + static_cast<int>(rng.below(4));
      for (int j = 0; j < k; ++j) {
        // Coarse weights and values provoke exact ties.
        const double w = rng.bernoulli(0.3) ? 0.0 : static_cast<double>(rng.below(40)) * 5.0 + 0.01 * rng.below(3);
        const double v = static_cast<double>(static_cast<int>(rng.below(7)) - 3) * 0.25;
        opts.push_back({w, v});
      }
      g.push_back(opts);
    }
    const double cap = rng.uniform(0, 400);
    const auto e = knapsack_enumerate(g, cap);
    const auto d = knapsack_dp(g, cap);
    REQUIRE(e.feasible == d.feasible);
    if (!e.feasible) continue;
    CHECK(e.choice == d.choice);
    CHECK(e.value == d.value);
    CHECK(e.weight == d.weight);
  }
}
