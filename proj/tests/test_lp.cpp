#include "doctest.h"

#include <cmath>

#include "edgesim/error.hpp"
#include "edgesim/lp.hpp"
#include "support/lp_oracle.hpp"

using namespace edgesim;

TEST_CASE("single bounded variable") {
  LpProblem p;
  int x = p.add_variable(1.0);
  p.add_row({x}, {1.0}, Relation::LessEqual, 1.0);
  auto s = solve(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(1.0));
  CHECK(s.primal[0] == doctest::Approx(1.0));
}

TEST_CASE("two-variable textbook problem") {
  LpProblem p;
  int x = p.add_variable(3.0);
  int y = p.add_variable(2.0);
  p.add_row({x, y}, {1, 1}, Relation::LessEqual, 4);
  p.add_row({x}, {1}, Relation::LessEqual, 2);
  p.add_row({y}, {1}, Relation::LessEqual, 3);
  auto s = solve(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(s.primal[0] == doctest::Approx(2.0));
  CHECK(s.primal[1] == doctest::Approx(2.0));
  auto oracle_value = oracle::vertex_optimum(p);
  REQUIRE(oracle_value);
  CHECK(*oracle_value == doctest::Approx(10.0));
  CHECK(dual_bound(p, s.row_duals) == doctest::Approx(10.0));
}

TEST_CASE("empty polytope is infeasible") {
  LpProblem p;
  int x = p.add_variable(1.0);
  p.add_row({x}, {1.0}, Relation::LessEqual, -1.0);
  CHECK(solve(p).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded ray") {
  LpProblem p;
  int x = p.add_variable(1.0);
  int y = p.add_variable(0.0);
  p.add_row({x, y}, {1.0, -1.0}, Relation::LessEqual, 1.0);
  CHECK(solve(p).status == LpStatus::Unbounded);
}

TEST_CASE("equality rows and free variables") {
  LpProblem p;
  int x = p.add_variable(1.0, -kInf, kInf);
  int y = p.add_variable(-1.0, 0.0, 10.0);
  p.add_row({x, y}, {1.0, 1.0}, Relation::Equal, 3.0);
  p.add_row({x}, {1.0}, Relation::LessEqual, 5.0);
  auto s = solve(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(3.0));
  CHECK(max_violation(p, s.primal) <= 1e-9);
}

TEST_CASE("malformed problems are rejected") {
  LpProblem p;
  p.add_variable(1.0, 2.0, 1.0);
  CHECK_THROWS_AS(solve(p), Error);
  LpProblem q;
  q.add_variable(std::nan(""));
  CHECK_THROWS_AS(solve(q), Error);
  LpProblem r;
  r.add_variable(1.0, 0.0, 1.0);
  r.add_row({3}, {1.0}, Relation::LessEqual, 1.0);
  CHECK_THROWS_AS(solve(r), Error);
}

TEST_CASE("random problems match vertex enumeration") {
  Rng rng(20240601);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    LpProblem p = oracle::random_lp(rng);
    auto s = solve(p);
    auto expected = oracle::vertex_optimum(p);
    INFO("trial " << trial << "\n" << p.to_lp_format());
    if (!expected) {
      CHECK(s.status == LpStatus::Infeasible);
      ++infeasible;
      continue;
    }
    REQUIRE(s.status == LpStatus::Optimal);
    ++optimal;
    CHECK(std::fabs(s.objective - *expected) <= 1e-6 * std::max(1.0, std::fabs(*expected)));
    CHECK(max_violation(p, s.primal) <= 1e-6);
    // Weak duality: the multipliers certify an upper bound on the optimum.
    const double bound = dual_bound(p, s.row_duals);
    CHECK(bound >= s.objective - 1e-6);
    CHECK(bound <= s.objective + 1e-6);
  }
  CHECK(optimal > 100);
  CHECK(infeasible > 5);
}

TEST_CASE("identical input gives identical output") {
  Rng rng(7);
  LpProblem p = oracle::random_lp(rng);
  auto a = solve(p);
  auto b = solve(p);
  CHECK(a.iterations == b.iterations);
  CHECK(a.primal == b.primal);
}

TEST_CASE("lp text dump") {
  LpProblem p;
  int x = p.add_variable(2.0, 0.0, 1.0, "x");
  p.add_row({x}, {1.0}, Relation::GreaterEqual, 0.5, "floor");
  const std::string text = p.to_lp_format();
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("floor: 1 x >= 0.5") != std::string::npos);
  CHECK(text.find("0 <= x <= 1") != std::string::npos);
}
