#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lp_oracle.hpp"
#include "probkb/lp.hpp"

using namespace probkb;

namespace {

LinearConstraint row(std::vector<std::pair<int, Rational>> coeffs, Relation rel, Rational rhs) {
  return LinearConstraint{std::move(coeffs), rel, std::move(rhs)};
}

}  // namespace

TEST_CASE("simplex vertex") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.constraints.push_back(row({{0, 1}, {1, 1}}, Relation::Eq, 1));
  auto out = solve_lp(lp, {1, 0}, Sense::Max);
  REQUIRE(out.status == LPStatus::Optimal);
  CHECK(out.value == 1);
  CHECK(out.witness == std::vector<Rational>{1, 0});
  CHECK(verify_outcome(lp, {1, 0}, Sense::Max, out));
}

TEST_CASE("infeasible") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.constraints.push_back(row({{0, 1}}, Relation::GreaterEq, 1));
  lp.constraints.push_back(row({{0, 1}}, Relation::LessEq, Rational(1, 2)));
  CHECK(solve_lp(lp, {1}, Sense::Max).status == LPStatus::Infeasible);
  CHECK_FALSE(feasible(lp));

  LinearProgram neg;
  neg.num_vars = 1;
  neg.constraints.push_back(row({{0, 1}}, Relation::Eq, -1));
  CHECK_FALSE(feasible(neg));
}

TEST_CASE("fractional optimum") {
  // min 3x0 + 5x1 s.t. x0 + x1 >= 1, x0 <= 2/7
  LinearProgram lp;
  lp.num_vars = 2;
  lp.constraints.push_back(row({{0, 1}, {1, 1}}, Relation::GreaterEq, 1));
  lp.constraints.push_back(row({{0, 1}}, Relation::LessEq, Rational(2, 7)));
  auto out = solve_lp(lp, {3, 5}, Sense::Min);
  REQUIRE(out.status == LPStatus::Optimal);
  CHECK(out.value == Rational(31, 7));
  CHECK(verify_outcome(lp, {3, 5}, Sense::Min, out));
}

TEST_CASE("unbounded") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.constraints.push_back(row({{0, 1}}, Relation::GreaterEq, 0));
  CHECK(solve_lp(lp, {1}, Sense::Max).status == LPStatus::Unbounded);
  CHECK(solve_lp(lp, {1}, Sense::Min).status == LPStatus::Optimal);
}

TEST_CASE("min max ordering") {
  LinearProgram lp;
  lp.num_vars = 3;
  lp.constraints.push_back(row({{0, 1}, {1, 1}, {2, 1}}, Relation::Eq, 1));
  lp.constraints.push_back(row({{0, 1}, {1, -1}}, Relation::LessEq, Rational(1, 3)));
  std::vector<Rational> obj{Rational(2), Rational(-1), Rational(1, 2)};
  auto lo = solve_lp(lp, obj, Sense::Min);
  auto hi = solve_lp(lp, obj, Sense::Max);
  REQUIRE(lo.status == LPStatus::Optimal);
  REQUIRE(hi.status == LPStatus::Optimal);
  CHECK(lo.value <= hi.value);
}

TEST_CASE("dump_lp lists every constraint") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.constraints.push_back(row({{0, 1}, {1, 1}}, Relation::Eq, 1));
  lp.constraints.push_back(row({{1, Rational(-1, 2)}}, Relation::GreaterEq, Rational(-3)));
  std::string text = dump_lp(lp);
  CHECK(text.find("=") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') >= 2);
}

TEST_CASE("agreement with vertex enumeration oracle") {
  std::mt19937_64 rng(20260824);
  int solved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);  // 2..4 vars
    int m = 1 + static_cast<int>(rng() % 4);  // rows before the bounding row
    LinearProgram lp;
    lp.num_vars = n;
    for (int r = 0; r < m; ++r) {
      LinearConstraint c;
      for (int v = 0; v < n; ++v) {
        long coeff = static_cast<long>(rng() % 7) - 3;
        if (coeff != 0) c.coeffs.emplace_back(v, Rational(coeff));
      }
      c.rel = static_cast<Relation>(rng() % 3);
      c.rhs = Rational(static_cast<long>(rng() % 9) - 2, 1 + static_cast<long>(rng() % 3));
      lp.constraints.push_back(std::move(c));
    }
    // Bounding row keeps the region a polytope so the oracle is exact.
    LinearConstraint bound;
    for (int v = 0; v < n; ++v) bound.coeffs.emplace_back(v, Rational(1));
    bound.rel = Relation::LessEq;
    bound.rhs = Rational(5);
    lp.constraints.push_back(std::move(bound));

    std::vector<Rational> obj(n);
    for (auto& v : obj) v = Rational(static_cast<long>(rng() % 11) - 5);

    auto oracle = testing::enumerate_vertices(lp, obj);
    auto lo = solve_lp(lp, obj, Sense::Min);
    auto hi = solve_lp(lp, obj, Sense::Max);
    CAPTURE(trial);
    CAPTURE(dump_lp(lp));
    if (!oracle.feasible) {
      CHECK(lo.status == LPStatus::Infeasible);
      CHECK(hi.status == LPStatus::Infeasible);
      continue;
    }
    ++solved;
    REQUIRE(lo.status == LPStatus::Optimal);
    REQUIRE(hi.status == LPStatus::Optimal);
    CHECK(lo.value == oracle.min_value);
    CHECK(hi.value == oracle.max_value);
    CHECK(verify_outcome(lp, obj, Sense::Min, lo));
    CHECK(verify_outcome(lp, obj, Sense::Max, hi));
  }
  CHECK(solved > 50);  // corpus actually exercises the optimal path
}
