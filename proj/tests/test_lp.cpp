#include <catch2/catch_amalgamated.hpp>

#include "poscurves/lp.hpp"

using namespace poscurves;

static MatQ q(std::initializer_list<std::initializer_list<int>> rows) {
  MatQ m;
  for (auto& r : rows) {
    VecQ v;
    for (int x : r) v.push_back(Rational(x));
    m.push_back(v);
  }
  return m;
}

static VecQ v(std::initializer_list<int> xs) {
  VecQ out;
  for (int x : xs) out.push_back(Rational(x));
  return out;
}

TEST_CASE("simplex basic cases", "[lp]") {
  // max x1 subject to x1 + x2 = 4, x >= 0
  auto r = simplex_max(q({{1, 1}}), v({4}), v({1, 0}));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rational(4));
  CHECK(r.x[0] == Rational(4));

  // infeasible: x1 + x2 = -1 with x >= 0
  CHECK(simplex_max(q({{1, 1}}), v({-1}), v({1, 0})).status == LpStatus::Infeasible);

  // unbounded: max x1 with x1 - x2 = 0
  CHECK(simplex_max(q({{1, -1}}), v({0}), v({1, 0})).status == LpStatus::Unbounded);
}

TEST_CASE("simplex two constraints", "[lp]") {
  // max x + 2y : x + y + s1 = 4, x + 3y + s2 = 6
  auto r = simplex_max(q({{1, 1, 1, 0}, {1, 3, 0, 1}}), v({4, 6}), v({1, 2, 0, 0}));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rational(5));  // at (3, 1)
  CHECK(r.x[0] == Rational(3));
  CHECK(r.x[1] == Rational(1));
}

TEST_CASE("simplex handles redundant rows", "[lp]") {
  auto r = simplex_max(q({{1, 1}, {2, 2}}), v({4, 8}), v({1, 0}));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rational(4));
}

TEST_CASE("rational optimum", "[lp]") {
  // max x : 3x + y = 2  ->  x = 2/3
  auto r = simplex_max(q({{3, 1}}), v({2}), v({1, 0}));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rational(2, 3));
}

TEST_CASE("cone combination", "[lp]") {
  MatQ gens = q({{1, 0}, {0, 1}});
  auto lam = cone_combination(gens, v({2, 3}));
  REQUIRE(lam);
  CHECK((*lam)[0] == Rational(2));
  CHECK((*lam)[1] == Rational(3));
  CHECK_FALSE(cone_combination(gens, v({-1, 0})));
  CHECK(cone_combination(gens, v({0, 0})));

  MatQ slanted = q({{1, 0}, {1, 1}});
  auto lam2 = cone_combination(slanted, v({3, 1}));
  REQUIRE(lam2);
  CHECK((*lam2)[0] == Rational(2));
  CHECK((*lam2)[1] == Rational(1));
}

TEST_CASE("max scale in cone", "[lp]") {
  MatQ gens = q({{1, 0}, {1, 1}});
  // base - t*dir stays in cone{(1,0),(1,1)} = {x >= y >= 0}
  auto r = max_scale_in_cone(gens, v({2, 1}), v({0, 1}));
  REQUIRE(r.feasible);
  REQUIRE(r.bounded);
  CHECK(r.scale == Rational(1));

  auto r2 = max_scale_in_cone(gens, v({2, 1}), v({-1, -1}));
  REQUIRE(r2.feasible);
  CHECK_FALSE(r2.bounded);

  auto r3 = max_scale_in_cone(gens, v({-1, 0}), v({0, 1}));
  CHECK_FALSE(r3.feasible);

  // base on the boundary, dir pointing out: scale 0
  auto r4 = max_scale_in_cone(gens, v({1, 1}), v({1, 0}));
  REQUIRE(r4.feasible);
  REQUIRE(r4.bounded);
  CHECK(r4.scale == Rational(0));
}
