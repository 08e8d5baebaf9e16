#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "poscurves/toric.hpp"

using namespace poscurves;

namespace {

MatQ q(std::initializer_list<std::initializer_list<int>> rows) {
  MatQ m;
  for (auto& r : rows) {
    VecQ v;
    for (int x : r) v.push_back(Rational(x));
    m.push_back(v);
  }
  return m;
}

VecQ v(std::initializer_list<int> xs) {
  VecQ out;
  for (int x : xs) out.push_back(Rational(x));
  return out;
}

Fan p2_fan() { return {2, q({{1, 0}, {0, 1}, {-1, -1}}), {{0, 1}, {1, 2}, {2, 0}}}; }

Fan blp2_fan() {
  return {2, q({{1, 0}, {0, 1}, {-1, -1}, {1, 1}}), {{0, 3}, {3, 1}, {1, 2}, {2, 0}}};
}

Fan p1xp1_fan() {
  return {2, q({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}), {{0, 2}, {2, 1}, {1, 3}, {3, 0}}};
}

Fan p112_fan() { return {2, q({{1, 0}, {0, 1}, {-1, -2}}), {{0, 1}, {1, 2}, {2, 0}}}; }

Fan p3_fan() {
  return {3, q({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}),
          {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
}

// P(O + O + O(-1)) over the line: two fiber cones over each base chart
Fan bundle_fan() {
  return {3,
          q({{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {0, 0, 1}, {0, -1, -1}}),
          {{0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4}, {1, 2, 3}, {1, 2, 4}}};
}

}  // namespace

TEST_CASE("fan validation accepts the standard fans", "[toric]") {
  CHECK(fan_check(p2_fan()).ok);
  CHECK(fan_check(blp2_fan()).ok);
  CHECK(fan_check(p1xp1_fan()).ok);
  CHECK(fan_check(p3_fan()).ok);
  CHECK(fan_check(bundle_fan()).ok);
  CHECK(fan_check(p2_fan()).smooth);
  CHECK_FALSE(fan_check(p112_fan()).smooth);
  CHECK(fan_check(p112_fan()).ok);
}

TEST_CASE("fan validation rejects broken input", "[toric]") {
  Fan missing = p2_fan();
  missing.max_cones.pop_back();  // not complete
  CHECK_FALSE(fan_check(missing).ok);

  Fan nonprim = p2_fan();
  nonprim.rays[0] = v({2, 0});
  CHECK_FALSE(fan_check(nonprim).ok);

  Fan badidx = p2_fan();
  badidx.max_cones[0] = {0, 7};
  CHECK_FALSE(fan_check(badidx).ok);

  Fan overlap = p2_fan();
  overlap.max_cones.push_back({0, 1});  // duplicate cone
  CHECK_FALSE(fan_check(overlap).ok);

  // cone on the wrong side of a wall: overlapping interiors
  Fan folded{2, q({{1, 0}, {0, 1}, {-1, -1}, {1, 1}}), {{0, 1}, {1, 2}, {2, 0}, {0, 3}}};
  CHECK_FALSE(fan_check(folded).ok);

  Fan dupray = p2_fan();
  dupray.rays.push_back(v({1, 0}));
  dupray.max_cones.push_back({3, 1});
  CHECK_FALSE(fan_check(dupray).ok);
}

TEST_CASE("projective plane basics", "[toric]") {
  ToricVariety x(p2_fan());
  CHECK(x.n == 2);
  CHECK(x.d == 1);
  CHECK(x.smooth);
  CHECK(x.projective);
  REQUIRE(x.kernel.size() == 1);
  CHECK(x.kernel[0] == v({1, 1, 1}));

  REQUIRE(x.walls.size() == 3);
  for (const auto& w : x.walls) {
    CHECK(w.relation == v({1, 1, 1}));
    CHECK(w.coords == v({1}));
  }
  CHECK(x.divisor_coords(v({1, 0, 0})) == v({1}));
  CHECK(x.pair_div_curve(v({1, 0, 0}), v({1})) == Rational(1));

  CHECK(x.eff_divisors.generators == q({{1}}));
  CHECK(x.nef_divisors.generators == q({{1}}));
  CHECK(x.mov_divisors.generators == q({{1}}));
  CHECK(x.eff_curves.generators == q({{1}}));
  CHECK(x.mov_curves.generators == q({{1}}));

  CHECK(x.volume_divisor(v({1, 0, 0})) == Rational(1));
  CHECK(x.degree(v({1, 0, 0})) == Rational(1));
  CHECK(x.degree(v({1, 1, 1})) == Rational(9));
  CHECK(x.positive_product_top(v({1, 0, 0})) == v({1}));
}

TEST_CASE("blown-up plane cones and classes", "[toric]") {
  ToricVariety x(blp2_fan());
  CHECK(x.d == 2);
  CHECK(x.projective);
  // basis: first coordinate pairs with the hyperplane pullback, second with
  // the exceptional class, via kernel rows (1,1,1,0) and (-1,-1,0,1)
  CHECK(x.kernel == q({{1, 1, 1, 0}, {-1, -1, 0, 1}}));

  VecQ h = x.divisor_coords(v({0, 0, 1, 0}));
  VecQ e = x.divisor_coords(v({0, 0, 0, 1}));
  CHECK(h == v({1, 0}));
  CHECK(e == v({0, 1}));

  // wall classes: the strict transform line, the exceptional curve, the fiber
  std::set<VecQ> wall_classes;
  for (const auto& w : x.walls) wall_classes.insert(w.coords);
  CHECK(wall_classes == std::set<VecQ>{v({1, 0}), v({0, -1}), v({1, 1})});

  CHECK(x.eff_curves.generators == q({{0, -1}, {1, 1}}));
  CHECK(x.nef_divisors.generators == q({{1, -1}, {1, 0}}));
  CHECK(x.mov_divisors.generators == q({{1, -1}, {1, 0}}));
  CHECK(x.eff_divisors.generators == q({{0, 1}, {1, -1}}));
  CHECK(x.mov_curves.generators == q({{1, 0}, {1, 1}}));

  // intersection numbers in the lattice oracle
  CHECK(x.degree(v({0, 0, 1, 0})) == Rational(1));    // h.h
  CHECK(x.degree(v({0, 0, 0, 1})) == Rational(-1));   // e.e
  CHECK(x.intersect_divisors(q({{0, 0, 1, 0}, {0, 0, 0, 1}})) == Rational(0));
  CHECK(x.degree(v({1, 1, 1, 1})) == Rational(8));    // anticanonical degree

  // pairings against wall curves
  VecQ ell = v({1, 0}), eta = v({0, -1}), fib = v({1, 1});
  CHECK(x.pair(h, ell) == Rational(1));
  CHECK(x.pair(h, eta) == Rational(0));
  CHECK(x.pair(e, eta) == Rational(-1));
  CHECK(x.pair(e, fib) == Rational(1));
}

TEST_CASE("sigma decomposition", "[toric]") {
  ToricVariety x(blp2_fan());
  auto s = x.sigma_decompose(v({0, 0, 2, 1}));
  CHECK(s.positive == v({0, 0, 2, 0}));
  CHECK(s.negative == v({0, 0, 0, 1}));

  auto s2 = x.sigma_decompose(v({0, 0, 0, 1}));
  CHECK(s2.positive == v({0, 0, 0, 0}));
  CHECK(s2.negative == v({0, 0, 0, 1}));

  auto s3 = x.sigma_decompose(v({0, 0, 2, 0}));  // nef class is its own positive part
  CHECK(s3.positive == v({0, 0, 2, 0}));

  // volume is carried entirely by the positive part
  CHECK(x.volume_divisor(v({0, 0, 2, 1})) == x.volume_divisor(v({0, 0, 2, 0})));

  CHECK_THROWS_AS(x.sigma_decompose(v({-1, 0, 0, 0})), PreconditionError);
}

TEST_CASE("product of lines", "[toric]") {
  ToricVariety x(p1xp1_fan());
  CHECK(x.kernel == q({{1, 1, 0, 0}, {0, 0, 1, 1}}));
  CHECK(x.nef_divisors.generators == q({{0, 1}, {1, 0}}));
  CHECK(x.eff_divisors.generators == q({{0, 1}, {1, 0}}));
  CHECK(x.mov_divisors.generators == q({{0, 1}, {1, 0}}));
  CHECK(x.eff_curves.generators == q({{0, 1}, {1, 0}}));

  CHECK(x.volume_divisor(v({1, 0, 1, 0})) == Rational(2));
  CHECK(x.degree(v({1, 0, 1, 0})) == Rational(2));
  CHECK(x.positive_product_top(v({1, 0, 1, 0})) == v({1, 1}));
  auto qp = x.divisor_polytope(v({1, 0, 1, 0}));
  CHECK(qp.volume() == Rational(1));  // unit square
  CHECK(qp.vertices.size() == 4);
}

TEST_CASE("weighted plane with a half point", "[toric]") {
  ToricVariety x(p112_fan());
  CHECK_FALSE(x.smooth);
  CHECK(x.projective);
  CHECK(x.degree(v({1, 0, 0})) == Rational(1, 2));
  CHECK(x.volume_divisor(v({1, 0, 0})) == Rational(1, 2));
  // true wall class through the singular cone pairs fractionally
  bool found_half = false;
  for (const auto& w : x.walls)
    for (const auto& t : w.relation) found_half |= (t == Rational(1, 2));
  CHECK(found_half);
}

TEST_CASE("projective space in three dimensions", "[toric]") {
  ToricVariety x(p3_fan());
  CHECK(x.d == 1);
  REQUIRE(x.walls.size() == 6);
  for (const auto& w : x.walls) CHECK(w.coords == v({1}));
  CHECK(x.degree(v({1, 0, 0, 0})) == Rational(1));
  CHECK(x.degree(v({1, 1, 1, 1})) == Rational(64));
  CHECK(x.volume_divisor(v({1, 0, 0, 0})) == Rational(1));
  CHECK(x.positive_product_top(v({1, 0, 0, 0})) == v({1}));
  CHECK(x.volume_divisor(v({2, 0, 0, 0})) == Rational(8));
}

TEST_CASE("projectivized bundle over the line", "[toric]") {
  ToricVariety x(bundle_fan());
  CHECK(x.smooth);
  CHECK(x.projective);
  CHECK(x.d == 2);
  CHECK(x.kernel == q({{1, 1, 1, 0, 0}, {0, 1, 0, 1, 1}}));

  VecQ xi = x.divisor_coords(v({0, 0, 1, 0, 0}));
  VecQ fib = x.divisor_coords(v({0, 0, 0, 1, 0}));
  CHECK(xi == v({1, 0}));
  CHECK(fib == v({0, 1}));
  CHECK(x.divisor_coords(v({0, 1, 0, 0, 0})) == v({1, 1}));  // xi + f

  REQUIRE(x.walls.size() == 9);
  std::map<VecQ, int> wall_count;
  for (const auto& w : x.walls) wall_count[w.coords]++;
  CHECK(wall_count[v({1, 0})] == 6);   // lines in the fibers
  CHECK(wall_count[v({-1, 1})] == 1);  // the rigid section direction
  CHECK(wall_count[v({0, 1})] == 2);

  CHECK(x.eff_curves.generators == q({{-1, 1}, {1, 0}}));
  CHECK(x.nef_divisors.generators == q({{0, 1}, {1, 1}}));
  CHECK(x.eff_divisors.generators == q({{0, 1}, {1, 0}}));
  CHECK(x.mov_divisors.generators == q({{0, 1}, {1, 0}}));
  CHECK(x.mov_curves.generators == q({{0, 1}, {1, 0}}));

  // triple products
  CHECK(x.degree(v({0, 0, 1, 0, 0})) == Rational(-1));  // xi^3
  CHECK(x.degree(v({0, 0, 0, 1, 0})) == Rational(0));   // f^3
  CHECK(x.intersect_divisors(q({{0, 0, 1, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}})) ==
        Rational(1));  // xi^2 f
  CHECK(x.intersect_divisors(q({{0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 1, 0}})) ==
        Rational(0));  // xi f^2

  // nef degree agrees with the lattice volume
  CHECK(x.degree(v({0, 0, 1, 1, 0})) == Rational(2));  // (xi+f)^3
  CHECK(x.volume_divisor(v({0, 0, 1, 1, 0})) == Rational(2));
  // xi is effective but sits on the boundary of the big cone
  CHECK(x.volume_divisor(v({0, 0, 1, 0, 0})) == Rational(0));
  CHECK_THROWS_AS(x.positive_product_top(v({0, 0, 1, 0, 0})), PreconditionError);
  VecQ xi_quarter_f{Rational(0), Rational(0), Rational(1), Rational(1, 4), Rational(0)};
  CHECK(x.volume_divisor(xi_quarter_f) > Rational(0));
}

TEST_CASE("positive product reduces through the negative part", "[toric]") {
  ToricVariety x(blp2_fan());
  // big non-nef class: positive part carries the facet data
  VecQ a = v({0, 0, 2, 1});
  auto s = x.sigma_decompose(a);
  CHECK(x.positive_product_top(a) == x.positive_product_top(s.positive));

  // ample class round trip: <A> pairs with A to the degree
  VecQ amp = v({1, 1, 1, 0});  // 3h - e... a generic ample combination
  auto t = x.positive_product_top(amp);
  CHECK(x.pair_div_curve(amp, t) == x.degree(amp));
}

TEST_CASE("curve coordinate round trip", "[toric]") {
  ToricVariety x(bundle_fan());
  VecQ c = v({3, -2});
  CHECK(x.curve_coords(x.relation_of(c)) == c);
  CHECK_THROWS_AS(x.curve_coords(v({1, 0, 0, 0, 0})), PreconditionError);
}

TEST_CASE("non-projective input is flagged", "[toric]") {
  // complete fan whose nef cone is a single ray: still a valid fan, but the
  // projectivity flag must reflect the degenerate nef cone
  ToricVariety x(p2_fan());
  CHECK(x.projective);
  CHECK_NOTHROW(x.require_projective());
}
