#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "poscurves/transforms.hpp"

using namespace poscurves;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

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

Fan bundle_fan() {
  return {3,
          q({{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {0, 0, 1}, {0, -1, -1}}),
          {{0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4}, {1, 2, 3}, {1, 2, 4}}};
}

Rational rq(long long n, long long d) { return Rational(n, d); }

}  // namespace

TEST_CASE("mcal matches hand values on smooth surfaces", "[transforms]") {
  ToricVariety pq(p1xp1_fan());

  auto m11 = mcal(pq, v({1, 1}));
  REQUIRE(m11.movable);
  REQUIRE(m11.exact_value);
  CHECK(*m11.exact_value == Rational(2));
  CHECK(m11.witness_exact);
  CHECK(*m11.witness_class == v({1, 1}));

  auto m21 = mcal(pq, v({2, 1}));
  REQUIRE(m21.exact_value);
  CHECK(*m21.exact_value == Rational(4));
  CHECK(*m21.witness_class == v({1, 2}));
  CHECK(pq.volume_divisor(*m21.witness_divisor) == Rational(4));

  // exact homogeneity of degree n/(n-1) = 2
  auto m22 = mcal(pq, v({2, 2}));
  REQUIRE(m22.exact_value);
  CHECK(*m22.exact_value == Rational(8));

  ToricVariety bl(blp2_fan());
  auto ml = mcal(bl, v({1, 0}));
  REQUIRE(ml.exact_value);
  CHECK(*ml.exact_value == Rational(1));
  CHECK(*ml.witness_class == v({1, 0}));
}

TEST_CASE("mcal vanishes off the movable cone", "[transforms]") {
  ToricVariety bl(blp2_fan());
  auto m = mcal(bl, v({2, -1}));  // weight (3,3,2,-1) has a negative entry
  CHECK_FALSE(m.movable);
  CHECK(m.value == 0);
  CHECK_FALSE(m.witness_class);

  ToricVariety p2(p2_fan());
  CHECK_FALSE(mcal(p2, v({-1})).movable);
}

TEST_CASE("mcal reports degenerate classes with an orthogonal divisor", "[transforms]") {
  ToricVariety pq(p1xp1_fan());
  auto m = mcal(pq, v({1, 0}));
  CHECK(m.movable);
  CHECK(m.degenerate);
  CHECK(m.value == 0);
  REQUIRE(m.degeneracy);
  CHECK(*m.degeneracy == v({0, 1}));
  CHECK(dot(*m.degeneracy, v({1, 0})) == Rational(0));

  ToricVariety bd(bundle_fan());
  auto mf = mcal(bd, v({1, 0}));  // fiber line: rays span only the fiber plane
  REQUIRE(mf.degeneracy);
  CHECK(*mf.degeneracy == v({0, 1}));
  auto ms = mcal(bd, v({0, 1}));  // section class over the base
  REQUIRE(ms.degeneracy);
  CHECK(*ms.degeneracy == v({1, 0}));
}

TEST_CASE("mcal handles the singular weighted plane", "[transforms]") {
  ToricVariety x(p112_fan());
  CHECK_FALSE(x.smooth);
  auto m = mcal(x, v({1}));
  REQUIRE(m.exact_value);
  CHECK(*m.exact_value == Rational(2));
  CHECK(*m.witness_class == v({2}));

  auto half = mcal(x, VecQ{rq(1, 2)});
  REQUIRE(half.exact_value);
  CHECK(*half.exact_value == rq(1, 2));
  CHECK(*half.witness_class == v({1}));
}

TEST_CASE("mcal keeps a floating value when the witness is irrational", "[transforms]") {
  ToricVariety p3(p3_fan());
  auto m1 = mcal(p3, v({1}));
  REQUIRE(m1.exact_value);
  CHECK(*m1.exact_value == Rational(1));
  CHECK(*m1.witness_class == v({1}));

  // the witness of 2*alpha is sqrt(2)*H, so only the value survives snapping
  auto m2 = mcal(p3, v({2}));
  CHECK_FALSE(m2.witness_exact);
  CHECK_FALSE(m2.exact_value);
  CHECK_THAT(m2.value, WithinRel(2.8284271247461903, 1e-6));
}

TEST_CASE("mcal on the projective bundle", "[transforms]") {
  ToricVariety bd(bundle_fan());
  VecQ alpha{rq(1, 16), rq(9, 16)};  // square of the class (5/4, 1/4)
  auto m = mcal(bd, alpha);
  REQUIRE(m.exact_value);
  CHECK(*m.exact_value == rq(7, 32));
  CHECK(m.witness_exact);
  CHECK((*m.witness_class)[0] == rq(5, 4));
  CHECK((*m.witness_class)[1] == rq(1, 4));
  // the witness is movable but not nef
  CHECK(cone_membership(bd.nef_divisors, *m.witness_class).location ==
        ConeLocation::Outside);
}

TEST_CASE("volhat agrees with hand values", "[transforms]") {
  ToricVariety bl(blp2_fan());
  CHECK_THAT(volhat(bl, v({2, -1})), WithinRel(4.0, 1e-7));
  CHECK_THAT(volhat(bl, v({1, 0})), WithinRel(1.0, 1e-7));

  ToricVariety pq(p1xp1_fan());
  CHECK_THAT(volhat(pq, v({1, 1})), WithinRel(2.0, 1e-7));
  // interior optimum at the nef direction (1/3, 2/3)
  CHECK_THAT(volhat(pq, v({2, 1})), WithinRel(4.0, 1e-7));

  ToricVariety p3(p3_fan());
  CHECK_THAT(volhat(p3, v({1})), WithinRel(1.0, 1e-7));

  ToricVariety px(p112_fan());
  CHECK_THAT(volhat(px, v({1})), WithinRel(2.0, 1e-7));

  ToricVariety bd(bundle_fan());
  VecQ alpha{rq(1, 16), rq(9, 16)};
  CHECK_THAT(volhat(bd, alpha), WithinRel(5.0 * std::sqrt(5.0) / 32.0, 1e-7));
}

TEST_CASE("volhat vanishes outside the big cone", "[transforms]") {
  ToricVariety bl(blp2_fan());
  auto outside = volhat_full(bl, v({-1, 0}));
  CHECK_FALSE(outside.feasible);
  CHECK(outside.value == 0);

  auto boundary = volhat_full(bl, v({1, 1}));
  CHECK(boundary.feasible);
  CHECK(boundary.boundary);
  CHECK(boundary.value == 0);

  ToricVariety pq(p1xp1_fan());
  CHECK(volhat_full(pq, v({1, 0})).boundary);
}

TEST_CASE("zariski decomposition on the blown-up plane", "[transforms]") {
  ToricVariety bl(blp2_fan());
  auto z = zariski_decompose(bl, v({2, -1}));
  CHECK(z.direction_class == v({1, 0}));
  CHECK(z.sigma == Rational(2));
  CHECK(z.positive_curve == v({2, 0}));
  CHECK(z.negative == v({0, -1}));
  CHECK(z.negative_psef_exact);
  CHECK(z.orthogonality_residual == 0);
  CHECK_THAT(z.scale, WithinAbs(2.0, 1e-12));
  CHECK_THAT(z.volhat, WithinRel(4.0, 1e-7));
  CHECK_THAT(z.positive_divisor[0], WithinAbs(2.0, 1e-9));
  CHECK_THAT(z.positive_divisor[1], WithinAbs(0.0, 1e-9));
}

TEST_CASE("zariski decomposition is trivial inside the nef image", "[transforms]") {
  ToricVariety pq(p1xp1_fan());
  auto z = zariski_decompose(pq, v({2, 1}));
  CHECK(z.positive_curve == v({2, 1}));
  for (const auto& g : z.negative) CHECK(g == Rational(0));
  CHECK(z.sigma * z.direction_volume == dot(z.direction_class, v({2, 1})));

  ToricVariety p3(p3_fan());
  auto z3 = zariski_decompose(p3, v({1}));
  CHECK(z3.sigma == Rational(1));
  CHECK(z3.positive_curve == v({1}));

  ToricVariety px(p112_fan());
  auto zx = zariski_decompose(px, v({1}));
  CHECK(zx.sigma == Rational(2));
  CHECK(zx.positive_curve == v({1}));
  CHECK_THAT(zx.scale, WithinAbs(2.0, 1e-12));
}

TEST_CASE("zariski decomposition on the projective bundle", "[transforms]") {
  ToricVariety bd(bundle_fan());
  VecQ alpha{rq(1, 16), rq(9, 16)};
  auto z = zariski_decompose(bd, alpha);
  CHECK(z.direction_class == v({1, 1}));
  CHECK(z.direction_volume == Rational(2));
  CHECK(z.sigma == rq(5, 16));
  CHECK(z.positive_curve[0] == rq(5, 16));
  CHECK(z.positive_curve[1] == rq(5, 16));
  CHECK(z.negative[0] == rq(-1, 4));
  CHECK(z.negative[1] == rq(1, 4));
  CHECK(z.negative_psef_exact);
  CHECK(z.orthogonality_residual == 0);
  CHECK_THAT(z.scale, WithinAbs(std::sqrt(5.0) / 4.0, 1e-12));
  CHECK_THAT(z.volhat, WithinRel(5.0 * std::sqrt(5.0) / 32.0, 1e-7));
  // gamma sits on the boundary ray spanned by (-1, 1)
  CHECK(cone_membership(bd.eff_curves, z.negative).location == ConeLocation::Boundary);
}

TEST_CASE("zariski decomposition rejects non-interior classes", "[transforms]") {
  ToricVariety bl(blp2_fan());
  CHECK_THROWS_AS(zariski_decompose(bl, v({1, 1})), PreconditionError);
  CHECK_THROWS_AS(zariski_decompose(bl, v({-1, 0})), PreconditionError);
}

TEST_CASE("ci membership distinguishes nef witnesses", "[transforms]") {
  ToricVariety bl(blp2_fan());
  auto in = ci_membership(bl, v({1, 0}));
  CHECK(in.member);
  CHECK(in.consistent);
  CHECK_THAT(in.volhat_value, WithinRel(in.mcal_value, 1e-5));

  ToricVariety bd(bundle_fan());
  auto out = ci_membership(bd, VecQ{rq(1, 16), rq(9, 16)});
  CHECK_FALSE(out.member);
  CHECK(out.consistent);
  CHECK(out.volhat_value > out.mcal_value * 1.5);

  ToricVariety pq(p1xp1_fan());
  CHECK(ci_membership(pq, v({2, 1})).member);

  ToricVariety p3(p3_fan());
  CHECK(ci_membership(p3, v({1})).member);
}

TEST_CASE("ci membership needs a usable volume", "[transforms]") {
  ToricVariety bl(blp2_fan());
  CHECK_THROWS_AS(ci_membership(bl, v({2, -1})), PreconditionError);
  ToricVariety bd(bundle_fan());
  CHECK_THROWS_AS(ci_membership(bd, v({1, 0})), PreconditionError);
}

TEST_CASE("mcal derivative matches difference quotients", "[transforms]") {
  ToricVariety pq(p1xp1_fan());
  double exact = mcal_derivative(pq, v({2, 1}), v({1, 1}));
  CHECK_THAT(exact, WithinAbs(6.0, 1e-12));

  Rational t(1, 10000);
  VecQ up = vadd(v({2, 1}), vscale(t, v({1, 1})));
  VecQ dn = vsub(v({2, 1}), vscale(t, v({1, 1})));
  double numeric = (mcal(pq, up).value - mcal(pq, dn).value) / (2 * to_double(t));
  CHECK_THAT(numeric, WithinRel(exact, 1e-3));

  ToricVariety p3(p3_fan());
  CHECK_THAT(mcal_derivative(p3, v({1}), v({1})), WithinAbs(1.5, 1e-12));
}

TEST_CASE("morse bound certifies bigness of differences", "[transforms]") {
  ToricVariety bl(blp2_fan());
  auto good = morse_bound(bl, v({1, 0}), VecQ{Rational(0), rq(-1, 2)});
  REQUIRE(good.exact_bound);
  CHECK(*good.exact_bound == Rational(1));
  CHECK(good.certified_big);

  auto tight = morse_bound(bl, v({1, 0}), VecQ{rq(1, 2), Rational(0)});
  REQUIRE(tight.exact_bound);
  CHECK(*tight.exact_bound == Rational(-1));
  CHECK_FALSE(tight.certified_big);

  CHECK_THROWS_AS(morse_bound(bl, v({2, -1}), v({0, 0})), PreconditionError);
}

TEST_CASE("pi hat projects onto the nef cone", "[transforms]") {
  ToricVariety bl(blp2_fan());
  auto p = pi_hat(bl, v({0, 0, 2, 1}));  // class 2H + E
  CHECK_FALSE(p.nef_input);
  CHECK(p.value_class == v({2, 0}));
  CHECK_THAT(p.coefficient, WithinAbs(1.0, 1e-9));

  auto idem = pi_hat(bl, p.value);
  CHECK(idem.nef_input);
  CHECK(idem.value_class == p.value_class);
}

TEST_CASE("pi hat on the projective bundle", "[transforms]") {
  ToricVariety bd(bundle_fan());
  auto p = pi_hat(bd, v({3, 1, 0, 0, 0}));  // class (4, 1), not nef
  CHECK_FALSE(p.nef_input);
  // its square is (1, 7): mcal 11, volhat 16, positive part 2*(1,1)
  double kappa = 1.0 - std::cbrt(5.0 / 16.0);
  CHECK_THAT(p.coefficient, WithinAbs(kappa, 1e-9));
  CHECK(p.value_class[0] == p.value_class[1]);
  CHECK_THAT(to_double(p.value_class[0]), WithinAbs(2.0 * kappa, 2e-6));
  // the retained part stays below the class
  VecQ diff = vsub(v({4, 1}), p.value_class);
  CHECK(cone_membership(bd.eff_divisors, diff).location != ConeLocation::Outside);
  // nef by construction, and idempotent because of that
  CHECK(cone_membership(bd.nef_divisors, p.value_class).location !=
        ConeLocation::Outside);
  auto idem = pi_hat(bd, p.value);
  CHECK(idem.nef_input);
  CHECK(idem.value == p.value);

  CHECK_THROWS_AS(pi_hat(bd, v({0, 1, 0, 0, -1})), PreconditionError);
}

TEST_CASE("boundary classes split into the two faces", "[transforms]") {
  ToricVariety bl(blp2_fan());
  auto c = classify_boundary(bl, v({1, 0}));
  CHECK(c.positive_product);
  CHECK(c.witness_exact);
  CHECK(*c.witness_class == v({1, 0}));
  CHECK(c.boundary_certified);
  CHECK_FALSE(c.orthogonal);

  ToricVariety bd(bundle_fan());
  auto f = classify_boundary(bd, v({1, 0}));
  CHECK_FALSE(f.positive_product);
  REQUIRE(f.orthogonal);
  CHECK(*f.orthogonal == v({0, 1}));
  auto s = classify_boundary(bd, v({0, 1}));
  REQUIRE(s.orthogonal);
  CHECK(*s.orthogonal == v({1, 0}));

  ToricVariety pq(p1xp1_fan());
  auto r = classify_boundary(pq, v({1, 0}));
  REQUIRE(r.orthogonal);
  CHECK(*r.orthogonal == v({0, 1}));

  CHECK_THROWS_AS(classify_boundary(bl, v({2, 1})), PreconditionError);
  CHECK_THROWS_AS(classify_boundary(bl, v({2, -1})), PreconditionError);
}

TEST_CASE("diskant scale and the surface inequalities", "[transforms]") {
  ToricVariety bl(blp2_fan());
  CHECK(diskant_scale(bl, v({0, 0, 1, 0}), v({1, 0, 0, 0})) == Rational(1));
  CHECK(diskant_scale(bl, v({0, 0, 0, 1}), v({0, 0, 1, 0})) == Rational(0));
  CHECK_THROWS_AS(diskant_scale(bl, v({0, 0, 1, 0}), v({0, 0, 0, 0})),
                  PreconditionError);

  // Teissier-type inequality for nef classes on the quadric
  ToricVariety pq(p1xp1_fan());
  VecQ l1 = v({1, 0, 1, 0});
  VecQ l2 = v({1, 0, 2, 0});
  Rational pairing = pq.pair_div_curve(l2, pq.positive_product_top(l1));
  double lhs = to_double(pairing);
  double rhs = std::sqrt(to_double(pq.volume_divisor(l1))) *
               std::sqrt(to_double(pq.volume_divisor(l2)));
  CHECK(lhs >= rhs - 1e-12);

  // log-concavity of mcal^{1/2} along a segment, with equality when parallel
  double a = std::sqrt(mcal(pq, v({2, 1})).value);
  double b = std::sqrt(mcal(pq, v({1, 2})).value);
  double c = std::sqrt(mcal(pq, v({3, 3})).value);
  CHECK(c >= a + b - 1e-9);
  double d = std::sqrt(mcal(pq, v({2, 2})).value);
  CHECK_THAT(d, WithinAbs(2.0 * std::sqrt(mcal(pq, v({1, 1})).value), 1e-9));
}

TEST_CASE("volhat scales with exponent n over n minus one", "[transforms]") {
  ToricVariety bl(blp2_fan());
  double base = volhat(bl, v({2, -1}));
  double scaled = volhat(bl, v({6, -3}));
  CHECK_THAT(scaled, WithinRel(base * 9.0, 1e-6));

  ToricVariety p3(p3_fan());
  double b3 = volhat(p3, v({1}));
  CHECK_THAT(volhat(p3, v({4})), WithinRel(b3 * 8.0, 1e-6));
}

TEST_CASE("nef violation measures the wall distance of witnesses", "[transforms]") {
  ToricVariety bd(bundle_fan());
  CHECK(nef_violation(bd, v({1, 1})) == 0.0);
  CHECK(nef_violation(bd, v({0, 1})) == 0.0);
  CHECK_THAT(nef_violation(bd, v({1, 0})), WithinAbs(0.5, 1e-12));

  // on the simplex (1/2 - e, 1/2 + e) the nef side pins vol-hat at 1/sqrt(2)
  // while mcal = (1 + e) sqrt(1 - 2e) / sqrt(2); the relative gap is
  // (3/2) e^2 + O(e^3) and the witness violation is e
  auto ci = ci_membership(bd, VecQ{rq(23, 50), rq(27, 50)});
  CHECK_FALSE(ci.member);
  CHECK_THAT(ci.witness_violation, WithinAbs(0.04, 1e-4));
  CHECK_THAT(ci.volhat_value, WithinRel(1.0 / std::sqrt(2.0), 1e-6));
  double want = 1.04 * std::sqrt(0.92) / std::sqrt(2.0);
  CHECK_THAT(ci.mcal_value, WithinRel(want, 1e-5));
  CHECK(ci.volhat_value - ci.mcal_value > 1e-3 * ci.mcal_value);

  // in the hairline annulus the gap drops below the equality resolution
  auto wall = ci_membership(bd, VecQ{rq(499, 1000), rq(501, 1000)});
  CHECK_FALSE(wall.member);
  CHECK(wall.witness_violation < 3e-3);
  CHECK(std::fabs(wall.volhat_value - wall.mcal_value) <= 1e-5 * wall.mcal_value);
}
