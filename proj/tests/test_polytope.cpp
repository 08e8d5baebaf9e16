#include <catch2/catch_amalgamated.hpp>

#include "poscurves/polytope.hpp"

using namespace poscurves;

static VecQ v(std::initializer_list<int> xs) {
  VecQ out;
  for (int x : xs) out.push_back(Rational(x));
  return out;
}

static HalfSpace<Rational> hs(std::initializer_list<int> n, Rational c) {
  return {v(n), c, false};
}

static PolytopeQ unit_square() {
  return PolytopeQ::from_halfspaces(
      {hs({1, 0}, Rational(1)), hs({-1, 0}, Rational(0)), hs({0, 1}, Rational(1)),
       hs({0, -1}, Rational(0))},
      2);
}

TEST_CASE("triangle from halfspaces", "[polytope]") {
  // {u : u1 <= 1, u2 <= 0, -u1 - u2 <= 0}
  auto p = PolytopeQ::from_halfspaces(
      {hs({1, 0}, Rational(1)), hs({0, 1}, Rational(0)), hs({-1, -1}, Rational(0))}, 2);
  REQUIRE(p.vertices.size() == 3);
  CHECK(p.vertices[0] == v({0, 0}));
  CHECK(p.vertices[1] == v({1, -1}));
  CHECK(p.vertices[2] == v({1, 0}));
  CHECK(p.volume() == Rational(1, 2));
  CHECK(p.full_dimensional());
  CHECK(p.centroid() == VecQ{Rational(2, 3), Rational(-1, 3)});
}

TEST_CASE("unit square", "[polytope]") {
  auto p = unit_square();
  REQUIRE(p.vertices.size() == 4);
  CHECK(p.volume() == Rational(1));
  CHECK(p.support(v({1, 1})) == Rational(2));
  CHECK(p.support(v({-1, 0})) == Rational(0));
  CHECK(p.centroid() == VecQ{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("facet volumes", "[polytope]") {
  auto tri = PolytopeQ::from_halfspaces(
      {hs({1, 0}, Rational(1)), hs({0, 1}, Rational(0)), hs({-1, -1}, Rational(0))}, 2);
  // hypotenuse from (0,0) to (1,-1)
  CHECK(tri.normalized_facet_volume(v({-1, -1})) == Rational(1));
  CHECK_THAT(tri.facet_volume_euclidean(v({-1, -1})),
             Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-12));
  CHECK(tri.normalized_facet_volume(v({1, 0})) == Rational(1));

  auto sq = unit_square();
  CHECK(sq.normalized_facet_volume(v({0, 1})) == Rational(1));
  CHECK(sq.normalized_facet_volume(v({0, 2})) == Rational(1, 2));  // same face, scaled normal
  CHECK(sq.normalized_facet_volume(v({1, 1})) == Rational(0));     // supports only a vertex
}

TEST_CASE("mixed volume against a segment", "[polytope]") {
  auto sq = unit_square();
  auto seg = PolytopeQ::from_halfspaces(
      {hs({1, 0}, Rational(0)), hs({-1, 0}, Rational(0)), hs({0, 1}, Rational(1)),
       hs({0, -1}, Rational(0))},
      2);
  REQUIRE(seg.vertices.size() == 2);
  CHECK(seg.dim == 1);
  CHECK(mixed_volume_top(sq, seg) == Rational(1, 2));
  CHECK(mixed_volume_top(sq, sq) == Rational(1));
}

TEST_CASE("mixed volume is translation invariant in Q", "[polytope]") {
  auto sq = unit_square();
  auto moved = sq.translated(v({5, -7}));
  CHECK(mixed_volume_top(sq, moved) == Rational(1));
  CHECK(moved.volume() == Rational(1));
}

TEST_CASE("empty and degenerate polytopes", "[polytope]") {
  auto empty = PolytopeQ::from_halfspaces(
      {hs({1, 0}, Rational(-1)), hs({-1, 0}, Rational(0)), hs({0, 1}, Rational(1)),
       hs({0, -1}, Rational(0))},
      2);
  CHECK(empty.empty());
  CHECK(empty.volume() == Rational(0));

  auto pt = PolytopeQ::from_vertices({v({0, 0, 0})});
  CHECK(pt.dim == 0);
  CHECK(pt.volume() == Rational(0));
  CHECK(pt.support(v({1, 2, 3})) == Rational(0));
}

TEST_CASE("unbounded descriptions are rejected", "[polytope]") {
  try {
    PolytopeQ::from_halfspaces({hs({1, 0}, Rational(1)), hs({0, 1}, Rational(1))}, 2);
    FAIL("expected UnboundedError");
  } catch (const UnboundedError& e) {
    REQUIRE(e.recession_direction.size() == 2);
    CHECK(!is_zero_vec(e.recession_direction));
    CHECK(e.recession_direction[0] <= 0);
    CHECK(e.recession_direction[1] <= 0);
  }
}

TEST_CASE("hull from vertices", "[polytope]") {
  auto p = PolytopeQ::from_vertices({v({0, 0}), v({1, 0}), v({0, 1}), v({1, 1})});
  CHECK(p.volume() == Rational(1));
  size_t facets = 0;
  for (const auto& h : p.halfspaces)
    if (!h.redundant) ++facets;
  CHECK(facets == 4);

  auto tri = PolytopeQ::from_vertices({v({0, 0}), v({1, 0}), v({1, -1})});
  CHECK(tri.volume() == Rational(1, 2));
  CHECK_THROWS(PolytopeQ::from_vertices({v({0, 0}), v({1, 1})}));  // not full-dimensional
}

TEST_CASE("parallel halfspaces merge to the tighter one", "[polytope]") {
  auto p = PolytopeQ::from_halfspaces(
      {hs({1, 0}, Rational(2)), {v({2, 0}), Rational(2), false}, hs({-1, 0}, Rational(0)),
       hs({0, 1}, Rational(1)), hs({0, -1}, Rational(0))},
      2);
  CHECK(p.volume() == Rational(1));
  CHECK(p.support(v({1, 0})) == Rational(1));
}

TEST_CASE("redundant halfspace is flagged", "[polytope]") {
  auto p = PolytopeQ::from_halfspaces(
      {hs({1, 0}, Rational(1)), hs({-1, 0}, Rational(0)), hs({0, 1}, Rational(1)),
       hs({0, -1}, Rational(0)), hs({1, 1}, Rational(5))},
      2);
  CHECK(p.volume() == Rational(1));
  bool found = false;
  for (const auto& h : p.halfspaces)
    if (h.normal == v({1, 1})) {
      found = true;
      CHECK(h.redundant);
    }
  CHECK(found);
}

TEST_CASE("three-dimensional volumes", "[polytope]") {
  auto cube = PolytopeQ::from_halfspaces(
      {hs({1, 0, 0}, Rational(1)), hs({-1, 0, 0}, Rational(0)), hs({0, 1, 0}, Rational(1)),
       hs({0, -1, 0}, Rational(0)), hs({0, 0, 1}, Rational(1)), hs({0, 0, -1}, Rational(0))},
      3);
  CHECK(cube.vertices.size() == 8);
  CHECK(cube.volume() == Rational(1));
  CHECK(cube.centroid() == VecQ{Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  CHECK(mixed_volume_top(cube, cube) == Rational(1));

  auto simplex = PolytopeQ::from_halfspaces(
      {hs({-1, 0, 0}, Rational(0)), hs({0, -1, 0}, Rational(0)), hs({0, 0, -1}, Rational(0)),
       hs({1, 1, 1}, Rational(1))},
      3);
  CHECK(simplex.volume() == Rational(1, 6));
  CHECK(simplex.normalized_facet_volume(v({1, 1, 1})) == Rational(1, 2));
  CHECK(mixed_volume_top(simplex, simplex) == simplex.volume());
  CHECK(mixed_volume_top(cube, simplex) + mixed_volume_top(simplex, cube) > Rational(0));
}

TEST_CASE("double instantiation", "[polytope]") {
  using HS = HalfSpace<double>;
  auto cube = PolytopeD::from_halfspaces(
      {HS{{1, 0, 0}, 1}, HS{{-1, 0, 0}, 0}, HS{{0, 1, 0}, 1}, HS{{0, -1, 0}, 0},
       HS{{0, 0, 1}, 1}, HS{{0, 0, -1}, 0}},
      3, 1e-9, false);
  CHECK(cube.vertices.size() == 8);
  CHECK_THAT(cube.volume(), Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(cube.normalized_facet_volume({0, 0, 1.0}),
             Catch::Matchers::WithinAbs(1.0, 1e-9));
}
