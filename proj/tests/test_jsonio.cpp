#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>

#include "poscurves/builtins.hpp"
#include "poscurves/jsonio.hpp"

using namespace poscurves;

TEST_CASE("rationals round-trip through json", "[jsonio]") {
  CHECK(rational_to_json(Rational(7)) == Json(7));
  CHECK(rational_to_json(Rational(-3, 4)) == Json("-3/4"));
  CHECK(rational_from_json(Json(42)) == Rational(42));
  CHECK(rational_from_json(Json("5/6")) == Rational(5, 6));
  CHECK(rational_from_json(rational_to_json(Rational(123456789, 1024))) ==
        Rational(123456789, 1024));

  // integers too wide for a double-safe int64 fall back to strings
  Rational huge = Rational(BigInt(1) << 60);
  CHECK(rational_to_json(huge).is_string());
  CHECK(rational_from_json(rational_to_json(huge)) == huge);

  CHECK_THROWS_AS(rational_from_json(Json(1.5)), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_json(Json::object()), std::invalid_argument);
}

TEST_CASE("vectors and matrices round-trip", "[jsonio]") {
  VecQ v{Rational(1), Rational(-2, 3), Rational(0)};
  CHECK(vec_from_json(vec_to_json(v)) == v);
  MatQ m{{Rational(1), Rational(2)}, {Rational(3, 7), Rational(-4)}};
  CHECK(mat_from_json(mat_to_json(m)) == m);
  CHECK_THROWS_AS(vec_from_json(Json(3)), std::invalid_argument);
}

TEST_CASE("fans round-trip", "[jsonio]") {
  Fan fan = builtin_fan("blp2");
  Fan back = fan_from_json(fan_to_json(fan));
  CHECK(back.dim == fan.dim);
  CHECK(back.rays == fan.rays);
  CHECK(back.max_cones == fan.max_cones);
  CHECK_THROWS_AS(fan_from_json(Json::object()), std::invalid_argument);
}

TEST_CASE("divisors accept bare arrays or wrapped coefficients", "[jsonio]") {
  VecQ a{Rational(1), Rational(0), Rational(2), Rational(-1, 2)};
  CHECK(divisor_from_json(vec_to_json(a)) == a);
  CHECK(divisor_from_json(divisor_to_json(a)) == a);
  CHECK_THROWS_AS(divisor_from_json(Json::object()), std::invalid_argument);
}

TEST_CASE("curves accept weights or class coordinates", "[jsonio]") {
  auto x = builtin_variety("blp2");
  Json w;
  w["weight"] = Json::array({1, 1, 1, 0});
  VecQ ell = curve_from_json(x, w);
  CHECK(static_cast<int>(ell.size()) == x.d);

  Json c;
  c["class"] = vec_to_json(ell);
  CHECK(curve_from_json(x, c) == ell);

  // bare arrays: length d is a class, length r a weight
  CHECK(curve_from_json(x, vec_to_json(ell)) == ell);
  CHECK(curve_from_json(x, Json::array({1, 1, 1, 0})) == ell);

  Json round = curve_to_json(x, ell);
  CHECK(vec_from_json(round["class"]) == ell);
  CHECK(vec_from_json(round["weight"]) == x.relation_of(ell));

  // a non-relation weight must be rejected
  Json bad;
  bad["weight"] = Json::array({1, 0, 0, 0});
  CHECK_THROWS(curve_from_json(x, bad));
  CHECK_THROWS_AS(curve_from_json(x, Json::object()), std::invalid_argument);
}

TEST_CASE("polytopes serialize with halfspaces and vertices", "[jsonio]") {
  auto x = builtin_variety("p1xp1");
  VecQ a{Rational(1), Rational(0), Rational(2), Rational(0)};
  PolytopeQ p = x.divisor_polytope(a);
  Json j = polytope_to_json(p);
  CHECK(j["halfspaces"].size() == 4);
  CHECK(j["vertices"].size() == 4);
  CHECK(mat_from_json(j["vertices"]) == p.vertices);

  std::string mesh = polytope_mesh_text(p, x.n);
  CHECK(mesh.rfind("dim 2\nvertices 4\n", 0) == 0);
  CHECK(std::count(mesh.begin(), mesh.end(), '\n') == 6);
}

TEST_CASE("json files round-trip on disk", "[jsonio]") {
  Json j = fan_to_json(builtin_fan("p2"));
  std::string path = "jsonio_roundtrip_tmp.json";
  write_json_file(path, j);
  CHECK(read_json_file(path) == j);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_json_file("does_not_exist.json"), std::invalid_argument);
}

TEST_CASE("builtin fans are valid and named", "[jsonio]") {
  for (const auto& name : builtin_fan_names()) {
    INFO(name);
    auto report = fan_check(builtin_fan(name));
    CHECK(report.ok);
    auto x = builtin_variety(name);
    CHECK(x.projective);
    CHECK(x.smooth);
  }
  CHECK_THROWS_AS(builtin_fan("nope"), std::invalid_argument);
}
