#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "poscurves/builtins.hpp"
#include "poscurves/jsonio.hpp"
#include "poscurves/polar.hpp"
#include "poscurves/sampling.hpp"
#include "poscurves/transforms.hpp"

namespace poscurves {

struct Tolerances {
  double solver = 1e-8;
  double volume_eq = 1e-5;
  double derivative = 1e-3;
};

struct PropertyResult {
  std::string id;
  std::vector<std::string> claims;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  double worst_residual = 0;
  Json witnesses = Json::array();

  void pass(double residual = 0) {
    ++passed;
    if (residual > worst_residual) worst_residual = residual;
  }
  void fail(Json witness, double residual = 0) {
    ++failed;
    if (residual > worst_residual) worst_residual = residual;
    if (witnesses.size() < 8) witnesses.push_back(std::move(witness));
  }
  void check(bool ok, Json witness, double residual = 0) {
    if (ok)
      pass(residual);
    else
      fail(std::move(witness), residual);
  }
};

struct OutOfScopeEntry {
  std::string topic;
  std::string reason;
};

struct VerificationReport {
  std::string fan_id;
  std::uint64_t seed = 0;
  int count = 0;
  Tolerances tol;
  std::vector<PropertyResult> properties;
  std::vector<std::string> uncovered_claims;
  std::vector<OutOfScopeEntry> out_of_scope;

  bool all_passed() const {
    if (!uncovered_claims.empty()) return false;
    for (const auto& p : properties)
      if (p.failed > 0) return false;
    return true;
  }

  Json to_json() const {
    Json out;
    out["fan"] = fan_id;
    out["seed"] = seed;
    out["count"] = count;
    out["tolerances"] = {{"solver", tol.solver},
                         {"volume_eq", tol.volume_eq},
                         {"derivative", tol.derivative}};
    Json props = Json::array();
    for (const auto& p : properties) {
      Json e;
      e["id"] = p.id;
      e["claims"] = p.claims;
      e["passed"] = p.passed;
      e["failed"] = p.failed;
      e["skipped"] = p.skipped;
      e["worst_residual"] = p.worst_residual;
      e["witnesses"] = p.witnesses;
      props.push_back(std::move(e));
    }
    out["properties"] = props;
    Json cov;
    cov["uncovered_claims"] = uncovered_claims;
    out["coverage"] = cov;
    Json oos = Json::array();
    for (const auto& e : out_of_scope)
      oos.push_back({{"topic", e.topic}, {"reason", e.reason}, {"reproducible", false}});
    out["out_of_scope"] = oos;
    out["all_passed"] = all_passed();
    return out;
  }
};

// Every claim the suite is responsible for; the self-audit fails when a claim
// has no registered property.
inline const std::vector<std::string>& claim_registry() {
  static const std::vector<std::string> claims = {
      "cone-duality",
      "pairing-well-defined",
      "wall-positivity",
      "sigma-decomposition",
      "minkowski-weight-sampling",
      "pairing-mixed-volume",
      "brunn-minkowski",
      "volume-homogeneity",
      "polytope-roundtrip",
      "minkowski-reconstruction",
      "minkowski-scaling",
      "facet-gradient",
      "product-volume-identity",
      "movable-witness",
      "volhat-mcal-dichotomy",
      "log-concavity",
      "teissier",
      "diskant",
      "diskant-scale",
      "mcal-derivative",
      "curve-zariski",
      "zariski-uniqueness",
      "surface-coincidence",
      "curve-volume-default-zero",
      "orthogonal-movable",
      "boundary-alternative",
      "morse-criterion",
      "projection-map",
      "polar-framework",
      "polar-homogeneity",
      "polar-concavity",
      "polar-involution",
      "formal-zariski",
      "normal-fan-refinement",
      "fixture-relations",
  };
  return claims;
}

namespace detail {

inline std::uint64_t property_seed(std::uint64_t seed, const std::string& id) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : id) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h ^ (seed * 0x9e3779b97f4a7c15ULL + 0x517cc1b727220a95ULL);
}

inline Rational rat_pow(const Rational& x, int k) {
  Rational out(1);
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

inline PolytopeD polytope_d(const ToricVariety& x, const VecQ& a) {
  std::vector<HalfSpace<double>> hs;
  hs.reserve(x.r);
  for (int i = 0; i < x.r; ++i)
    hs.push_back({to_doubles(x.fan.rays[i]), to_double(a[i]), false});
  return PolytopeD::from_halfspaces(std::move(hs), x.n, 1e-9, false);
}

inline double rel_gap(double got, double want) {
  return std::fabs(got - want) / std::max({1e-12, std::fabs(want), std::fabs(got)});
}

struct VerifyContext {
  const ToricVariety& x;
  std::uint64_t seed;
  int count;
  Tolerances tol;
};

using PropertyFn = std::function<void(const VerifyContext&, PropertyResult&)>;

struct PropertySpec {
  std::string id;
  std::vector<std::string> claims;
  PropertyFn run;
};

inline Json class_witness(const char* key, const VecQ& v) {
  Json w;
  w[key] = vec_to_json(v);
  return w;
}

// ------------------------------------------------------------------ statics

inline void prop_cone_duality(const VerifyContext& c, PropertyResult& res) {
  const ConeDesc* cones[] = {&c.x.eff_divisors, &c.x.nef_divisors, &c.x.mov_divisors,
                             &c.x.eff_curves, &c.x.mov_curves};
  const char* names[] = {"eff_divisors", "nef_divisors", "mov_divisors",
                         "eff_curves", "mov_curves"};
  for (int i = 0; i < 5; ++i)
    res.check(duality_closure_holds(*cones[i]), Json{{"cone", names[i]}});
}

inline void prop_wall_positivity(const VerifyContext& c, PropertyResult& res) {
  for (const auto& wall : c.x.walls)
    for (const auto& g : c.x.nef_divisors.generators)
      res.check(dot(g, wall.coords) >= 0,
                Json{{"wall", vec_to_json(wall.coords)}, {"nef", vec_to_json(g)}});
  for (const auto& g : c.x.mov_curves.generators) {
    VecQ t = c.x.relation_of(g);
    bool ok = true;
    for (const auto& ti : t) ok = ok && ti >= 0;
    res.check(ok, class_witness("movable_generator", g));
  }
}

inline void prop_fixture_relations(const VerifyContext& c, PropertyResult& res) {
  Fan ref = builtin_fan("projbundle");
  if (c.x.fan.rays != ref.rays || c.x.fan.max_cones != ref.max_cones) {
    res.skipped += 1;
    return;
  }
  // cubic intersection form from exact volumes on the nef chamber
  auto vol = [&](const VecQ& y) { return c.x.volume_divisor(divisor_rep(c.x, y)); };
  VecQ b1{Rational(1), Rational(1)};  // nef generators: b1 = xi + f, b2 = f
  VecQ b2{Rational(0), Rational(1)};
  Rational j111 = vol(b1);
  Rational j222 = vol(b2);
  Rational s1 = vol(vadd(b1, b2));                       // j111+3j112+3j122+j222
  Rational s2 = vol(vadd(b1, vscale(Rational(2), b2)));  // j111+6j112+12j122+8j222
  Rational a = Rational(s1 - j111 - j222) / 3;           // j112 + j122
  Rational b = Rational(s2 - j111 - 8 * j222) / 6;       // j112 + 2 j122
  Rational j122 = b - a;
  Rational j112 = a - j122;
  // xi = b1 - b2 is the movable generator transverse to the fiber class f = b2
  Rational xi3 = Rational(j111 - 3 * j112 + 3 * j122 - j222);
  Rational xi2f = Rational(j112 - 2 * j122 + j222);
  Rational xif2 = Rational(j122 - j222);
  res.check(j222 == 0 && xif2 == 0, Json{{"relation", "f.f = 0"}});
  res.check(xi2f == 1, Json{{"relation", "xi.xi.f = 1"}});
  res.check(xi3 == -1, Json{{"relation", "xi.xi.xi = -1"}});

  // the extremal movable class xi^2 + xi.f has volume 0 with certificate xi
  VecQ kappa{Rational(xi3 + xi2f), Rational(xi2f + xif2)};
  auto m = mcal(c.x, kappa);
  bool ok = m.degenerate && m.value == 0 && m.degeneracy.has_value();
  if (ok) {
    const VecQ& cert = *m.degeneracy;
    ok = dot(cert, kappa) == 0 && cert[1] == 0 && cert[0] > 0;
  }
  res.check(ok, class_witness("kappa", kappa));
}

// ------------------------------------------------------------- toric random

inline void prop_pairing_representation(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  std::uniform_int_distribution<int> coord(-9, 9);
  for (int k = 0; k < c.count; ++k) {
    VecQ y = random_class(c.x.eff_divisors, rng);
    VecQ a = divisor_rep(c.x, y);
    VecQ curve = random_class(c.x.mov_curves, rng);
    VecQ shifted = a;
    VecQ u(c.x.n);
    for (auto& e : u) e = coord(rng);
    for (int i = 0; i < c.x.r; ++i) shifted[i] += dot(u, c.x.fan.rays[i]);
    bool ok = c.x.divisor_coords(shifted) == y &&
              c.x.pair_div_curve(shifted, curve) == c.x.pair_div_curve(a, curve);
    res.check(ok, class_witness("class", y));
  }
}

inline void prop_sigma(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ y = random_class(c.x.eff_divisors, rng);
    VecQ a = divisor_rep(c.x, y);
    auto sd = c.x.sigma_decompose(a);
    auto sd2 = c.x.sigma_decompose(sd.positive);
    bool idem = sd2.positive == sd.positive && is_zero_vec(sd2.negative);
    bool vol_eq = c.x.volume_divisor(a) == c.x.volume_divisor(sd.positive);
    res.check(idem && vol_eq, class_witness("class", y));
  }
}

inline void prop_class_sampling(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    std::uint64_t sub = rng();
    VecQ cls = random_class(c.x.mov_curves, sub);
    VecQ t = c.x.relation_of(cls);
    bool nonneg = true;
    for (const auto& ti : t) nonneg = nonneg && ti >= 0;
    bool relation = true;
    for (int coord = 0; coord < c.x.n; ++coord) {
      Rational s = 0;
      for (int i = 0; i < c.x.r; ++i) s += t[i] * c.x.fan.rays[i][coord];
      relation = relation && s == 0;
    }
    bool stable = random_class(c.x.mov_curves, sub) == cls;
    res.check(nonneg && relation && stable, class_witness("class", cls));
  }
}

// ---------------------------------------------------------------- polytopes

inline void prop_pairing_mixed_volume(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ alpha = random_class(c.x.mov_curves, rng);
    VecQ t = c.x.relation_of(alpha);
    auto rep = solve_minkowski(weight_to_facet_data(c.x.fan, t), c.tol.solver);
    if (!rep.converged) {
      res.fail(class_witness("curve", alpha), rep.residual);
      continue;
    }
    // the facet formula needs tight supports, so pair against nef classes
    VecQ y = random_class(c.x.nef_divisors, rng);
    VecQ a = divisor_rep(c.x, y);
    double fact = 1;
    for (int i = 2; i <= c.x.n; ++i) fact *= i;
    double lhs = fact * mixed_volume_top(rep.polytope, polytope_d(c.x, a));
    double rhs = to_double(dot(y, alpha));
    double resid = rel_gap(lhs, rhs);
    res.check(resid <= c.tol.volume_eq,
              Json{{"curve", vec_to_json(alpha)}, {"divisor", vec_to_json(y)}},
              resid);
  }
}

inline void prop_brunn_minkowski(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  int n = c.x.n;
  for (int k = 0; k < c.count; ++k) {
    VecQ y1 = random_class(c.x.eff_divisors, rng);
    VecQ y2 = random_class(c.x.eff_divisors, rng);
    VecQ a1 = c.x.sigma_decompose(divisor_rep(c.x, y1)).positive;
    VecQ a2 = c.x.sigma_decompose(divisor_rep(c.x, y2)).positive;
    PolytopeQ p = c.x.divisor_polytope(a1);
    PolytopeQ q = c.x.divisor_polytope(a2);
    if (!p.full_dimensional() || !q.full_dimensional()) {
      ++res.skipped;
      continue;
    }
    double mv = to_double(mixed_volume_top(p, q));
    double bound = std::pow(to_double(p.volume()), (n - 1.0) / n) *
                   std::pow(to_double(q.volume()), 1.0 / n);
    if (mv < bound - 1e-7 * std::max(1.0, bound)) {
      res.fail(Json{{"y1", vec_to_json(y1)}, {"y2", vec_to_json(y2)}},
               rel_gap(mv, bound));
      continue;
    }
    if (std::fabs(mv - bound) <= 1e-7 * std::max(1.0, bound)) {
      // equality requires homothety: h1 = lambda h2 + <t, v_i> solvable
      MatQ rows;
      VecQ rhs;
      for (int i = 0; i < c.x.r; ++i) {
        VecQ row;
        row.push_back(q.support(c.x.fan.rays[i]));
        for (int j = 0; j < c.x.n; ++j) row.push_back(c.x.fan.rays[i][j]);
        rows.push_back(std::move(row));
        rhs.push_back(p.support(c.x.fan.rays[i]));
      }
      auto sol = solve_any(rows, rhs);
      res.check(sol.has_value() && (*sol)[0] > 0,
                Json{{"y1", vec_to_json(y1)}, {"y2", vec_to_json(y2)},
                     {"note", "equality without homothety"}});
    } else {
      res.pass();
    }
  }
}

inline void prop_volume_homogeneity(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  std::uniform_int_distribution<int> num(1, 6), den(1, 3);
  for (int k = 0; k < c.count; ++k) {
    VecQ y = random_class(c.x.eff_divisors, rng);
    VecQ a = divisor_rep(c.x, y);
    Rational lam(num(rng), den(rng));
    bool vol_ok = c.x.volume_divisor(vscale(lam, a)) ==
                  rat_pow(lam, c.x.n) * c.x.volume_divisor(a);
    PolytopeQ p = c.x.divisor_polytope(a);
    PolytopeQ ps = c.x.divisor_polytope(vscale(lam, a));
    VecQ y2 = random_class(c.x.nef_divisors, rng);
    PolytopeQ q = c.x.divisor_polytope(divisor_rep(c.x, y2));
    bool mixed_ok = !p.full_dimensional() ||
                    mixed_volume_top(ps, q) ==
                        rat_pow(lam, c.x.n - 1) * mixed_volume_top(p, q);
    res.check(vol_ok && mixed_ok, class_witness("class", y));
  }
}

inline void prop_polytope_roundtrip(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ y = random_class(c.x.eff_divisors, rng);
    VecQ a = divisor_rep(c.x, y);
    PolytopeQ p = c.x.divisor_polytope(a);
    if (!p.full_dimensional()) {
      ++res.skipped;
      continue;
    }
    PolytopeQ back = PolytopeQ::from_vertices(p.vertices);
    bool ok = back.volume() == p.volume();
    for (int i = 0; ok && i < c.x.r; ++i)
      ok = back.support(c.x.fan.rays[i]) == p.support(c.x.fan.rays[i]);
    res.check(ok, class_witness("class", y));
  }
}

// ---------------------------------------------------------------- minkowski

inline void prop_minkowski_roundtrip(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ y = random_class(c.x.nef_divisors, rng);
    VecQ a = divisor_rep(c.x, y);
    if (c.x.volume_divisor(a) == 0) {
      ++res.skipped;
      continue;
    }
    VecQ t = c.x.relation_of(c.x.positive_product_top(a));
    auto rep = solve_minkowski(weight_to_facet_data(c.x.fan, t), 1e-10, 20000);
    if (!rep.converged) {
      res.fail(class_witness("class", y), rep.residual);
      continue;
    }
    PolytopeQ ref = c.x.divisor_polytope(a);
    VecQ cen = ref.centroid();
    std::vector<VecD> ref_verts;
    double diam = 1;
    for (const auto& v : ref.vertices) {
      ref_verts.push_back(to_doubles(vsub(v, cen)));
      diam = std::max(diam, norm2(ref_verts.back()));
    }
    double haus = 0;
    auto nearest = [](const VecD& v, const std::vector<VecD>& pts) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : pts) {
        double d2 = 0;
        for (size_t j = 0; j < v.size(); ++j) d2 += (v[j] - p[j]) * (v[j] - p[j]);
        best = std::min(best, std::sqrt(d2));
      }
      return best;
    };
    for (const auto& v : rep.polytope.vertices) haus = std::max(haus, nearest(v, ref_verts));
    for (const auto& v : ref_verts) haus = std::max(haus, nearest(v, rep.polytope.vertices));
    double vol_gap = rel_gap(rep.polytope.volume(), to_double(ref.volume()));
    bool ok = haus <= 1e-6 * diam && vol_gap <= 1e-8;
    res.check(ok, class_witness("class", y), std::max(vol_gap, haus / diam));
  }
}

inline void prop_minkowski_scaling(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  const Rational lams[] = {Rational(2), Rational(3), Rational(1, 2)};
  for (int k = 0; k < c.count; ++k) {
    VecQ alpha = random_class(c.x.mov_curves, rng);
    VecQ t = c.x.relation_of(alpha);
    Rational lam = lams[rng() % 3];
    auto r1 = solve_minkowski(weight_to_facet_data(c.x.fan, t), c.tol.solver);
    auto r2 = solve_minkowski(weight_to_facet_data(c.x.fan, vscale(lam, t)), c.tol.solver);
    if (!r1.converged || !r2.converged) {
      res.fail(class_witness("curve", alpha));
      continue;
    }
    double n = c.x.n;
    double want_vol = std::pow(to_double(lam), n / (n - 1)) * r1.polytope.volume();
    double vol_resid = rel_gap(r2.polytope.volume(), want_vol);
    double hscale = std::pow(to_double(lam), 1.0 / (n - 1));
    double h_resid = 0;
    for (int i = 0; i < c.x.r; ++i) {
      VecD ray = to_doubles(c.x.fan.rays[i]);
      double h1 = r1.polytope.support(ray), h2 = r2.polytope.support(ray);
      h_resid = std::max(h_resid, std::fabs(h2 - hscale * h1) / std::max(1.0, std::fabs(h2)));
    }
    res.check(vol_resid <= 1e-6 && h_resid <= 1e-6, class_witness("curve", alpha),
              std::max(vol_resid, h_resid));
  }
}

inline void prop_facet_gradient(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  const Rational delta(1, 100000);
  for (int k = 0; k < c.count; ++k) {
    VecQ y = random_class(c.x.nef_divisors, rng);
    VecQ a = divisor_rep(c.x, y);
    PolytopeQ p = c.x.divisor_polytope(a);
    if (!p.full_dimensional()) {
      ++res.skipped;
      continue;
    }
    int i = static_cast<int>(rng() % c.x.r);
    VecQ up = a, dn = a;
    up[i] += delta;
    dn[i] -= delta;
    Rational cd = Rational(c.x.divisor_polytope(up).volume() -
                           c.x.divisor_polytope(dn).volume()) /
                  (2 * delta);
    double fv = to_double(p.normalized_facet_volume(c.x.fan.rays[i]));
    double resid = std::fabs(to_double(cd) - fv) / std::max(std::fabs(fv), 1e-9);
    res.check(resid <= 1e-5, Json{{"class", vec_to_json(y)}, {"ray", i}}, resid);
  }
}

// --------------------------------------------------------------- transforms

inline void prop_product_volume(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ y = random_class(c.x.nef_divisors, rng);
    VecQ a = divisor_rep(c.x, y);
    Rational vol = c.x.volume_divisor(a);
    if (vol == 0) {
      ++res.skipped;
      continue;
    }
    try {
      auto m = mcal(c.x, c.x.positive_product_top(a));
      double resid;
      if (m.exact_value)
        resid = *m.exact_value == vol ? 0.0
                                      : rel_gap(to_double(*m.exact_value), to_double(vol));
      else
        resid = rel_gap(m.value, to_double(vol));
      res.check(resid <= 1e-6, class_witness("class", y), resid);
    } catch (const std::exception& e) {
      res.fail(Json{{"class", vec_to_json(y)}, {"error", e.what()}});
    }
  }
}

inline void prop_movable_witness(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ y = random_class(c.x.mov_divisors, rng);
    VecQ a = divisor_rep(c.x, y);
    if (c.x.volume_divisor(a) == 0) {
      ++res.skipped;
      continue;
    }
    try {
      auto m = mcal(c.x, c.x.positive_product_top(a));
      if (!m.witness_class) {
        res.fail(class_witness("class", y));
        continue;
      }
      if (m.witness_exact) {
        res.check(*m.witness_class == y, class_witness("class", y));
      } else {
        double resid = 0;
        for (size_t j = 0; j < y.size(); ++j)
          resid = std::max(resid, std::fabs(to_double(Rational((*m.witness_class)[j] - y[j]))));
        res.check(resid <= 1e-6, class_witness("class", y), resid);
      }
    } catch (const std::exception& e) {
      res.fail(Json{{"class", vec_to_json(y)}, {"error", e.what()}});
    }
  }
}

inline void prop_dichotomy(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ alpha = random_class(c.x.mov_curves, rng);
    try {
      auto ci = ci_membership(c.x, alpha);
      double vh = ci.volhat_value, mv = ci.mcal_value;
      bool dominates = vh >= mv * (1 - 1e-9);
      bool equal = std::fabs(vh - mv) <= c.tol.volume_eq * std::max(mv, 1e-12);
      bool ok = dominates;
      if (ok) {
        if (ci.member) ok = equal;  // a nef witness forces exact equality
        else if (equal)
          // the gap scales with the square of the wall distance, so just
          // outside the nef cone it drops below the equality resolution
          ok = ci.witness_violation <= 3e-3;
      }
      res.check(ok, Json{{"curve", vec_to_json(alpha)}, {"volhat", vh}, {"mcal", mv}},
                mv > 0 ? std::max(0.0, (mv - vh) / mv) : 0.0);
    } catch (const std::exception& e) {
      res.fail(Json{{"curve", vec_to_json(alpha)}, {"error", e.what()}});
    }
  }
}

inline void prop_log_concavity(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  double expo = (c.x.n - 1.0) / c.x.n;
  for (int k = 0; k < c.count; ++k) {
    VecQ a1 = random_class(c.x.mov_curves, rng);
    VecQ a2 = random_class(c.x.mov_curves, rng);
    double s1, s2, s12;
    try {
      s1 = std::pow(mcal(c.x, a1).value, expo);
      s2 = std::pow(mcal(c.x, a2).value, expo);
      s12 = std::pow(mcal(c.x, vadd(a1, a2)).value, expo);
    } catch (const std::exception& e) {
      res.fail(Json{{"a1", vec_to_json(a1)}, {"error", e.what()}});
      continue;
    }
    double slack = s12 - s1 - s2;
    if (slack < -1e-6 * std::max(1.0, s12)) {
      res.fail(Json{{"a1", vec_to_json(a1)}, {"a2", vec_to_json(a2)}},
               -slack / std::max(1.0, s12));
      continue;
    }
    if (slack <= 1e-6 * std::max(1.0, s12)) {
      // equality only for proportional classes
      double resid = 0;
      for (size_t i = 0; i < a1.size(); ++i)
        for (size_t j = 0; j < a1.size(); ++j)
          resid = std::max(resid, std::fabs(to_double(Rational(
                                      a1[i] * a2[j] - a1[j] * a2[i]))));
      res.check(resid <= 1e-8, Json{{"a1", vec_to_json(a1)}, {"a2", vec_to_json(a2)},
                                    {"note", "equality without proportionality"}});
    } else {
      res.pass();
    }
  }
}

inline void prop_teissier(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  int n = c.x.n;
  for (int k = 0; k < c.count; ++k) {
    VecQ y1 = random_class(c.x.eff_divisors, rng);
    VecQ y2 = random_class(c.x.eff_divisors, rng);
    VecQ a1 = divisor_rep(c.x, y1);
    VecQ a2 = divisor_rep(c.x, y2);
    double v1 = to_double(c.x.volume_divisor(a1));
    double v2 = to_double(c.x.volume_divisor(a2));
    if (v1 <= 0 || v2 <= 0) {
      ++res.skipped;
      continue;
    }
    double lhs = to_double(dot(y2, c.x.positive_product_top(a1)));
    double bound = std::pow(v1, (n - 1.0) / n) * std::pow(v2, 1.0 / n);
    res.check(lhs >= bound - 1e-9 * std::max(1.0, bound),
              Json{{"y1", vec_to_json(y1)}, {"y2", vec_to_json(y2)}},
              std::max(0.0, (bound - lhs) / std::max(1.0, bound)));
  }
}

// stated for big and movable classes; a large divisorial part in the second
// class shrinks the slope without changing its volume and breaks the bound
inline void prop_diskant(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  int n = c.x.n;
  for (int k = 0; k < c.count; ++k) {
    VecQ y1 = random_class(c.x.mov_divisors, rng);
    VecQ y2 = random_class(c.x.mov_divisors, rng);
    VecQ a1 = divisor_rep(c.x, y1);
    VecQ a2 = divisor_rep(c.x, y2);
    double v1 = to_double(c.x.volume_divisor(a1));
    double v2 = to_double(c.x.volume_divisor(a2));
    if (v1 <= 0 || v2 <= 0) {
      ++res.skipped;
      continue;
    }
    Rational s = diskant_scale(c.x, a1, a2);
    // exactness of the slope: y1 - s y2 on the boundary, beyond it outside
    auto at = cone_membership(c.x.eff_divisors, vsub(y1, vscale(s, y2)));
    auto beyond = cone_membership(
        c.x.eff_divisors, vsub(y1, vscale(Rational(s + Rational(1, 1000)), y2)));
    bool slope_ok = at.location == ConeLocation::Boundary &&
                    beyond.location == ConeLocation::Outside;
    double pair12 = to_double(dot(y2, c.x.positive_product_top(a1)));
    double lhs = std::pow(pair12, n / (n - 1.0)) - v1 * std::pow(v2, 1.0 / (n - 1));
    double base = std::pow(pair12, 1.0 / (n - 1)) -
                  to_double(s) * std::pow(v2, 1.0 / (n - 1));
    double rhs = std::pow(std::max(base, 0.0), n);
    bool ineq_ok = base >= -1e-9 * std::max(1.0, std::pow(pair12, 1.0 / (n - 1))) &&
                   lhs >= rhs - 1e-7 * std::max(1.0, std::fabs(lhs));
    res.check(slope_ok && ineq_ok,
              Json{{"y1", vec_to_json(y1)}, {"y2", vec_to_json(y2)},
                   {"scale", format_rational(s)}},
              std::max(0.0, (rhs - lhs)));
  }
}

inline void prop_derivative(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  const Rational t(1, 10000);
  for (int k = 0; k < c.count; ++k) {
    VecQ alpha = random_class(c.x.mov_curves, rng);
    VecQ beta = random_class(c.x.mov_curves, rng);
    VecQ up = vadd(alpha, vscale(t, beta));
    VecQ dn = vsub(alpha, vscale(t, beta));
    if (cone_membership(c.x.mov_curves, dn).location != ConeLocation::Interior) {
      ++res.skipped;
      continue;
    }
    double cd = (mcal(c.x, up).value - mcal(c.x, dn).value) / (2 * to_double(t));
    double want = mcal_derivative(c.x, alpha, beta);
    double resid = rel_gap(cd, want);
    res.check(resid <= c.tol.derivative,
              Json{{"alpha", vec_to_json(alpha)}, {"beta", vec_to_json(beta)}}, resid);
  }
}

inline void prop_curve_zariski(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ alpha = random_class(c.x.eff_curves, rng);
    try {
      auto z = zariski_decompose(c.x, alpha);
      auto vf = volhat_full(c.x, alpha);
      bool nef_ok =
          cone_membership(c.x.nef_divisors, z.direction_class).location !=
          ConeLocation::Outside;
      bool psef_ok = z.negative_psef_exact || z.psef_residual <= 1e-8;
      double scale = std::pow(std::max(z.volhat, 1e-12), (c.x.n - 1.0) / c.x.n);
      bool orth_ok = z.orthogonality_residual <= 1e-6 * std::max(1.0, scale);
      double vol_gap = std::fabs(vf.inf_value - vf.sup_value) /
                       std::max(vf.value, 1e-12);
      bool forms_ok = vol_gap <= 1e-5;
      res.check(nef_ok && psef_ok && orth_ok && forms_ok,
                Json{{"curve", vec_to_json(alpha)},
                     {"orth", z.orthogonality_residual},
                     {"forms_gap", vol_gap}},
                std::max(vol_gap, z.orthogonality_residual));
    } catch (const std::exception& e) {
      res.fail(Json{{"curve", vec_to_json(alpha)}, {"error", e.what()}});
    }
  }
}

inline void prop_zariski_uniqueness(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ alpha = random_class(c.x.eff_curves, rng);
    try {
      auto z = zariski_decompose(c.x, alpha);
      auto vf = volhat_full(c.x, alpha, 8, rng());
      const VolhatCandidate* best = nullptr;
      for (const auto& cand : vf.candidates)
        if (!best || cand.inf_value < best->inf_value) best = &cand;
      if (!best) {
        res.fail(class_witness("curve", alpha));
        continue;
      }
      VecQ pos2 = vscale(best->sigma, best->product_class);
      double scale = 1, resid = 0;
      for (const auto& e : z.positive_curve)
        scale = std::max(scale, std::fabs(to_double(e)));
      for (size_t j = 0; j < pos2.size(); ++j)
        resid = std::max(resid,
                         std::fabs(to_double(pos2[j] - z.positive_curve[j])));
      res.check(resid <= 1e-6 * scale, class_witness("curve", alpha), resid / scale);
    } catch (const std::exception& e) {
      res.fail(Json{{"curve", vec_to_json(alpha)}, {"error", e.what()}});
    }
  }
}

inline void prop_surface_coincidence(const VerifyContext& c, PropertyResult& res) {
  if (c.x.n != 2) {
    res.skipped += c.count;
    return;
  }
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ alpha = random_class(c.x.mov_curves, rng);
    try {
      auto m = mcal(c.x, alpha);
      double vh = volhat(c.x, alpha);
      if (!m.witness_class) {
        res.fail(class_witness("curve", alpha));
        continue;
      }
      double vol = to_double(c.x.volume_divisor(divisor_rep(c.x, *m.witness_class)));
      double resid = std::max(rel_gap(vh, m.value), rel_gap(m.value, vol));
      res.check(resid <= 1e-6, class_witness("curve", alpha), resid);
    } catch (const std::exception& e) {
      res.fail(Json{{"curve", vec_to_json(alpha)}, {"error", e.what()}});
    }
  }
}

inline void prop_default_zero(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ inside = random_class(c.x.eff_curves, rng);
    VecQ outside = vscale(Rational(-1), inside);
    bool out_ok = false;
    if (cone_membership(c.x.eff_curves, outside).location == ConeLocation::Outside) {
      auto r = volhat_full(c.x, outside);
      out_ok = !r.feasible && r.value == 0;
    }
    bool face_ok = true;
    try {
      VecQ face = random_face_class(c.x.eff_curves, rng);
      auto rb = volhat_full(c.x, face);
      face_ok = rb.feasible && rb.boundary && rb.value == 0;
    } catch (const PreconditionError&) {
      // no face carries nonzero classes; the outside check still applies
    }
    res.check(out_ok && face_ok, class_witness("curve", inside));
  }
}

inline void prop_orthogonal_movable(const VerifyContext& c, PropertyResult& res) {
  bool any = false;
  for (const auto& g : c.x.mov_curves.generators) {
    VecQ t = c.x.relation_of(g);
    MatQ spanning;
    for (int i = 0; i < c.x.r; ++i)
      if (t[i] > 0) spanning.push_back(c.x.fan.rays[i]);
    if (rank(spanning) == c.x.n) continue;
    any = true;
    auto m = mcal(c.x, g);
    bool ok = m.degenerate && m.value == 0 && m.degeneracy.has_value();
    if (ok) {
      ok = dot(*m.degeneracy, g) == 0 &&
           cone_membership(c.x.mov_divisors, *m.degeneracy).location !=
               ConeLocation::Outside;
    }
    res.check(ok, class_witness("generator", g));
  }
  if (!any) ++res.skipped;
}

inline void prop_boundary_alternative(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ b;
    try {
      b = random_face_class(c.x.mov_curves, rng);
    } catch (const PreconditionError&) {
      ++res.skipped;  // no face carries nonzero classes (one-dimensional cone)
      continue;
    }
    try {
      auto cb = classify_boundary(c.x, b);
      if (cb.positive_product) {
        res.check(cb.boundary_certified && cb.witness_class.has_value(),
                  class_witness("curve", b));
      } else {
        bool ok = cb.orthogonal.has_value() && dot(*cb.orthogonal, b) == 0;
        res.check(ok, class_witness("curve", b));
      }
    } catch (const std::exception& e) {
      res.fail(Json{{"curve", vec_to_json(b)}, {"error", e.what()}});
    }
  }
}

inline void prop_morse(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  int n = c.x.n;
  for (int k = 0; k < c.count; ++k) {
    VecQ alpha = random_class(c.x.mov_curves, rng);
    VecQ beta0 = random_class(c.x.mov_curves, rng);
    auto m = mcal(c.x, alpha);
    if (!m.exact_value || !m.witness_class) {
      ++res.skipped;
      continue;
    }
    Rational pb = dot(*m.witness_class, beta0);
    if (pb <= 0) {
      ++res.skipped;
      continue;
    }
    // small beta certifies, large beta must not
    Rational small = Rational(*m.exact_value / (4 * n * pb));
    Rational large = Rational(2 * *m.exact_value / (Rational(n) * pb));
    try {
      auto mb1 = morse_bound(c.x, alpha, vscale(small, beta0));
      bool bound_ok = true;
      if (mb1.exact && mb1.exact_bound) {
        Rational want = Rational(*m.exact_value -
                                 Rational(n * n, n - 1) * Rational(small * pb));
        bound_ok = *mb1.exact_bound == want;
      }
      auto mb2 = morse_bound(c.x, alpha, vscale(large, beta0));
      res.check(mb1.certified_big && bound_ok && !mb2.certified_big,
                Json{{"alpha", vec_to_json(alpha)}, {"beta", vec_to_json(beta0)}});
    } catch (const std::exception& e) {
      res.fail(Json{{"alpha", vec_to_json(alpha)}, {"error", e.what()}});
    }
  }
}

inline void prop_projection(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ y = random_class(c.x.eff_divisors, rng);
    VecQ a = divisor_rep(c.x, y);
    if (c.x.volume_divisor(a) == 0) {
      ++res.skipped;
      continue;
    }
    try {
      auto r = pi_hat(c.x, a);
      bool nef_ok = cone_membership(c.x.nef_divisors, r.value_class).location !=
                    ConeLocation::Outside;
      auto r2 = pi_hat(c.x, r.value);
      bool idem_ok = r2.nef_input && r2.value_class == r.value_class;
      VecQ ynef = random_class(c.x.nef_divisors, rng);
      auto rn = pi_hat(c.x, divisor_rep(c.x, ynef));
      bool ident_ok = rn.nef_input && rn.value_class == ynef;
      res.check(nef_ok && idem_ok && ident_ok, class_witness("class", y));
    } catch (const std::exception& e) {
      res.fail(Json{{"class", vec_to_json(y)}, {"error", e.what()}});
    }
  }
}

// -------------------------------------------------------------------- polar

inline ConcaveConeFunction quadrant_product() {
  ConcaveConeFunction f;
  MatQ gens;
  gens.push_back(VecQ{Rational(1), Rational(0)});
  gens.push_back(VecQ{Rational(0), Rational(1)});
  f.cone = cone_from_generators(gens, 2);
  f.weight = 2;
  f.eval = [](const VecD& v) { return v[0] * v[1]; };
  return f;
}

inline void prop_polar_closed_form(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  auto f = quadrant_product();
  std::uniform_int_distribution<int> num(1, 40);
  for (int k = 0; k < c.count; ++k) {
    VecQ w{Rational(num(rng), 10), Rational(num(rng), 10)};
    double got = polar_value(f, w);
    double want = 4 * to_double(Rational(w[0] * w[1]));
    double resid = rel_gap(got, want);
    res.check(resid <= 1e-4, class_witness("w", w), resid);
  }
}

inline void prop_polar_agreement(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  auto f_nef = volume_cone_function(c.x, c.x.nef_divisors);
  auto f_eff = volume_cone_function(c.x, c.x.eff_divisors);
  int cap = std::min(c.count, 60);
  for (int k = 0; k < cap; ++k) {
    VecQ alpha = random_class(c.x.mov_curves, rng);
    try {
      double vh = volhat(c.x, alpha);
      double mv = mcal(c.x, alpha).value;
      double p_nef = polar_full(f_nef, alpha, 1e-6, 8).value;
      double p_eff = polar_full(f_eff, alpha, 1e-6, 8).value;
      double resid = std::max(rel_gap(p_nef, vh), rel_gap(p_eff, mv));
      res.check(resid <= 1e-4, class_witness("curve", alpha), resid);
    } catch (const std::exception& e) {
      res.fail(Json{{"curve", vec_to_json(alpha)}, {"error", e.what()}});
    }
  }
}

inline void prop_polar_homogeneity(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  auto f = volume_cone_function(c.x, c.x.nef_divisors);
  double expo = c.x.n / (c.x.n - 1.0);
  std::uniform_int_distribution<int> num(1, 5), den(1, 2);
  int cap = std::min(c.count, 40);
  for (int k = 0; k < cap; ++k) {
    VecQ w = random_class(c.x.eff_curves, rng);
    Rational lam(num(rng), den(rng));
    double base = polar_full(f, w, 1e-6, 8).value;
    double scaled = polar_full(f, vscale(lam, w), 1e-6, 8).value;
    double resid = rel_gap(scaled, std::pow(to_double(lam), expo) * base);
    res.check(resid <= 1e-5, class_witness("w", w), resid);
  }
}

inline void prop_polar_concavity(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  auto f = volume_cone_function(c.x, c.x.nef_divisors);
  double expo = (c.x.n - 1.0) / c.x.n;
  int cap = std::min(c.count, 40);
  for (int k = 0; k < cap; ++k) {
    VecQ w1 = random_class(c.x.eff_curves, rng);
    VecQ w2 = random_class(c.x.eff_curves, rng);
    double g1 = std::pow(polar_full(f, w1, 1e-6, 8).value, expo);
    double g2 = std::pow(polar_full(f, w2, 1e-6, 8).value, expo);
    double g12 = std::pow(polar_full(f, vadd(w1, w2), 1e-6, 8).value, expo);
    double slack = g12 - g1 - g2;
    res.check(slack >= -1e-6 * std::max(1.0, g12),
              Json{{"w1", vec_to_json(w1)}, {"w2", vec_to_json(w2)}},
              std::max(0.0, -slack));
  }
}

inline void prop_polar_involution(const VerifyContext& c, PropertyResult& res) {
  if (c.x.n != 2) {
    res.skipped += std::min(c.count, 4);
    return;
  }
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  auto f = volume_cone_function(c.x, c.x.nef_divisors);
  ConcaveConeFunction dual;
  dual.cone = c.x.eff_curves;
  dual.weight = 2;
  dual.eval = [&f](const VecD& w) {
    VecQ wq;
    for (double e : w) wq.push_back(rational_exact(e));
    return polar_full(f, wq, 1e-7, 2).value;
  };
  int cap = std::min(c.count, 4);
  for (int k = 0; k < cap; ++k) {
    VecQ y = random_class(c.x.nef_divisors, rng);
    double vol = to_double(c.x.volume_divisor(divisor_rep(c.x, y)));
    if (vol <= 0) {
      ++res.skipped;
      continue;
    }
    double back = polar_full(dual, y, 1e-3, 4).value;
    double resid = rel_gap(back, vol);
    res.check(resid <= 1e-3, class_witness("class", y), resid);
  }
}

inline void prop_formal_zariski(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  auto f = volume_cone_function(c.x, c.x.nef_divisors);
  int cap = std::min(c.count, 10);
  for (int k = 0; k < cap; ++k) {
    VecQ alpha = random_class(c.x.eff_curves, rng);
    try {
      auto fz = formal_zariski(f, alpha, 1e-6);
      auto z = zariski_decompose(c.x, alpha);
      double scale = 1;
      for (const auto& e : z.positive_curve)
        scale = std::max(scale, std::fabs(to_double(e)));
      double resid = 0;
      for (size_t j = 0; j < fz.positive.size(); ++j)
        resid = std::max(resid, std::fabs(fz.positive[j] -
                                          to_double(z.positive_curve[j])));
      bool ok = fz.negative_in_dual && fz.value_residual <= 1e-3 &&
                resid <= 2e-3 * scale && rel_gap(fz.value, z.volhat) <= 1e-3;
      res.check(ok, class_witness("curve", alpha), resid / scale);
    } catch (const std::exception& e) {
      res.fail(Json{{"curve", vec_to_json(alpha)}, {"error", e.what()}});
    }
  }
}

inline void prop_normal_fan(const VerifyContext& c, PropertyResult& res) {
  std::mt19937_64 rng(property_seed(c.seed, res.id));
  for (int k = 0; k < c.count; ++k) {
    VecQ alpha = random_class(c.x.mov_curves, rng);
    VecQ t = c.x.relation_of(alpha);
    auto rep = solve_minkowski(weight_to_facet_data(c.x.fan, t), c.tol.solver);
    if (!rep.converged) {
      res.fail(class_witness("curve", alpha), rep.residual);
      continue;
    }
    // the reconstruction must be cut out by fan rays alone
    std::vector<HalfSpace<double>> hs;
    for (int i = 0; i < c.x.r; ++i) {
      VecD ray = to_doubles(c.x.fan.rays[i]);
      hs.push_back({ray, rep.polytope.support(ray), false});
    }
    PolytopeD back = PolytopeD::from_halfspaces(std::move(hs), c.x.n, 1e-9, false);
    double resid = rel_gap(back.volume(), rep.polytope.volume());
    res.check(resid <= 1e-6, class_witness("curve", alpha), resid);
  }
}

inline const std::vector<PropertySpec>& property_table() {
  static const std::vector<PropertySpec> table = {
      {"cone-duality", {"cone-duality"}, prop_cone_duality},
      {"wall-positivity", {"wall-positivity"}, prop_wall_positivity},
      {"pairing-representation-invariance", {"pairing-well-defined"},
       prop_pairing_representation},
      {"sigma-idempotence-and-volume", {"sigma-decomposition"}, prop_sigma},
      {"class-sampling", {"minkowski-weight-sampling"}, prop_class_sampling},
      {"pairing-mixed-volume", {"pairing-mixed-volume"}, prop_pairing_mixed_volume},
      {"brunn-minkowski", {"brunn-minkowski"}, prop_brunn_minkowski},
      {"volume-homogeneity", {"volume-homogeneity"}, prop_volume_homogeneity},
      {"polytope-roundtrip", {"polytope-roundtrip"}, prop_polytope_roundtrip},
      {"minkowski-roundtrip", {"minkowski-reconstruction"}, prop_minkowski_roundtrip},
      {"minkowski-scaling", {"minkowski-scaling"}, prop_minkowski_scaling},
      {"facet-gradient", {"facet-gradient"}, prop_facet_gradient},
      {"product-volume-identity", {"product-volume-identity"}, prop_product_volume},
      {"movable-witness-bijection", {"movable-witness"}, prop_movable_witness},
      {"volhat-mcal-dichotomy", {"volhat-mcal-dichotomy"}, prop_dichotomy},
      {"log-concavity", {"log-concavity"}, prop_log_concavity},
      {"teissier", {"teissier"}, prop_teissier},
      {"diskant", {"diskant", "diskant-scale"}, prop_diskant},
      {"mcal-derivative", {"mcal-derivative"}, prop_derivative},
      {"curve-zariski", {"curve-zariski"}, prop_curve_zariski},
      {"zariski-uniqueness", {"zariski-uniqueness"}, prop_zariski_uniqueness},
      {"surface-coincidence", {"surface-coincidence"}, prop_surface_coincidence},
      {"curve-volume-default-zero", {"curve-volume-default-zero"}, prop_default_zero},
      {"orthogonal-movable-vanishing", {"orthogonal-movable"}, prop_orthogonal_movable},
      {"boundary-alternative", {"boundary-alternative"}, prop_boundary_alternative},
      {"morse-certification", {"morse-criterion"}, prop_morse},
      {"pihat-projection", {"projection-map"}, prop_projection},
      {"polar-closed-form", {"polar-framework"}, prop_polar_closed_form},
      {"polar-agreement", {"polar-framework"}, prop_polar_agreement},
      {"polar-homogeneity", {"polar-homogeneity"}, prop_polar_homogeneity},
      {"polar-concavity", {"polar-concavity"}, prop_polar_concavity},
      {"polar-involution", {"polar-involution"}, prop_polar_involution},
      {"formal-zariski", {"formal-zariski"}, prop_formal_zariski},
      {"normal-fan-refinement", {"normal-fan-refinement"}, prop_normal_fan},
      {"fixture-relations", {"fixture-relations"}, prop_fixture_relations},
  };
  return table;
}

}  // namespace detail

inline VecQ random_class(const ToricVariety& x, const std::string& cone_id,
                         std::uint64_t seed) {
  const ConeDesc* cone = nullptr;
  if (cone_id == "eff" || cone_id == "eff-divisors") cone = &x.eff_divisors;
  else if (cone_id == "nef") cone = &x.nef_divisors;
  else if (cone_id == "mov" || cone_id == "mov-divisors") cone = &x.mov_divisors;
  else if (cone_id == "eff-curves") cone = &x.eff_curves;
  else if (cone_id == "mov-curves") cone = &x.mov_curves;
  if (!cone) throw std::invalid_argument("unknown cone id '" + cone_id + "'");
  return random_class(*cone, seed);
}

inline VerificationReport verify_suite(const ToricVariety& x, std::uint64_t seed,
                                       int count, Tolerances tol = {},
                                       const std::string& fan_id = "fan") {
  VerificationReport report;
  report.fan_id = fan_id;
  report.seed = seed;
  report.count = count;
  report.tol = tol;

  const auto& table = detail::property_table();
  report.properties.resize(table.size());
  detail::VerifyContext ctx{x, seed, count, tol};

  int threads = 1;
  if (const char* env = std::getenv("POSCURVES_THREADS")) {
    int want = std::atoi(env);
    threads = std::max(1, std::min(want, 64));
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= table.size()) return;
      PropertyResult& res = report.properties[i];
      res.id = table[i].id;
      res.claims = table[i].claims;
      try {
        table[i].run(ctx, res);
      } catch (const std::exception& e) {
        res.fail(Json{{"error", e.what()}});
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // self-audit: every registered claim needs a property behind it
  for (const auto& claim : claim_registry()) {
    bool covered = false;
    for (const auto& spec : table)
      for (const auto& cl : spec.claims) covered = covered || cl == claim;
    if (!covered) report.uncovered_claims.push_back(claim);
  }

  report.out_of_scope = {
      {"mobility counts",
       "asymptotic enumerative limits; no finite computation converges at desk "
       "scale, so these are audited as out of scope rather than tested"},
      {"weighted mobility counts",
       "same asymptotic obstruction as the unweighted counts"},
      {"movable-cone mobility variants",
       "defined through the same asymptotic counts; excluded with them"},
  };
  return report;
}

}  // namespace poscurves
