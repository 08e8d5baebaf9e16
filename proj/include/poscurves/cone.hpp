#pragma once

#include <algorithm>
#include <bitset>
#include <optional>
#include <stdexcept>
#include <string>

#include "poscurves/lp.hpp"

namespace poscurves {

// Polyhedral cone {x : <ineq_i, x> >= 0} = cone(generators), both lists
// kept in the same coordinate space and cross-validated by duality.
struct ConeDesc {
  int dim = 0;
  MatQ generators;    // extremal rays, primitive integer vectors
  MatQ inequalities;  // facet functionals, primitive integer vectors
};

enum class ConeLocation { Interior, Boundary, Outside };

struct ConeMembership {
  ConeLocation location = ConeLocation::Outside;
  int violated_inequality = -1;  // certificate when outside
  Rational violation = 0;
  std::optional<VecQ> combination;  // generator coefficients when inside
};

namespace detail {

constexpr size_t kMaxConstraints = 128;
using ActiveMask = std::bitset<kMaxConstraints>;

inline bool subset_of(const ActiveMask& a, const ActiveMask& b) { return (a & b) == a; }

}  // namespace detail

// Extremal rays of the pointed cone {x in Q^d : c·x >= 0 for all rows c}.
// Incremental double description with the combinatorial adjacency test.
inline MatQ dual_description(const MatQ& constraints, int d) {
  if (d == 0) return {};
  MatQ cs;
  for (const auto& row : constraints) {
    auto p = primitive_integer(row);
    if (is_zero_vec(p)) continue;
    if (std::find(cs.begin(), cs.end(), p) == cs.end()) cs.push_back(p);
  }
  if (cs.size() > detail::kMaxConstraints)
    throw std::runtime_error("dual_description: constraint count above desk scale");
  if (rank(cs) < d)
    throw std::runtime_error("dual_description: cone is not pointed (missing constraints)");

  // greedy independent subset for the simplicial seed cone
  std::vector<int> seed;
  MatQ seed_rows;
  for (size_t i = 0; i < cs.size() && static_cast<int>(seed.size()) < d; ++i) {
    seed_rows.push_back(cs[i]);
    if (rank(seed_rows) == static_cast<int>(seed_rows.size()))
      seed.push_back(static_cast<int>(i));
    else
      seed_rows.pop_back();
  }
  std::vector<int> order(seed);
  for (size_t i = 0; i < cs.size(); ++i)
    if (std::find(seed.begin(), seed.end(), static_cast<int>(i)) == seed.end())
      order.push_back(static_cast<int>(i));

  auto binv = inverse(seed_rows);
  if (!binv) throw std::logic_error("dual_description: singular seed");

  struct Ray {
    VecQ v;
    detail::ActiveMask active;
  };
  std::vector<Ray> rays;
  for (int j = 0; j < d; ++j) {
    Ray r;
    r.v.resize(d);
    for (int i = 0; i < d; ++i) r.v[i] = (*binv)[i][j];
    r.v = primitive_integer(r.v);
    for (int i = 0; i < d; ++i)
      if (i != j) r.active.set(i);
    rays.push_back(std::move(r));
  }

  for (size_t step = d; step < order.size(); ++step) {
    const VecQ& c = cs[order[step]];
    std::vector<Rational> val(rays.size());
    bool any_neg = false;
    for (size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(c, rays[i].v);
      any_neg |= (val[i] < 0);
    }
    if (!any_neg) {
      for (size_t i = 0; i < rays.size(); ++i)
        if (val[i] == 0) rays[i].active.set(step);
      continue;
    }
    std::vector<Ray> next;
    for (size_t i = 0; i < rays.size(); ++i) {
      if (val[i] > 0) next.push_back(rays[i]);
      if (val[i] == 0) {
        next.push_back(rays[i]);
        next.back().active.set(step);
      }
    }
    for (size_t p = 0; p < rays.size(); ++p) {
      if (val[p] <= 0) continue;
      for (size_t n = 0; n < rays.size(); ++n) {
        if (val[n] >= 0) continue;
        auto common = rays[p].active & rays[n].active;
        if (static_cast<int>(common.count()) < d - 2) continue;
        bool adjacent = true;
        for (size_t o = 0; o < rays.size() && adjacent; ++o)
          if (o != p && o != n && detail::subset_of(common, rays[o].active)) adjacent = false;
        if (!adjacent) continue;
        Ray nr;
        nr.v = primitive_integer(vsub(vscale(val[p], rays[n].v), vscale(val[n], rays[p].v)));
        nr.active = common;
        nr.active.set(step);
        bool dup = false;
        for (const auto& ex : next) dup |= (ex.v == nr.v);
        if (!dup) next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
    if (rays.empty()) break;
  }

  MatQ out;
  for (auto& r : rays) out.push_back(std::move(r.v));
  std::sort(out.begin(), out.end());
  return out;
}

inline ConeDesc cone_from_generators(const MatQ& gens, int d) {
  ConeDesc c;
  c.dim = d;
  c.inequalities = dual_description(gens, d);
  c.generators = dual_description(c.inequalities, d);
  return c;
}

inline ConeDesc cone_from_inequalities(const MatQ& ineqs, int d) {
  ConeDesc c;
  c.dim = d;
  c.generators = dual_description(ineqs, d);
  c.inequalities = dual_description(c.generators, d);
  return c;
}

inline ConeDesc dual_cone(const ConeDesc& c) {
  ConeDesc d;
  d.dim = c.dim;
  d.generators = c.inequalities;
  d.inequalities = c.generators;
  return d;
}

inline ConeMembership cone_membership(const ConeDesc& cone, const VecQ& x,
                                      const Rational& tol = Rational(0),
                                      bool want_combination = false) {
  ConeMembership m;
  Rational worst = 0;
  int worst_idx = -1;
  bool on_boundary = false;
  for (size_t i = 0; i < cone.inequalities.size(); ++i) {
    Rational v = dot(cone.inequalities[i], x);
    if (v < -tol && (worst_idx < 0 || v < worst)) {
      worst = v;
      worst_idx = static_cast<int>(i);
    }
    if (abs_val(v) <= tol) on_boundary = true;
  }
  if (is_zero_vec(x)) on_boundary = true;  // apex
  if (worst_idx >= 0) {
    m.location = ConeLocation::Outside;
    m.violated_inequality = worst_idx;
    m.violation = worst;
    return m;
  }
  m.location = on_boundary ? ConeLocation::Boundary : ConeLocation::Interior;
  if (want_combination) m.combination = cone_combination(cone.generators, x);
  return m;
}

// Duality closure check used by the verification suite.
inline bool duality_closure_holds(const ConeDesc& c) {
  auto regen = dual_description(c.inequalities, c.dim);
  auto reineq = dual_description(c.generators, c.dim);
  auto sorted = [](MatQ m) {
    std::sort(m.begin(), m.end());
    return m;
  };
  return sorted(regen) == sorted(c.generators) && sorted(reineq) == sorted(c.inequalities);
}

}  // namespace poscurves
