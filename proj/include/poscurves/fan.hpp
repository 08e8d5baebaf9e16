#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "poscurves/errors.hpp"
#include "poscurves/linalg.hpp"
#include "poscurves/lp.hpp"

namespace poscurves {

// Simplicial fan in N = Z^dim: primitive ray generators plus the maximal
// cones, each listed as dim ray indices.
struct Fan {
  int dim = 0;
  MatQ rays;  // one row per ray
  std::vector<std::vector<int>> max_cones;
};

struct FanCheckReport {
  bool ok = true;
  bool smooth = true;
  std::vector<std::string> problems;

  void fail(std::string msg) {
    ok = false;
    problems.push_back(std::move(msg));
  }
};

namespace detail {

// Strict overlap test for two full-dimensional simplicial cones: is there a
// point interior to both? Exact LP over the barycentric coefficients.
inline bool interiors_overlap(const MatQ& rays, const std::vector<int>& sa,
                              const std::vector<int>& sb) {
  int n = static_cast<int>(rays[0].size());
  // lambda = s + p, mu = s + q;  R_a lambda = R_b mu, sum(lambda) = 1, max s
  int nv = 2 * n + 1;
  MatQ a(n + 1, VecQ(nv, Rational(0)));
  VecQ b(n + 1, Rational(0));
  for (int coord = 0; coord < n; ++coord) {
    for (int i = 0; i < n; ++i) {
      a[coord][i] = rays[sa[i]][coord];
      a[coord][n + i] = -rays[sb[i]][coord];
      a[coord][2 * n] += rays[sa[i]][coord] - rays[sb[i]][coord];
    }
  }
  for (int i = 0; i < n; ++i) a[n][i] = 1;
  a[n][2 * n] = n;
  b[n] = 1;
  VecQ c(nv, Rational(0));
  c[2 * n] = 1;
  auto r = simplex_max(a, b, c);
  return r.status == LpStatus::Optimal && r.value > 0;
}

}  // namespace detail

// Interior wall of a fan: the common facet of two maximal cones.
struct Wall {
  std::vector<int> rays;  // sorted ray indices, dim-1 of them
  int cone_a = -1, cone_b = -1;
  int off_a = -1, off_b = -1;  // the ray of each cone not on the wall
};

inline std::vector<Wall> fan_walls(const Fan& fan) {
  std::map<std::vector<int>, Wall> by_facet;
  for (size_t ci = 0; ci < fan.max_cones.size(); ++ci) {
    const auto& cone = fan.max_cones[ci];
    for (size_t drop = 0; drop < cone.size(); ++drop) {
      std::vector<int> facet;
      for (size_t j = 0; j < cone.size(); ++j)
        if (j != drop) facet.push_back(cone[j]);
      std::sort(facet.begin(), facet.end());
      auto& w = by_facet[facet];
      w.rays = facet;
      if (w.cone_a < 0) {
        w.cone_a = static_cast<int>(ci);
        w.off_a = cone[drop];
      } else if (w.cone_b < 0) {
        w.cone_b = static_cast<int>(ci);
        w.off_b = cone[drop];
      } else {
        w.cone_b = -2;  // overshared, reported by fan_check
      }
    }
  }
  std::vector<Wall> out;
  for (auto& [facet, w] : by_facet) out.push_back(w);
  return out;
}

// Full validation: well-formed input, simplicial full-dimensional cones,
// every wall shared by exactly two cones lying on opposite sides, pairwise
// disjoint interiors, connected adjacency graph. Together these force the
// cones to cover all of N_R.
inline FanCheckReport fan_check(const Fan& fan) {
  FanCheckReport rep;
  int n = fan.dim, r = static_cast<int>(fan.rays.size());
  if (n < 2) {
    rep.fail("fan dimension must be at least 2");
    return rep;
  }
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(fan.rays[i].size()) != n) {
      rep.fail("ray " + std::to_string(i) + " has wrong length");
      return rep;
    }
    bool integral = true, zero = true;
    for (const auto& x : fan.rays[i]) {
      integral &= is_integer(x);
      zero &= (x == 0);
    }
    if (!integral) rep.fail("ray " + std::to_string(i) + " is not integral");
    if (zero) rep.fail("ray " + std::to_string(i) + " is zero");
    if (!zero && integral && primitive_integer(fan.rays[i]) != fan.rays[i])
      rep.fail("ray " + std::to_string(i) + " is not primitive");
    for (int j = 0; j < i; ++j)
      if (fan.rays[i] == fan.rays[j])
        rep.fail("rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  if (fan.max_cones.empty()) rep.fail("no maximal cones");
  std::vector<bool> used(r, false);
  for (size_t ci = 0; ci < fan.max_cones.size(); ++ci) {
    const auto& cone = fan.max_cones[ci];
    std::string name = "cone " + std::to_string(ci);
    if (static_cast<int>(cone.size()) != n) {
      rep.fail(name + " does not have exactly dim rays (fan must be simplicial)");
      continue;
    }
    std::set<int> uniq(cone.begin(), cone.end());
    if (static_cast<int>(uniq.size()) != n) {
      rep.fail(name + " repeats a ray");
      continue;
    }
    bool in_range = true;
    for (int idx : cone) in_range &= (idx >= 0 && idx < r);
    if (!in_range) {
      rep.fail(name + " references a ray out of range");
      continue;
    }
    for (int idx : cone) used[idx] = true;
    MatQ m;
    for (int idx : cone) m.push_back(fan.rays[idx]);
    Rational dm = det(m);
    if (dm == 0) rep.fail(name + " is not full-dimensional");
    if (abs_val(dm) != 1) rep.smooth = false;
    for (size_t cj = 0; cj < ci; ++cj)
      if (std::set<int>(fan.max_cones[cj].begin(), fan.max_cones[cj].end()) == uniq)
        rep.fail(name + " duplicates cone " + std::to_string(cj));
  }
  for (int i = 0; i < r; ++i)
    if (!used[i]) rep.fail("ray " + std::to_string(i) + " is not in any maximal cone");
  if (!rep.ok) return rep;

  auto walls = fan_walls(fan);
  for (const auto& w : walls) {
    std::string name = "wall {";
    for (size_t k = 0; k < w.rays.size(); ++k)
      name += (k ? "," : "") + std::to_string(w.rays[k]);
    name += "}";
    if (w.cone_b == -2) {
      rep.fail(name + " is shared by more than two cones");
      continue;
    }
    if (w.cone_b < 0) {
      rep.fail(name + " belongs to only one cone (fan is not complete)");
      continue;
    }
    MatQ wall_rows;
    for (int idx : w.rays) wall_rows.push_back(fan.rays[idx]);
    auto normals = kernel_basis(wall_rows);
    if (normals.size() != 1) {
      rep.fail(name + " is degenerate");
      continue;
    }
    Rational sa = dot(normals[0], fan.rays[w.off_a]);
    Rational sb = dot(normals[0], fan.rays[w.off_b]);
    if (sa == 0 || sb == 0 || (sa > 0) == (sb > 0))
      rep.fail(name + ": the two cones do not lie on opposite sides");
  }
  if (!rep.ok) return rep;

  for (size_t ci = 0; ci < fan.max_cones.size(); ++ci)
    for (size_t cj = 0; cj < ci; ++cj)
      if (detail::interiors_overlap(fan.rays, fan.max_cones[ci], fan.max_cones[cj]))
        rep.fail("cones " + std::to_string(cj) + " and " + std::to_string(ci) +
                 " have overlapping interiors");

  std::map<std::vector<int>, std::vector<int>> facet_to_cones;
  for (const auto& w : walls) {
    facet_to_cones[w.rays] = {w.cone_a, w.cone_b};
  }
  std::vector<std::vector<int>> adj(fan.max_cones.size());
  for (const auto& [facet, cones] : facet_to_cones) {
    adj[cones[0]].push_back(cones[1]);
    adj[cones[1]].push_back(cones[0]);
  }
  std::vector<bool> seen(fan.max_cones.size(), false);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = true;
  while (!bfs.empty()) {
    int c = bfs.front();
    bfs.pop();
    for (int nb : adj[c])
      if (!seen[nb]) {
        seen[nb] = true;
        bfs.push(nb);
      }
  }
  for (size_t ci = 0; ci < fan.max_cones.size(); ++ci)
    if (!seen[ci]) rep.fail("cone " + std::to_string(ci) + " is disconnected from cone 0");

  return rep;
}

}  // namespace poscurves
