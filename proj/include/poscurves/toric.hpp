#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "poscurves/cone.hpp"
#include "poscurves/errors.hpp"
#include "poscurves/fan.hpp"
#include "poscurves/polytope.hpp"

namespace poscurves {

inline Rational factorial_q(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct SigmaDecomposition {
  VecQ positive;  // coefficients of the nef-in-codimension-0 part
  VecQ negative;  // coefficients of the discarded effective part
};

// Curve carried by an interior wall, with its actual intersection numbers
// against the invariant divisors as the relation entries.
struct WallCurveClass {
  Wall wall;
  VecQ relation;  // length r, entry i equals D_i . C
  VecQ coords;    // length d, coordinates in the curve-class basis
};

// Complete simplicial toric variety presented by its fan. Divisor classes
// live in Q^d via pairing with a kernel basis of the ray matrix; curve
// classes live in Q^d as coefficients over that same basis, so the
// intersection pairing is the plain dot product of coordinate vectors.
class ToricVariety {
 public:
  Fan fan;
  int n = 0, r = 0, d = 0;
  MatQ kernel;  // d x r, rows form a basis of the relation space
  std::vector<WallCurveClass> walls;
  VecQ cone_mults;
  bool smooth = false;
  bool projective = false;

  ConeDesc eff_divisors;  // pseudo-effective divisor classes
  ConeDesc nef_divisors;
  ConeDesc mov_divisors;  // movable divisor classes
  ConeDesc eff_curves;    // pseudo-effective curve classes (projective case)
  ConeDesc mov_curves;    // movable curve classes

  explicit ToricVariety(Fan f) : fan(std::move(f)) {
    auto rep = fan_check(fan);
    if (!rep.ok) {
      std::string msg = "invalid fan";
      for (const auto& p : rep.problems) msg += "; " + p;
      throw PreconditionError(msg);
    }
    n = fan.dim;
    r = static_cast<int>(fan.rays.size());
    d = r - n;
    smooth = rep.smooth;

    MatQ ray_rows = fan.rays;  // kernel of the transpose = relations among rays
    MatQ eqs = transpose(ray_rows);
    kernel = kernel_basis(eqs);
    if (static_cast<int>(kernel.size()) != d)
      throw PreconditionError("rays do not span the ambient lattice");
    for (auto& row : kernel) row = primitive_integer(row);

    cone_mults.reserve(fan.max_cones.size());
    for (const auto& cone : fan.max_cones) {
      MatQ m;
      for (int idx : cone) m.push_back(fan.rays[idx]);
      cone_mults.push_back(abs_val(det(m)));
    }

    build_walls();
    build_cones();
  }

  // ------------------------------------------------------------ coordinates

  VecQ divisor_coords(const VecQ& a) const {
    check_len(a, r, "divisor coefficient vector");
    VecQ y(d);
    for (int j = 0; j < d; ++j) y[j] = dot(a, kernel[j]);
    return y;
  }

  // Coordinates of a relation vector t (requires sum t_i v_i = 0).
  VecQ curve_coords(const VecQ& t) const {
    check_len(t, r, "curve relation vector");
    for (int coord = 0; coord < n; ++coord) {
      Rational s = 0;
      for (int i = 0; i < r; ++i) s += t[i] * fan.rays[i][coord];
      if (s != 0) throw PreconditionError("vector is not a relation among the rays");
    }
    auto c = solve_any(transpose(kernel), t);
    if (!c) throw std::logic_error("relation outside the kernel span");
    return *c;
  }

  VecQ relation_of(const VecQ& curve) const {
    check_len(curve, d, "curve coordinate vector");
    VecQ t(r, Rational(0));
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < r; ++i) t[i] += curve[j] * kernel[j][i];
    return t;
  }

  static Rational pair(const VecQ& divisor_y, const VecQ& curve_c) { return dot(divisor_y, curve_c); }

  Rational pair_div_curve(const VecQ& a, const VecQ& curve_c) const {
    return dot(divisor_coords(a), curve_c);
  }

  // ------------------------------------------------------------ polytopes

  PolytopeQ divisor_polytope(const VecQ& a) const {
    check_len(a, r, "divisor coefficient vector");
    std::vector<HalfSpace<Rational>> hs;
    hs.reserve(r);
    for (int i = 0; i < r; ++i) hs.push_back({fan.rays[i], a[i], false});
    // complete fan: the normals positively span, so the region is bounded
    return PolytopeQ::from_halfspaces(std::move(hs), n, Rational(0), false);
  }

  Rational volume_divisor(const VecQ& a) const {
    return factorial_q(n) * divisor_polytope(a).volume();
  }

  SigmaDecomposition sigma_decompose(const VecQ& a) const {
    auto q = divisor_polytope(a);
    if (q.empty()) throw PreconditionError("class is not pseudo-effective");
    SigmaDecomposition out;
    out.positive.resize(r);
    out.negative.resize(r);
    for (int i = 0; i < r; ++i) {
      out.positive[i] = q.support(fan.rays[i]);
      out.negative[i] = a[i] - out.positive[i];
      if (out.negative[i] < 0) throw std::logic_error("negative part must be effective");
    }
    return out;
  }

  // <L^{n-1}> as a curve class: (n-1)! times the lattice facet volumes of the
  // divisor polytope. Exact, and invariant under the sigma decomposition.
  VecQ positive_product_top(const VecQ& a) const {
    auto q = divisor_polytope(a);
    if (!q.full_dimensional()) throw PreconditionError("class is not big");
    VecQ t(r);
    Rational f = factorial_q(n - 1);
    for (int i = 0; i < r; ++i) t[i] = f * q.normalized_facet_volume(fan.rays[i]);
    return curve_coords(t);
  }

  // ------------------------------------------------------------ lattice products

  // Exact intersection number of n invariant Q-divisors, by recursively
  // moving each divisor off the accumulated orbit closure.
  Rational intersect_divisors(const MatQ& divisors) const {
    if (static_cast<int>(divisors.size()) != n)
      throw PreconditionError("need exactly dim divisors");
    for (const auto& a : divisors) check_len(a, r, "divisor coefficient vector");
    std::vector<int> sigma;
    return intersect_rec(divisors, 0, sigma);
  }

  Rational degree(const VecQ& a) const {
    MatQ copies(n, a);
    return intersect_divisors(copies);
  }

  // ------------------------------------------------------------ helpers

  const WallCurveClass* find_wall(const std::vector<int>& wall_rays) const {
    std::vector<int> key = wall_rays;
    std::sort(key.begin(), key.end());
    for (const auto& w : walls)
      if (w.wall.rays == key) return &w;
    return nullptr;
  }

  void require_projective() const {
    if (!projective) throw PreconditionError("fan is complete but not projective");
  }

 private:
  std::set<std::vector<int>> cone_sets;  // sorted ray index sets of max cones

  static void check_len(const VecQ& v, int len, const char* what) {
    if (static_cast<int>(v.size()) != len)
      throw PreconditionError(std::string(what) + " has wrong length");
  }

  bool spans_cone(std::vector<int> rays_sorted) const {
    for (const auto& cs : cone_sets)
      if (std::includes(cs.begin(), cs.end(), rays_sorted.begin(), rays_sorted.end()))
        return true;
    return false;
  }

  Rational intersect_rec(const MatQ& divisors, int k, std::vector<int>& sigma) const {
    if (k == n) {
      std::vector<int> key = sigma;
      std::sort(key.begin(), key.end());
      for (size_t ci = 0; ci < fan.max_cones.size(); ++ci) {
        std::vector<int> cs = fan.max_cones[ci];
        std::sort(cs.begin(), cs.end());
        if (cs == key) return Rational(1) / cone_mults[ci];
      }
      throw std::logic_error("full flag is not a maximal cone");
    }
    // representative of divisors[k] vanishing on the current orbit rays
    VecQ a = divisors[k];
    if (!sigma.empty()) {
      MatQ rows;
      VecQ rhs;
      for (int s : sigma) {
        rows.push_back(fan.rays[s]);
        rhs.push_back(-a[s]);
      }
      auto m = solve_any(rows, rhs);
      if (!m) throw std::logic_error("cannot move divisor off the orbit closure");
      for (int i = 0; i < r; ++i) a[i] += dot(*m, fan.rays[i]);
    }
    Rational total = 0;
    for (int i = 0; i < r; ++i) {
      if (a[i] == 0) continue;
      if (std::find(sigma.begin(), sigma.end(), i) != sigma.end()) continue;
      std::vector<int> bigger = sigma;
      bigger.push_back(i);
      std::vector<int> key = bigger;
      std::sort(key.begin(), key.end());
      if (!spans_cone(key)) continue;
      Rational sub = intersect_rec(divisors, k + 1, bigger);
      total += a[i] * sub;
    }
    return total;
  }

  void build_walls() {
    for (const auto& cone : fan.max_cones) {
      std::vector<int> cs = cone;
      std::sort(cs.begin(), cs.end());
      cone_sets.insert(cs);
    }
    auto raw = fan_walls(fan);
    for (const auto& w : raw) {
      std::vector<int> idxs = w.rays;
      idxs.push_back(w.off_a);
      idxs.push_back(w.off_b);
      MatQ eqs(n, VecQ(n + 1));
      for (int coord = 0; coord < n; ++coord)
        for (int pos = 0; pos <= n; ++pos) eqs[coord][pos] = fan.rays[idxs[pos]][coord];
      auto ker = kernel_basis(eqs);
      if (ker.size() != 1) throw std::logic_error("wall relation space is not a line");
      VecQ rel = primitive_integer(ker[0]);
      int pos_a = n - 1, pos_b = n;
      if (rel[pos_a] < 0) rel = vscale(Rational(-1), rel);
      if (rel[pos_a] <= 0 || rel[pos_b] <= 0)
        throw std::logic_error("wall relation is not positive on the off-wall rays");

      Rational mult_tau = wall_mult(w.rays);
      Rational mult_a = cone_mult_of(w.cone_a), mult_b = cone_mult_of(w.cone_b);
      VecQ scaled = vscale(Rational(mult_tau / mult_a / rel[pos_a]), rel);
      if (scaled[pos_b] != mult_tau / mult_b)
        throw std::logic_error("wall relation scaling is inconsistent");

      WallCurveClass wc;
      wc.wall = w;
      wc.relation.assign(r, Rational(0));
      for (int pos = 0; pos <= n; ++pos) wc.relation[idxs[pos]] = scaled[pos];
      wc.coords = curve_coords(wc.relation);
      walls.push_back(std::move(wc));
    }
  }

  Rational cone_mult_of(int ci) const { return cone_mults[ci]; }

  // Lattice multiplicity of a wall: gcd of the maximal minors of its rays.
  Rational wall_mult(const std::vector<int>& wall_rays) const {
    MatQ rows;
    for (int idx : wall_rays) rows.push_back(fan.rays[idx]);
    BigInt g = 0;
    for (int drop = 0; drop < n; ++drop) {
      MatQ sq;
      for (const auto& row : rows) {
        VecQ shortened;
        for (int j = 0; j < n; ++j)
          if (j != drop) shortened.push_back(row[j]);
        sq.push_back(shortened);
      }
      Rational dv = det(sq);
      if (!is_integer(dv)) throw std::logic_error("non-integral wall minor");
      g = boost::multiprecision::gcd(g, boost::multiprecision::abs(rat_num(dv)));
    }
    if (g == 0) throw std::logic_error("wall rays are dependent");
    return Rational(g);
  }

  void build_cones() {
    MatQ div_classes;  // class of D_i = column i of the kernel matrix
    for (int i = 0; i < r; ++i) {
      VecQ col(d);
      for (int j = 0; j < d; ++j) col[j] = kernel[j][i];
      div_classes.push_back(std::move(col));
    }
    eff_divisors = cone_from_generators(div_classes, d);
    mov_curves = dual_cone(eff_divisors);

    MatQ wall_coord_list;
    for (const auto& w : walls) wall_coord_list.push_back(w.coords);
    nef_divisors = cone_from_inequalities(wall_coord_list, d);
    projective = rank(nef_divisors.generators) == d;
    if (projective) {
      eff_curves = dual_cone(nef_divisors);

      MatQ mov_ineqs;
      for (int skip = 0; skip < r; ++skip) {
        MatQ gens;
        for (int i = 0; i < r; ++i)
          if (i != skip) gens.push_back(div_classes[i]);
        if (rank(gens) != d)
          throw PreconditionError("movable cone is degenerate for this fan");
        auto sub = cone_from_generators(gens, d);
        for (const auto& ineq : sub.inequalities) mov_ineqs.push_back(ineq);
      }
      std::sort(mov_ineqs.begin(), mov_ineqs.end());
      mov_ineqs.erase(std::unique(mov_ineqs.begin(), mov_ineqs.end()), mov_ineqs.end());
      mov_divisors = cone_from_inequalities(mov_ineqs, d);
    }
  }
};

}  // namespace poscurves
