#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "poscurves/cone.hpp"
#include "poscurves/linalg.hpp"
#include "poscurves/lp.hpp"

namespace poscurves {

template <class T>
struct HalfSpace {
  Vec<T> normal;  // outward: polytope satisfies <x, normal> <= offset
  T offset{};
  bool redundant = false;  // true when the halfspace supports no facet
};

struct UnboundedError : std::runtime_error {
  VecQ recession_direction;
  explicit UnboundedError(VecQ dir)
      : std::runtime_error("unbounded halfspace description"), recession_direction(std::move(dir)) {}
};

namespace detail {

// Do the normals positively span the space? (equivalently: the region is
// bounded whenever it is nonempty). Exact Gordan-type LP test.
inline bool positively_spanning(const MatQ& normals, int d) {
  if (rank(normals) < d) return false;
  size_t k = normals.size();
  // max s  s.t.  sum_i (s + p_i) n_i = 0,  sum_i (s + p_i) = 1,  p >= 0
  MatQ a(d + 1, VecQ(k + 1, Rational(0)));
  VecQ b(d + 1, Rational(0));
  for (size_t i = 0; i < k; ++i)
    for (int j = 0; j < d; ++j) a[j][i] = normals[i][j];
  for (int j = 0; j < d; ++j) {
    a[j][k] = 0;
    for (size_t i = 0; i < k; ++i) a[j][k] += normals[i][j];
  }
  for (size_t i = 0; i < k; ++i) a[d][i] = 1;
  a[d][k] = Rational(static_cast<int>(k));
  b[d] = 1;
  VecQ c(k + 1, Rational(0));
  c[k] = 1;
  auto r = simplex_max(a, b, c);
  return r.status == LpStatus::Optimal && r.value > 0;
}

// A nonzero direction d with <n_i, d> <= 0 for all i, when one exists.
// Maximizes +-d_j over the recession cone intersected with the unit box.
inline std::optional<VecQ> recession_direction(const MatQ& normals, int d) {
  size_t k = normals.size();
  int nv = 2 * d + static_cast<int>(k) + 2 * d;  // d+, d-, normal slacks, box slacks
  MatQ a(k + 2 * d, VecQ(nv, Rational(0)));
  VecQ b(k + 2 * d, Rational(0));
  for (size_t i = 0; i < k; ++i) {
    for (int j = 0; j < d; ++j) {
      a[i][j] = normals[i][j];
      a[i][d + j] = -normals[i][j];
    }
    a[i][2 * d + i] = 1;
  }
  for (int j = 0; j < d; ++j) {
    int r1 = static_cast<int>(k) + 2 * j, r2 = r1 + 1;
    a[r1][j] = 1;
    a[r1][d + j] = -1;
    a[r1][2 * d + k + 2 * j] = 1;
    b[r1] = 1;
    a[r2][j] = -1;
    a[r2][d + j] = 1;
    a[r2][2 * d + k + 2 * j + 1] = 1;
    b[r2] = 1;
  }
  for (int target = 0; target < 2 * d; ++target) {
    VecQ c(nv, Rational(0));
    int j = target % d;
    Rational sign = target < d ? 1 : -1;
    c[j] = sign;
    c[d + j] = -sign;
    auto r = simplex_max(a, b, c);
    if (r.status == LpStatus::Optimal && r.value > 0) {
      VecQ dir(d, Rational(0));
      for (int q = 0; q < d; ++q) dir[q] = r.x[q] - r.x[d + q];
      return primitive_integer(dir);
    }
  }
  return std::nullopt;
}

inline bool region_feasible(const std::vector<HalfSpace<Rational>>& hs, int d) {
  // exists x free with <n_i,x> <= c_i :  N(x+ - x-) + s = c, s >= 0
  size_t k = hs.size();
  MatQ a(k, VecQ(2 * d + k, Rational(0)));
  VecQ b(k, Rational(0));
  for (size_t i = 0; i < k; ++i) {
    for (int j = 0; j < d; ++j) {
      a[i][j] = hs[i].normal[j];
      a[i][d + j] = -hs[i].normal[j];
    }
    a[i][2 * d + i] = 1;
    b[i] = hs[i].offset;
  }
  VecQ c(2 * d + k, Rational(0));
  return simplex_max(a, b, c).status == LpStatus::Optimal;
}

}  // namespace detail

// Convex polytope with cached exact vertex list. T is Rational for the exact
// paths and double inside optimizer loops; eps is the comparison slack (0 exact).
template <class T>
class Polytope {
 public:
  int ambient = 0;
  std::vector<HalfSpace<T>> halfspaces;
  Mat<T> vertices;
  int dim = -1;  // affine dimension of the vertex set, -1 when empty
  T eps{};

  bool empty() const { return vertices.empty(); }
  bool full_dimensional() const { return dim == ambient; }

  // ---------------------------------------------------------------- builders

  static Polytope from_halfspaces(std::vector<HalfSpace<T>> hs, int ambient_dim,
                                  T eps = T{}, bool check_bounded = true) {
    Polytope p;
    p.ambient = ambient_dim;
    p.eps = eps;
    p.halfspaces = dedup_halfspaces(std::move(hs), eps);
    if constexpr (std::is_same_v<T, Rational>) {
      if (check_bounded) {
        MatQ normals;
        for (const auto& h : p.halfspaces) normals.push_back(h.normal);
        if (!detail::positively_spanning(normals, ambient_dim) &&
            detail::region_feasible(p.halfspaces, ambient_dim)) {
          auto dir = detail::recession_direction(normals, ambient_dim);
          throw UnboundedError(dir ? *dir : VecQ(ambient_dim, Rational(0)));
        }
      }
    }
    p.enumerate();
    p.finish();
    return p;
  }

  // Convex hull of a full-dimensional point set (or a single point).
  static Polytope from_vertices(const Mat<T>& pts, T eps = T{}) {
    if (pts.empty()) throw std::invalid_argument("from_vertices: no points");
    Polytope p;
    p.ambient = static_cast<int>(pts[0].size());
    p.eps = eps;
    Mat<T> uniq = dedup_points(pts, eps);
    int adim = affine_dim(uniq, eps);
    if (adim == 0) {
      std::vector<HalfSpace<T>> hs;
      for (int j = 0; j < p.ambient; ++j) {
        Vec<T> e(p.ambient, T{});
        e[j] = T{1};
        hs.push_back({e, uniq[0][j], false});
        Vec<T> me(p.ambient, T{});
        me[j] = T{-1};
        hs.push_back({me, -uniq[0][j], false});
      }
      p.halfspaces = std::move(hs);
      p.vertices = uniq;
      p.finish();
      return p;
    }
    if (adim < p.ambient)
      throw std::invalid_argument("from_vertices: point set is not full-dimensional");
    p.halfspaces = hull_halfspaces(uniq, p.ambient, eps);
    p.enumerate();
    p.finish();
    return p;
  }

  // Internal builder for facet charts: vertices already known, no enumeration.
  static Polytope from_known(std::vector<HalfSpace<T>> hs, Mat<T> verts, int ambient_dim,
                             T eps) {
    Polytope p;
    p.ambient = ambient_dim;
    p.eps = eps;
    p.halfspaces = dedup_halfspaces(std::move(hs), eps);
    p.vertices = dedup_points(verts, eps);
    p.finish();
    return p;
  }

  // ---------------------------------------------------------------- queries

  T support(const Vec<T>& w) const {
    if (empty()) throw std::runtime_error("support of empty polytope");
    T best = dot(vertices[0], w);
    for (const auto& v : vertices) best = std::max(best, dot(v, w));
    return best;
  }

  Polytope translated(const Vec<T>& c) const {
    Polytope p(*this);
    for (auto& h : p.halfspaces) h.offset += dot(h.normal, c);
    for (auto& v : p.vertices) v = vadd(v, c);
    return p;
  }

  // Euclidean n-volume, exact for rational data. 0 for empty or lower-dimensional.
  T volume() const {
    if (empty() || dim < ambient) return T{};
    if (ambient == 0) return T{1};
    if (ambient == 1) {
      T lo = vertices[0][0], hi = vertices[0][0];
      for (const auto& v : vertices) {
        lo = std::min(lo, v[0]);
        hi = std::max(hi, v[0]);
      }
      return hi - lo;
    }
    const Vec<T>& v0 = *std::min_element(vertices.begin(), vertices.end());
    T total{};
    for (size_t i = 0; i < halfspaces.size(); ++i) {
      if (halfspaces[i].redundant) continue;
      T gap = halfspaces[i].offset - dot(halfspaces[i].normal, v0);
      if (gap <= eps) continue;
      auto [chart, pivot_abs] = facet_chart(halfspaces[i].normal, halfspaces[i].offset);
      total += gap * chart.volume() / pivot_abs;
    }
    return total / T(ambient);
  }

  // Lattice-normalized facet volume vol_{n-1}(face_w) / |w| in the direction w;
  // rational whenever the data is. 0 when the supporting face is not a facet.
  T normalized_facet_volume(const Vec<T>& w) const {
    if (empty()) throw std::runtime_error("facet volume of empty polytope");
    if (dim < ambient) throw std::runtime_error("facet volume needs a full-dimensional polytope");
    if (is_zero_vec(w, eps)) throw std::invalid_argument("zero direction");
    if (ambient == 1) {
      // the face is a point; 0-volume normalized by |w| is 1/|w_k| = 1/|w|
      return T{1} / abs_val(w[0]);
    }
    T h = support(w);
    auto [chart, pivot_abs] = facet_chart(w, h);
    if (chart.empty() || chart.dim < ambient - 1) return T{};
    return chart.volume() / pivot_abs;
  }

  double facet_volume_euclidean(const Vec<T>& w) const {
    double n2 = 0;
    for (const auto& x : w) n2 += to_double(x) * to_double(x);
    if (ambient == 1) return 1.0;  // 0-dimensional face has unit 0-volume
    return to_double(normalized_facet_volume(w)) * std::sqrt(n2);
  }

  // Exact centroid (full-dimensional case).
  Vec<T> centroid() const {
    if (empty()) throw std::runtime_error("centroid of empty polytope");
    if (dim < ambient) {  // average of vertices: translation gauge only
      Vec<T> c(ambient, T{});
      for (const auto& v : vertices) c = vadd(c, v);
      return vscale(T{1} / T(static_cast<int>(vertices.size())), c);
    }
    auto [vol, cen] = centroid_full();
    (void)vol;
    return cen;
  }

  // ---------------------------------------------------------------- internals

  // Chart of the face {x : <x,w> = h}: project out the coordinate k with the
  // largest |w_k|; returns the chart polytope in R^{ambient-1} and |w_k|.
  // Euclidean face volume = |w|/|w_k| * chart volume.
  std::pair<Polytope, T> facet_chart(const Vec<T>& w, const T& h) const {
    int k = 0;
    for (int j = 1; j < ambient; ++j)
      if (abs_val(w[j]) > abs_val(w[k])) k = j;
    T wk = w[k];
    Mat<T> face_verts;
    for (const auto& v : vertices)
      if (abs_val(dot(v, w) - h) <= face_tol()) {
        Vec<T> pv;
        pv.reserve(ambient - 1);
        for (int j = 0; j < ambient; ++j)
          if (j != k) pv.push_back(v[j]);
        face_verts.push_back(std::move(pv));
      }
    std::vector<HalfSpace<T>> chs;
    for (const auto& hs : halfspaces) {
      const Vec<T>& u = hs.normal;
      if (abs_val(wk) <= eps) throw std::logic_error("degenerate chart pivot");
      T f = u[k] / wk;
      Vec<T> cn;
      cn.reserve(ambient - 1);
      for (int j = 0; j < ambient; ++j)
        if (j != k) cn.push_back(u[j] - f * w[j]);
      T co = hs.offset - f * h;
      if (is_zero_vec(cn, eps)) continue;  // restricted to a trivial constraint
      chs.push_back({std::move(cn), co, false});
    }
    return {Polytope::from_known(std::move(chs), std::move(face_verts), ambient - 1, eps), abs_val(wk)};
  }

  std::pair<T, Vec<T>> centroid_full() const {
    if (ambient == 1) {
      T lo = vertices[0][0], hi = lo;
      for (const auto& v : vertices) {
        lo = std::min(lo, v[0]);
        hi = std::max(hi, v[0]);
      }
      return {hi - lo, Vec<T>{(hi + lo) / T{2}}};
    }
    const Vec<T>& v0 = *std::min_element(vertices.begin(), vertices.end());
    T total{};
    Vec<T> acc(ambient, T{});
    for (size_t i = 0; i < halfspaces.size(); ++i) {
      if (halfspaces[i].redundant) continue;
      const Vec<T>& w = halfspaces[i].normal;
      T gap = halfspaces[i].offset - dot(w, v0);
      if (gap <= eps) continue;
      auto [chart, pivot_abs] = facet_chart(w, halfspaces[i].offset);
      if (chart.empty() || chart.dim < ambient - 1) continue;
      auto [cvol, ccen] = chart.centroid_full();
      if (cvol <= eps) continue;
      // un-project the chart centroid back onto the facet hyperplane
      int k = 0;
      for (int j = 1; j < ambient; ++j)
        if (abs_val(w[j]) > abs_val(w[k])) k = j;
      Vec<T> fc(ambient, T{});
      T s{};
      for (int j = 0, q = 0; j < ambient; ++j)
        if (j != k) {
          fc[j] = ccen[q++];
          s += w[j] * fc[j];
        }
      fc[k] = (halfspaces[i].offset - s) / w[k];
      T pyr_vol = gap * cvol / pivot_abs / T(ambient);
      // pyramid centroid: apex + (m/(m+1)) (base centroid - apex)
      Vec<T> pc(ambient, T{});
      for (int j = 0; j < ambient; ++j)
        pc[j] = v0[j] + (fc[j] - v0[j]) * T(ambient) / T(ambient + 1);
      total += pyr_vol;
      for (int j = 0; j < ambient; ++j) acc[j] += pyr_vol * pc[j];
    }
    if (total <= eps) return {T{}, v0};
    for (auto& x : acc) x /= total;
    return {total, acc};
  }

 private:
  T face_tol() const {
    if constexpr (std::is_same_v<T, Rational>)
      return Rational(0);
    else
      return eps * scale_hint();
  }

  T scale_hint() const {
    if constexpr (std::is_same_v<T, Rational>) {
      return Rational(1);
    } else {
      double s = 1;
      for (const auto& h : halfspaces) s = std::max(s, std::fabs(to_double(h.offset)));
      return s;
    }
  }

  static Mat<T> dedup_points(const Mat<T>& pts, const T& eps) {
    Mat<T> out;
    for (const auto& p : pts) {
      bool dup = false;
      for (const auto& q : out) {
        bool same = true;
        for (size_t j = 0; j < p.size() && same; ++j) same = abs_val(p[j] - q[j]) <= eps;
        dup |= same;
      }
      if (!dup) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  static int affine_dim(const Mat<T>& pts, const T& eps) {
    if (pts.empty()) return -1;
    Mat<T> diffs;
    for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(vsub(pts[i], pts[0]));
    if (diffs.empty()) return 0;
    return rank(diffs, eps);
  }

  static std::vector<HalfSpace<T>> dedup_halfspaces(std::vector<HalfSpace<T>> hs, const T& eps) {
    std::vector<HalfSpace<T>> out;
    for (auto& h : hs) {
      if (is_zero_vec(h.normal, eps)) {
        if (h.offset < -eps) throw std::invalid_argument("contradictory zero-normal halfspace");
        continue;
      }
      Vec<T> dir;
      T off;
      if constexpr (std::is_same_v<T, Rational>) {
        dir = primitive_integer(h.normal);
        int nz = 0;
        while (dir[nz] == 0) ++nz;
        Rational s = h.normal[nz] / dir[nz];
        off = h.offset / s;
      } else {
        double n2 = 0;
        for (const auto& x : h.normal) n2 += to_double(x) * to_double(x);
        double inv = 1.0 / std::sqrt(n2);
        dir = vscale(T(inv), h.normal);
        off = h.offset * T(inv);
      }
      bool merged = false;
      for (auto& ex : out) {
        bool same = true;
        for (size_t j = 0; j < dir.size() && same; ++j) same = abs_val(ex.normal[j] - dir[j]) <= eps;
        if (same) {
          ex.offset = std::min(ex.offset, off);
          merged = true;
          break;
        }
      }
      if (!merged) out.push_back({std::move(dir), off, false});
    }
    return out;
  }

  static std::vector<HalfSpace<T>> hull_halfspaces(const Mat<T>& pts, int d, const T& eps) {
    std::vector<HalfSpace<T>> hs;
    size_t n = pts.size();
    std::vector<int> idx(d);
    std::vector<int> stack;
    // iterate over all d-subsets of points
    std::function<void(size_t, int)> rec = [&](size_t start, int depth) {
      if (depth == d) {
        Mat<T> rows;
        for (int i = 0; i < d; ++i) {
          Vec<T> r = pts[idx[i]];
          r.push_back(T{-1});
          rows.push_back(std::move(r));
        }
        auto ker = kernel_basis(rows, eps);
        if (ker.size() != 1) return;
        Vec<T> w(ker[0].begin(), ker[0].end() - 1);
        T c = ker[0].back();
        if (is_zero_vec(w, eps)) return;
        bool above = false, below = false;
        for (const auto& p : pts) {
          T v = dot(p, w) - c;
          if (v > eps) above = true;
          if (v < -eps) below = true;
        }
        if (above && below) return;
        if (above) {  // flip to make it an upper bound
          w = vscale(T{-1}, w);
          c = -c;
        }
        // canonical scaling, so repeated subsets of one facet dedup exactly
        T scale{};
        for (const auto& e : w)
          if (!(e >= -eps && e <= eps)) {
            scale = e < T{} ? -e : e;
            break;
          }
        w = vscale(T{1} / scale, w);
        c = c / scale;
        for (const auto& h : hs) {
          T diff = h.offset - c;
          bool same = diff >= -eps && diff <= eps;
          for (size_t i = 0; same && i < w.size(); ++i) {
            T dw = h.normal[i] - w[i];
            same = dw >= -eps && dw <= eps;
          }
          if (same) return;
        }
        hs.push_back({std::move(w), c, false});
        return;
      }
      for (size_t i = start; i + (d - depth) <= n; ++i) {
        idx[depth] = static_cast<int>(i);
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
    return hs;
  }

  void enumerate() {
    vertices.clear();
    size_t m = halfspaces.size();
    if (static_cast<size_t>(ambient) > m) {
      return;
    }
    std::vector<int> idx(ambient);
    std::function<void(size_t, int)> rec = [&](size_t start, int depth) {
      if (depth == ambient) {
        Mat<T> a(ambient, Vec<T>(ambient));
        Vec<T> b(ambient);
        for (int i = 0; i < ambient; ++i) {
          a[i] = halfspaces[idx[i]].normal;
          b[i] = halfspaces[idx[i]].offset;
        }
        auto x = solve_square(a, b, solve_tol());
        if (!x) return;
        T slack_allow = face_tol();
        for (const auto& h : halfspaces)
          if (dot(h.normal, *x) > h.offset + slack_allow) return;
        vertices.push_back(std::move(*x));
        return;
      }
      for (size_t i = start; i + (ambient - depth) <= m; ++i) {
        idx[depth] = static_cast<int>(i);
        rec(i + 1, depth + 1);
      }
    };
    if (ambient == 0) {
      vertices.push_back(Vec<T>{});
      return;
    }
    rec(0, 0);
    vertices = dedup_points(vertices, vertex_merge_tol());
  }

  T solve_tol() const {
    if constexpr (std::is_same_v<T, Rational>)
      return Rational(0);
    else
      return 1e-11;
  }

  T vertex_merge_tol() const {
    if constexpr (std::is_same_v<T, Rational>)
      return Rational(0);
    else
      return eps * scale_hint();
  }

  void finish() {
    std::sort(vertices.begin(), vertices.end());
    dim = affine_dim(vertices, face_tol());
    if (dim == ambient) {
      for (auto& h : halfspaces) {
        Mat<T> active;
        for (const auto& v : vertices)
          if (abs_val(dot(v, h.normal) - h.offset) <= face_tol()) active.push_back(v);
        h.redundant = affine_dim(active, face_tol()) < ambient - 1;
      }
    }
  }
};

using PolytopeQ = Polytope<Rational>;
using PolytopeD = Polytope<double>;

// (1/n) * sum over facets F of P of h_Q(normal_F) * vol(F)/|normal_F|.
// Exact in rational arithmetic; scale-invariant in the stored normals.
template <class T>
T mixed_volume_top(const Polytope<T>& p, const Polytope<T>& q) {
  if (!p.full_dimensional()) throw std::runtime_error("mixed_volume_top: P must be full-dimensional");
  if (q.empty()) throw std::runtime_error("mixed_volume_top: Q must be nonempty");
  T acc{};
  for (const auto& h : p.halfspaces) {
    if (h.redundant) continue;
    acc += q.support(h.normal) * p.normalized_facet_volume(h.normal);
  }
  return acc / T(p.ambient);
}

}  // namespace poscurves
