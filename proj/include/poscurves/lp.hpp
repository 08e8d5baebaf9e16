#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "poscurves/linalg.hpp"

namespace poscurves {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  VecQ x;
  Rational value = 0;
};

namespace detail {

// Dense exact simplex with Bland's rule. mat rows are B^{-1}[A|b];
// pricing recomputes reduced costs each step (sizes here are tiny).
class SimplexTableau {
 public:
  MatQ mat;                // m x (ncols+1), last column = rhs
  std::vector<int> basis;  // basic variable per row
  int ncols;

  SimplexTableau(const MatQ& a, const VecQ& b, int extra_cols) {
    int m = static_cast<int>(a.size());
    ncols = (m ? static_cast<int>(a[0].size()) : 0) + extra_cols;
    mat.assign(m, VecQ(ncols + 1, Rational(0)));
    for (int i = 0; i < m; ++i) {
      bool flip = b[i] < 0;
      for (size_t j = 0; j < a[i].size(); ++j) mat[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
      mat[i][ncols] = flip ? Rational(-b[i]) : b[i];
    }
    basis.assign(m, -1);
  }

  void pivot(int row, int col) {
    Rational p = mat[row][col];
    for (auto& v : mat[row]) v /= p;
    for (size_t i = 0; i < mat.size(); ++i) {
      if (static_cast<int>(i) == row) continue;
      Rational f = mat[i][col];
      if (f == 0) continue;
      for (int j = 0; j <= ncols; ++j) mat[i][j] -= f * mat[row][j];
    }
    basis[row] = col;
  }

  // Maximizes c over the current basic feasible point. Returns false on unbounded.
  bool optimize(const VecQ& c, long cap = 200000) {
    int m = static_cast<int>(mat.size());
    for (long it = 0; it < cap; ++it) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        Rational red = c[j];
        for (int i = 0; i < m; ++i)
          if (basis[i] >= 0 && c[basis[i]] != 0) red -= c[basis[i]] * mat[i][j];
        bool basic = false;
        for (int i = 0; i < m; ++i) basic |= (basis[i] == j);
        if (!basic && red > 0) {
          enter = j;
          break;  // Bland: first improving column
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best_ratio = 0;
      for (int i = 0; i < m; ++i) {
        if (mat[i][enter] <= 0) continue;
        Rational ratio = mat[i][ncols] / mat[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration cap exceeded");
  }

  Rational objective(const VecQ& c) const {
    Rational v = 0;
    for (size_t i = 0; i < mat.size(); ++i)
      if (basis[i] >= 0) v += c[basis[i]] * mat[i][ncols];
    return v;
  }
};

}  // namespace detail

// maximize c.x  subject to  A x = b, x >= 0  (exact arithmetic)
inline LpResult simplex_max(const MatQ& a, const VecQ& b, const VecQ& c) {
  int m = static_cast<int>(a.size());
  int n = m ? static_cast<int>(a[0].size()) : static_cast<int>(c.size());
  detail::SimplexTableau t(a, b, m);  // n real columns + m artificials
  for (int i = 0; i < m; ++i) {
    t.mat[i][n + i] = 1;
    t.basis[i] = n + i;
  }
  VecQ phase1(t.ncols, Rational(0));
  for (int i = 0; i < m; ++i) phase1[n + i] = -1;
  if (!t.optimize(phase1)) throw std::logic_error("phase-1 unbounded");
  if (t.objective(phase1) != 0) return {LpStatus::Infeasible, {}, 0};

  // drive residual artificials out of the basis, dropping redundant rows
  for (int i = static_cast<int>(t.mat.size()) - 1; i >= 0; --i) {
    if (t.basis[i] < n) continue;
    int col = -1;
    for (int j = 0; j < n; ++j)
      if (t.mat[i][j] != 0) {
        col = j;
        break;
      }
    if (col >= 0) {
      t.pivot(i, col);
    } else {
      t.mat.erase(t.mat.begin() + i);
      t.basis.erase(t.basis.begin() + i);
    }
  }
  // remove artificial columns so they cannot re-enter the basis
  for (auto& row : t.mat) row.erase(row.begin() + n, row.begin() + t.ncols);
  t.ncols = n;

  VecQ phase2(t.ncols, Rational(0));
  for (int j = 0; j < n; ++j) phase2[j] = c[j];
  if (!t.optimize(phase2)) return {LpStatus::Unbounded, {}, 0};

  LpResult r;
  r.status = LpStatus::Optimal;
  r.x.assign(n, Rational(0));
  for (size_t i = 0; i < t.mat.size(); ++i)
    if (t.basis[i] < n) r.x[t.basis[i]] = t.mat[i][t.ncols];
  r.value = dot(r.x, c);
  return r;
}

// Nonnegative combination of generators equal to target, if one exists.
inline std::optional<VecQ> cone_combination(const MatQ& generators, const VecQ& target) {
  if (generators.empty()) return is_zero_vec(target) ? std::optional<VecQ>(VecQ{}) : std::nullopt;
  size_t d = target.size(), k = generators.size();
  MatQ a(d, VecQ(k, Rational(0)));
  for (size_t j = 0; j < k; ++j)
    for (size_t i = 0; i < d; ++i) a[i][j] = generators[j][i];
  VecQ c(k, Rational(0));
  auto r = simplex_max(a, target, c);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.x;
}

struct MaxScaleResult {
  bool feasible = false;   // base point itself lies in the cone
  bool bounded = true;
  Rational scale = 0;      // largest t with base - t*dir in the cone
  VecQ lambda;             // cone coefficients at the optimum
};

// max t  s.t.  base - t*dir in cone(generators), t >= 0.
inline MaxScaleResult max_scale_in_cone(const MatQ& generators, const VecQ& base,
                                        const VecQ& dir) {
  size_t d = base.size(), k = generators.size();
  MatQ a(d, VecQ(k + 1, Rational(0)));
  for (size_t j = 0; j < k; ++j)
    for (size_t i = 0; i < d; ++i) a[i][j] = generators[j][i];
  for (size_t i = 0; i < d; ++i) a[i][k] = dir[i];
  VecQ c(k + 1, Rational(0));
  c[k] = 1;
  auto r = simplex_max(a, base, c);
  MaxScaleResult out;
  if (r.status == LpStatus::Infeasible) return out;
  out.feasible = true;
  if (r.status == LpStatus::Unbounded) {
    out.bounded = false;
    return out;
  }
  out.scale = r.value;
  out.lambda.assign(r.x.begin(), r.x.begin() + k);
  return out;
}

}  // namespace poscurves
