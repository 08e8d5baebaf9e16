#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "poscurves/rational.hpp"

namespace poscurves {

template <class T>
using Vec = std::vector<T>;
template <class T>
using Mat = std::vector<std::vector<T>>;

using VecQ = Vec<Rational>;
using MatQ = Mat<Rational>;
using VecD = Vec<double>;

inline Rational abs_val(const Rational& x) { return x < 0 ? Rational(-x) : x; }
inline double abs_val(double x) { return std::fabs(x); }

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  T s{};
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
Vec<T> vadd(const Vec<T>& a, const Vec<T>& b) {
  Vec<T> r(a);
  for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

template <class T>
Vec<T> vsub(const Vec<T>& a, const Vec<T>& b) {
  Vec<T> r(a);
  for (size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

template <class T>
Vec<T> vscale(const T& c, const Vec<T>& a) {
  Vec<T> r(a);
  for (auto& x : r) x *= c;
  return r;
}

template <class T>
bool is_zero_vec(const Vec<T>& a, const T& eps = T{}) {
  for (const auto& x : a)
    if (abs_val(x) > eps) return false;
  return true;
}

template <class T>
Vec<T> mat_vec(const Mat<T>& m, const Vec<T>& x) {
  Vec<T> r(m.size(), T{});
  for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
  return r;
}

template <class T>
Mat<T> transpose(const Mat<T>& m) {
  if (m.empty()) return {};
  Mat<T> r(m[0].size(), Vec<T>(m.size(), T{}));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) r[j][i] = m[i][j];
  return r;
}

template <class T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat<T> r(n, Vec<T>(m, T{}));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == T{}) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

template <class T>
struct Echelon {
  Mat<T> mat;               // reduced row echelon form
  std::vector<int> pivots;  // pivot column per nonzero row
  int rank = 0;
};

// Gauss-Jordan with max-|pivot| selection; eps = 0 gives exact behavior.
template <class T>
Echelon<T> rref(Mat<T> a, const T& eps = T{}) {
  Echelon<T> e;
  if (a.empty()) return e;
  size_t rows = a.size(), cols = a[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t best = row;
    for (size_t i = row + 1; i < rows; ++i)
      if (abs_val(a[i][col]) > abs_val(a[best][col])) best = i;
    if (abs_val(a[best][col]) <= eps) continue;
    std::swap(a[row], a[best]);
    T p = a[row][col];
    for (size_t j = col; j < cols; ++j) a[row][j] /= p;
    for (size_t i = 0; i < rows; ++i) {
      if (i == row) continue;
      T f = a[i][col];
      if (abs_val(f) <= eps) continue;
      for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
    }
    e.pivots.push_back(static_cast<int>(col));
    ++row;
  }
  e.rank = static_cast<int>(row);
  e.mat = std::move(a);
  return e;
}

template <class T>
int rank(const Mat<T>& a, const T& eps = T{}) {
  return rref(a, eps).rank;
}

template <class T>
T det(Mat<T> a, const T& eps = T{}) {
  size_t n = a.size();
  T d{1};
  for (size_t col = 0; col < n; ++col) {
    size_t best = col;
    for (size_t i = col + 1; i < n; ++i)
      if (abs_val(a[i][col]) > abs_val(a[best][col])) best = i;
    if (abs_val(a[best][col]) <= eps) return T{};
    if (best != col) {
      std::swap(a[col], a[best]);
      d = -d;
    }
    d *= a[col][col];
    for (size_t i = col + 1; i < n; ++i) {
      T f = a[i][col] / a[col][col];
      if (f == T{}) continue;
      for (size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  return d;
}

// Solves square Ax=b; nullopt when A is singular at the given tolerance.
template <class T>
std::optional<Vec<T>> solve_square(Mat<T> a, Vec<T> b, const T& eps = T{}) {
  size_t n = a.size();
  for (size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto e = rref(a, eps);
  if (e.rank != static_cast<int>(n)) return std::nullopt;
  for (int p : e.pivots)
    if (p == static_cast<int>(n)) return std::nullopt;
  Vec<T> x(n, T{});
  for (size_t i = 0; i < n; ++i) x[e.pivots[i]] = e.mat[i][n];
  return x;
}

// One solution of a (possibly rectangular) consistent system Ax=b.
template <class T>
std::optional<Vec<T>> solve_any(const Mat<T>& a, const Vec<T>& b, const T& eps = T{}) {
  if (a.empty()) return Vec<T>{};
  size_t rows = a.size(), cols = a[0].size();
  Mat<T> aug(a);
  for (size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
  auto e = rref(aug, eps);
  for (size_t i = 0; i < static_cast<size_t>(e.rank); ++i)
    if (e.pivots[i] == static_cast<int>(cols)) return std::nullopt;
  Vec<T> x(cols, T{});
  for (size_t i = 0; i < static_cast<size_t>(e.rank); ++i) x[e.pivots[i]] = e.mat[i][cols];
  return x;
}

// Basis of {x : Ax = 0}, one row per free column.
template <class T>
Mat<T> kernel_basis(const Mat<T>& a, const T& eps = T{}) {
  if (a.empty()) return {};
  size_t cols = a[0].size();
  auto e = rref(a, eps);
  std::vector<bool> is_pivot(cols, false);
  for (int p : e.pivots) is_pivot[p] = true;
  Mat<T> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec<T> v(cols, T{});
    v[free] = T{1};
    for (size_t i = 0; i < static_cast<size_t>(e.rank); ++i)
      v[e.pivots[i]] = -e.mat[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
std::optional<Mat<T>> inverse(const Mat<T>& a, const T& eps = T{}) {
  size_t n = a.size();
  Mat<T> aug(a);
  for (size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, T{});
    aug[i][n + i] = T{1};
  }
  auto e = rref(aug, eps);
  if (e.rank != static_cast<int>(n)) return std::nullopt;
  for (size_t i = 0; i < n; ++i)
    if (e.pivots[i] != static_cast<int>(i)) return std::nullopt;
  Mat<T> inv(n, Vec<T>(n, T{}));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = e.mat[i][n + j];
  return inv;
}

inline VecD to_doubles(const VecQ& v) {
  VecD r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = to_double(v[i]);
  return r;
}

inline VecQ to_rationals_exact(const VecD& v) {
  VecQ r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = rational_exact(v[i]);
  return r;
}

inline double norm2(const VecD& v) { return std::sqrt(dot(v, v)); }

}  // namespace poscurves
