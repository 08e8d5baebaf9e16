#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "poscurves/errors.hpp"
#include "poscurves/polytope.hpp"
#include "poscurves/toric.hpp"

namespace poscurves {

// Minkowski problem input: unit outward normals with target euclidean facet
// volumes. Balanced (sum r_i u_i = 0) and spanning when well-posed.
struct FacetData {
  std::vector<VecD> normals;
  std::vector<double> areas;
  std::vector<int> source_rays;  // originating ray index, -1 when synthetic
};

struct MinkowskiReport {
  bool converged = false;
  int iterations = 0;
  double residual = 0;
  std::vector<double> support;  // optimal support value per facet datum
  PolytopeD polytope;           // reconstruction, centroid at the origin
  std::vector<double> objective_trace;
};

// Facet data of a nonnegative Minkowski weight: direction v_i/|v_i| gets
// target volume t_i |v_i| / (n-1)!. Zero-weight rays are omitted.
inline FacetData weight_to_facet_data(const Fan& fan, const VecQ& weight) {
  int n = fan.dim, r = static_cast<int>(fan.rays.size());
  if (static_cast<int>(weight.size()) != r)
    throw PreconditionError("weight vector has wrong length");
  MatQ support_rays;
  for (int i = 0; i < r; ++i) {
    if (weight[i] < 0) throw PreconditionError("not a nonnegative Minkowski weight");
    if (weight[i] > 0) support_rays.push_back(fan.rays[i]);
  }
  if (rank(support_rays) < n)
    throw PreconditionError("weight support does not span: degenerate, volume is zero");
  FacetData data;
  double fac = to_double(factorial_q(n - 1));
  for (int i = 0; i < r; ++i) {
    if (weight[i] == 0) continue;
    double len = 0;
    for (const auto& x : fan.rays[i]) len += to_double(x) * to_double(x);
    len = std::sqrt(len);
    VecD u(n);
    for (int j = 0; j < n; ++j) u[j] = to_double(fan.rays[i][j]) / len;
    data.normals.push_back(std::move(u));
    data.areas.push_back(to_double(weight[i]) * len / fac);
    data.source_rays.push_back(i);
  }
  return data;
}

namespace detail {

inline PolytopeD body_of(const FacetData& data, const std::vector<double>& h) {
  std::vector<HalfSpace<double>> hs;
  hs.reserve(data.normals.size());
  for (size_t i = 0; i < data.normals.size(); ++i) hs.push_back({data.normals[i], h[i], false});
  int n = static_cast<int>(data.normals[0].size());
  return PolytopeD::from_halfspaces(std::move(hs), n, 1e-9, false);
}

inline std::vector<double> facet_areas(const PolytopeD& p, const FacetData& data) {
  std::vector<double> a(data.normals.size(), 0.0);
  if (!p.full_dimensional()) return a;
  for (size_t i = 0; i < data.normals.size(); ++i)
    a[i] = p.normalized_facet_volume(data.normals[i]);  // unit normal: euclidean
  return a;
}

// Levenberg-damped Gauss-Newton on the per-facet relative volume defects
// kappa A_i / r_i - 1. The gradient flow creeps near the flat bottom, while
// the defect system is smooth and tiny there, so a few damped least-squares
// steps close the last decades. Returns the residual reached.
inline double newton_polish(const FacetData& data, std::vector<double>& h,
                            double tol) {
  size_t m = h.size();
  int n = static_cast<int>(data.normals[0].size());
  auto defects = [&](const std::vector<double>& hh, VecD& f) {
    PolytopeD body = body_of(data, hh);
    double v = body.volume();
    if (!(v > 1e-14)) return false;
    auto areas = facet_areas(body, data);
    double rh = 0;
    for (size_t i = 0; i < m; ++i) rh += data.areas[i] * hh[i];
    double kap = rh / (n * v);
    f.resize(m);
    for (size_t i = 0; i < m; ++i) f[i] = kap * areas[i] / data.areas[i] - 1.0;
    return true;
  };
  auto worst = [](const VecD& f) {
    double r = 0;
    for (double e : f) r = std::max(r, std::fabs(e));
    return r;
  };
  VecD f;
  if (!defects(h, f)) return std::numeric_limits<double>::infinity();
  double resid = worst(f);
  double lambda = 1e-6;
  for (int round = 0; round < 40 && resid >= tol; ++round) {
    Mat<double> jt(m, VecD(m, 0.0));  // rows are columns of the Jacobian
    VecD fj;
    bool ok = true;
    for (size_t j = 0; j < m && ok; ++j) {
      double step = 1e-7 * std::max(1.0, std::fabs(h[j]));
      auto hp = h;
      hp[j] += step;
      ok = defects(hp, fj);
      for (size_t i = 0; ok && i < m; ++i) jt[j][i] = (fj[i] - f[i]) / step;
    }
    if (!ok) break;
    Mat<double> a(m, VecD(m, 0.0));
    VecD b(m, 0.0);
    for (size_t p = 0; p < m; ++p) {
      for (size_t q = 0; q <= p; ++q) {
        double s = 0;
        for (size_t i = 0; i < m; ++i) s += jt[p][i] * jt[q][i];
        a[p][q] = a[q][p] = s;
      }
      for (size_t i = 0; i < m; ++i) b[p] -= jt[p][i] * f[i];
    }
    bool improved = false;
    for (int attempt = 0; attempt < 12 && !improved; ++attempt) {
      Mat<double> damped(a);
      for (size_t p = 0; p < m; ++p)
        damped[p][p] += lambda * std::max(a[p][p], 1e-12);
      auto delta = solve_square(damped, b);
      if (delta) {
        auto trial = h;
        for (size_t p = 0; p < m; ++p) trial[p] += (*delta)[p];
        VecD ft;
        if (defects(trial, ft)) {
          double rt = worst(ft);
          if (rt < resid) {
            h = std::move(trial);
            f = std::move(ft);
            resid = rt;
            lambda = std::max(lambda * 0.25, 1e-12);
            improved = true;
          }
        }
      }
      if (!improved) lambda *= 8;
    }
    if (!improved) break;
  }
  return resid;
}

}  // namespace detail

// Reconstructs the polytope with the prescribed facet volumes by minimizing
// <r,h> over support vectors of unit volume; the scale-invariant objective
// phi(h) = <r,h>/vol(h)^{1/n} is driven down by a projected gradient with
// Barzilai-Borwein steps and Armijo backtracking. Deterministic.
inline MinkowskiReport solve_minkowski(const FacetData& data, double tol = 1e-8,
                                       int iteration_cap = 10000) {
  size_t m = data.normals.size();
  if (m == 0) throw PreconditionError("no facet data");
  int n = static_cast<int>(data.normals[0].size());
  if (static_cast<int>(m) < n + 1) throw PreconditionError("too few facet normals");
  double total = 0;
  VecD balance(n, 0.0);
  for (size_t i = 0; i < m; ++i) {
    if (data.areas[i] <= 0) throw PreconditionError("facet volumes must be positive");
    total += data.areas[i];
    for (int j = 0; j < n; ++j) balance[j] += data.areas[i] * data.normals[i][j];
  }
  double bnorm = norm2(balance);
  if (bnorm > 1e-8 * total) throw PreconditionError("facet data is not balanced");
  {
    Mat<double> nm(data.normals.begin(), data.normals.end());
    if (rank(nm, 1e-9) < n) throw PreconditionError("facet normals do not span");
  }

  MinkowskiReport rep;
  std::vector<double> h(m, 1.0);
  auto vol_of = [&](const std::vector<double>& hh) {
    return detail::body_of(data, hh).volume();
  };
  auto renorm = [&](std::vector<double>& hh, double vol) {
    double s = std::pow(vol, -1.0 / n);
    for (auto& x : hh) x *= s;
  };
  double vol = vol_of(h);
  if (vol <= 0) throw PreconditionError("initial body is degenerate");
  renorm(h, vol);

  auto dotv = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };

  std::vector<double> prev_h, prev_g;
  std::vector<double> best_h = h;
  double best_resid = std::numeric_limits<double>::infinity();
  double kappa = 0;
  int it = 0;
  for (; it < iteration_cap; ++it) {
    PolytopeD body = detail::body_of(data, h);
    double v = body.volume();
    auto areas = detail::facet_areas(body, data);
    double rh = dotv(data.areas, h);
    kappa = rh / (n * v);
    // the final rescale multiplies facet volumes by kappa, so kappa*A_i is
    // what gets compared against the target r_i
    double resid = 0;
    for (size_t i = 0; i < m; ++i)
      resid = std::max(resid, std::fabs(kappa * areas[i] / data.areas[i] - 1.0));
    rep.objective_trace.push_back(rh / std::pow(v, 1.0 / n));
    rep.residual = resid;
    if (resid < best_resid) {
      best_resid = resid;
      best_h = h;
    }
    if (resid < tol) {
      rep.converged = true;
      break;
    }

    std::vector<double> g(m);
    for (size_t i = 0; i < m; ++i) g[i] = data.areas[i] - kappa * areas[i];
    double gnorm2 = dotv(g, g);
    if (gnorm2 == 0) break;

    double step;
    if (!prev_h.empty()) {
      std::vector<double> dh(m), dg(m);
      for (size_t i = 0; i < m; ++i) {
        dh[i] = h[i] - prev_h[i];
        dg[i] = g[i] - prev_g[i];
      }
      double denom = dotv(dh, dg);
      step = denom > 0 ? dotv(dh, dh) / denom : 1.0 / std::sqrt(gnorm2);
    } else {
      step = 0.1 / std::sqrt(gnorm2);
    }
    prev_h = h;
    prev_g = g;

    double phi0 = rep.objective_trace.back();
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      std::vector<double> trial(m);
      for (size_t i = 0; i < m; ++i) trial[i] = h[i] - step * g[i];
      PolytopeD tbody = detail::body_of(data, trial);
      double tv = tbody.volume();
      if (tv > 1e-14) {
        double trh = dotv(data.areas, trial);
        double phi = trh / std::pow(tv, 1.0 / n);
        bool sufficient = phi < phi0 - 1e-4 * step * gnorm2;
        bool plateau = false;
        if (!sufficient && phi <= phi0 * (1 + 1e-12)) {
          // near the flat bottom phi differences drop below double
          // resolution while the residual is still well above it, so
          // accept steps that keep shrinking the residual itself
          auto tareas = detail::facet_areas(tbody, data);
          double tkappa = trh / (n * tv);
          double tresid = 0;
          for (size_t i = 0; i < m; ++i)
            tresid = std::max(tresid, std::fabs(tkappa * tareas[i] / data.areas[i] - 1.0));
          plateau = tresid < 0.95 * resid;
        }
        if (sufficient || plateau) {
          renorm(trial, tv);
          h = std::move(trial);
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) break;  // stalled; residual already recorded
  }
  rep.iterations = it;

  if (!rep.converged) {
    if (best_resid < rep.residual) {
      h = best_h;
      rep.residual = best_resid;
    }
    double polished = detail::newton_polish(data, h, tol);
    if (polished < rep.residual) rep.residual = polished;
    rep.converged = rep.residual < tol;
  }
  // kappa of the current h; the rescale below is scale invariant, so the
  // polished iterate needs no renormalization
  kappa = dotv(data.areas, h) / (n * detail::body_of(data, h).volume());

  double mu = std::pow(kappa, 1.0 / (n - 1));
  for (auto& x : h) x *= mu;
  rep.support = h;
  PolytopeD body = detail::body_of(data, h);
  auto c = body.centroid();
  VecD shift(n);
  for (int j = 0; j < n; ++j) shift[j] = -c[j];
  rep.polytope = body.translated(shift);
  for (size_t i = 0; i < m; ++i) rep.support[i] = rep.polytope.support(data.normals[i]);
  auto areas = detail::facet_areas(rep.polytope, data);
  double resid = 0;
  for (size_t i = 0; i < m; ++i)
    resid = std::max(resid, std::fabs(areas[i] / data.areas[i] - 1.0));
  rep.residual = resid;
  return rep;
}

}  // namespace poscurves
