#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "poscurves/cone.hpp"
#include "poscurves/errors.hpp"
#include "poscurves/transforms.hpp"

namespace poscurves {

// Weight-s concave function on a closed convex cone: f >= 0, homogeneous of
// degree s, and f^{1/s} concave. The gradient is optional; forward finite
// differences are used when it is absent.
struct ConcaveConeFunction {
  ConeDesc cone;
  double weight = 2;  // s > 1
  std::function<double(const VecD&)> eval;
  std::function<VecD(const VecD&)> supergradient;
};

struct PolarResult {
  double value = 0;        // Hf(w)
  double lower_bound = 0;  // linearization certificate at the argmin
  VecD argmin;             // minimizer on the f = 1 slice, empty when value is 0
  bool feasible = false;   // w in the dual cone
  bool boundary = false;   // w orthogonal to some generator of the cone
  bool converged = false;  // bracket width within tol * value
};

namespace detail {

inline VecD fd_gradient(const ConcaveConeFunction& f, const VecD& v, double fv) {
  if (f.supergradient) return f.supergradient(v);
  double nv = norm2(v);
  double step = 1e-6 * std::max(nv, 1e-6);
  VecD g(v.size());
  VecD probe = v;
  for (size_t j = 0; j < v.size(); ++j) {
    probe[j] = v[j] + step;
    g[j] = (f.eval(probe) - fv) / step;
    probe[j] = v[j];
  }
  return g;
}

struct PolarPoint {
  double psi = std::numeric_limits<double>::infinity();
  VecD lambda;
  VecD v;
  double fval = 0;
};

// minimize psi(lambda) = <w, v> / f(v)^{1/s} over the generator simplex
inline PolarPoint polar_optimize(const ConcaveConeFunction& f, const VecD& w,
                                 int restarts, std::uint64_t seed) {
  const MatQ& gens = f.cone.generators;
  size_t m = gens.size();
  if (m == 0) throw std::logic_error("cone has no generators");
  size_t d = gens[0].size();
  std::vector<VecD> gd(m);
  VecD wg(m);
  for (size_t i = 0; i < m; ++i) {
    gd[i] = to_doubles(gens[i]);
    wg[i] = 0;
    for (size_t j = 0; j < d; ++j) wg[i] += w[j] * gd[i][j];
  }
  double s = f.weight;

  auto point_of = [&](const VecD& lam) {
    VecD v(d, 0.0);
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < d; ++j) v[j] += lam[i] * gd[i][j];
    return v;
  };
  auto eval = [&](const VecD& lam, VecD* grad) -> double {
    VecD v = point_of(lam);
    double fv = f.eval(v);
    if (grad) grad->assign(m, 0.0);
    if (!(fv > 1e-300)) return std::numeric_limits<double>::infinity();
    double fs = std::pow(fv, 1.0 / s);
    double num = 0;
    for (size_t i = 0; i < m; ++i) num += wg[i] * lam[i];
    double psi = num / fs;
    if (grad) {
      VecD df = fd_gradient(f, v, fv);
      for (size_t i = 0; i < m; ++i) {
        double dfg = 0;
        for (size_t j = 0; j < d; ++j) dfg += df[j] * gd[i][j];
        (*grad)[i] = wg[i] / fs - psi * dfg / (s * fv);
      }
    }
    return psi;
  };

  std::vector<VecD> starts;
  VecD bary(m, 1.0 / static_cast<double>(m));
  starts.push_back(bary);
  if (m > 1)
    for (size_t i = 0; i < m; ++i) {
      VecD sk = bary;
      for (auto& x : sk) x *= 0.25;
      sk[i] += 0.75;
      starts.push_back(std::move(sk));
    }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int t = 0; t < restarts; ++t) {
    VecD sk(m);
    double tot = 0;
    for (auto& x : sk) {
      x = -std::log(std::max(uni(rng), 1e-12));
      tot += x;
    }
    for (auto& x : sk) x /= tot;
    starts.push_back(std::move(sk));
  }

  PolarPoint best;
  for (auto lam : starts) {
    // pull starts with nonpositive f toward the barycenter
    double fl = f.eval(point_of(lam));
    for (int k = 0; k < 20 && !(fl > 0); ++k) {
      for (size_t i = 0; i < m; ++i) lam[i] = 0.5 * (lam[i] + bary[i]);
      fl = f.eval(point_of(lam));
    }
    if (!(fl > 0)) continue;

    VecD g;
    double psi = eval(lam, &g);
    if (!std::isfinite(psi)) continue;
    VecD prev_l, prev_g;
    for (int it = 0; it < 400; ++it) {
      double gn = 0;
      for (double x : g) gn += x * x;
      if (gn == 0) break;
      double step;
      if (!prev_l.empty()) {
        double num = 0, den = 0;
        for (size_t i = 0; i < m; ++i) {
          double dl = lam[i] - prev_l[i], dg = g[i] - prev_g[i];
          num += dl * dl;
          den += dl * dg;
        }
        step = den > 0 ? num / den : 1.0 / std::sqrt(gn);
      } else {
        step = 0.1 / std::sqrt(gn);
      }
      bool accepted = false;
      VecD trial, tg;
      double tp = 0;
      for (int bt = 0; bt < 50; ++bt) {
        trial.resize(m);
        for (size_t i = 0; i < m; ++i) trial[i] = lam[i] - step * g[i];
        trial = detail::project_simplex(std::move(trial));
        double dec = 0;
        for (size_t i = 0; i < m; ++i) dec += g[i] * (lam[i] - trial[i]);
        tp = eval(trial, &tg);
        if (std::isfinite(tp) && dec >= 0 && tp < psi - 1e-4 * dec) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
      double move = 0;
      for (size_t i = 0; i < m; ++i) move = std::max(move, std::fabs(trial[i] - lam[i]));
      prev_l = std::move(lam);
      prev_g = std::move(g);
      lam = std::move(trial);
      g = std::move(tg);
      psi = tp;
      if (move < 1e-13) break;
    }
    if (psi < best.psi) {
      best.psi = psi;
      best.lambda = lam;
      best.v = point_of(lam);
      best.fval = f.eval(best.v);
    }
  }
  if (!std::isfinite(best.psi))
    throw PreconditionError("f not positive in interior");
  return best;
}

// certified lower bound for psi from the tangent of f^{1/s} at vhat
inline double polar_lower_bound(const ConcaveConeFunction& f, const VecD& w,
                                const PolarPoint& at) {
  const MatQ& gens = f.cone.generators;
  size_t d = at.v.size();
  double s = f.weight;
  VecD df = fd_gradient(f, at.v, at.fval);
  double scale = std::pow(at.fval, 1.0 / s - 1.0) / s;
  double lb = std::numeric_limits<double>::infinity();
  for (const auto& gq : gens) {
    VecD g = to_doubles(gq);
    double qg = 0, wgv = 0;
    for (size_t j = 0; j < d; ++j) {
      qg += scale * df[j] * g[j];
      wgv += w[j] * g[j];
    }
    if (qg <= 1e-14) continue;  // f vanishes toward this ray: no constraint
    lb = std::min(lb, wgv / qg);
  }
  if (!std::isfinite(lb)) return 0;
  return std::max(lb, 0.0);
}

}  // namespace detail

inline PolarResult polar_full(const ConcaveConeFunction& f, const VecQ& w,
                              double tol = 1e-6, int restarts = 16,
                              std::uint64_t seed = 0x2545f4914f6cdd1dULL) {
  PolarResult out;
  VecD face_sum;
  for (const auto& g : f.cone.generators) {
    Rational p = dot(w, g);
    if (p < 0) return out;  // outside the dual cone
    if (p == 0 && !is_zero_vec(g)) {
      VecD gd = to_doubles(g);
      if (face_sum.empty()) face_sum.assign(gd.size(), 0.0);
      for (size_t j = 0; j < gd.size(); ++j) face_sum[j] += gd[j];
    }
  }
  out.feasible = true;
  out.boundary = !face_sum.empty();
  // f positive somewhere on the orthogonal face forces the infimum to zero;
  // for concave f positivity anywhere on the face shows at its barycenter
  if (out.boundary && f.eval(face_sum) > 1e-12) {
    out.converged = true;
    return out;
  }
  auto best = detail::polar_optimize(f, to_doubles(w), restarts, seed);
  double s = f.weight;
  double expo = s / (s - 1.0);
  out.value = std::pow(best.psi, expo);
  out.lower_bound = std::pow(detail::polar_lower_bound(f, to_doubles(w), best), expo);
  out.converged = out.value - out.lower_bound <= tol * std::max(out.value, 1e-12);
  double fs = std::pow(best.fval, 1.0 / s);
  out.argmin.resize(best.v.size());
  for (size_t j = 0; j < best.v.size(); ++j) out.argmin[j] = best.v[j] / fs;
  return out;
}

inline double polar_value(const ConcaveConeFunction& f, const VecQ& w,
                          double tol = 1e-6) {
  return polar_full(f, w, tol).value;
}

inline VecD polar_argmin(const ConcaveConeFunction& f, const VecQ& w,
                         double tol = 1e-6) {
  auto r = polar_full(f, w, tol);
  if (!r.feasible || !(r.value > 0) || (r.boundary && r.value < 1e-9))
    throw PreconditionError("polar transform vanishes at this dual vector");
  if (!r.converged) throw NonConvergenceError("polar bracket did not close");
  return r.argmin;
}

struct FormalZariski {
  VecD positive;  // p on the ray of the supergradient at the argmin
  VecD negative;  // w - p
  double value = 0;
  double value_residual = 0;   // |Hf(p) - Hf(w)| / Hf(w)
  bool negative_in_dual = false;
};

// Zariski decomposition with respect to f: w = p + n with p proportional to
// the derivative direction at the argmin and Hf(p) = Hf(w).
inline FormalZariski formal_zariski(const ConcaveConeFunction& f, const VecQ& w,
                                    double tol = 1e-6) {
  auto r = polar_full(f, w, tol);
  if (!r.feasible || !(r.value > 0) || (r.boundary && r.value < 1e-9))
    throw PreconditionError("polar transform vanishes at this dual vector");
  double s = f.weight;
  double fv = f.eval(r.argmin);
  VecD dfv = detail::fd_gradient(f, r.argmin, fv);
  auto dbest = detail::polar_optimize(f, dfv, 16, 0x2545f4914f6cdd1dULL);
  double hf_d = std::pow(dbest.psi, s / (s - 1.0));
  if (!(hf_d > 0)) throw NonConvergenceError("derivative direction degenerate");
  double c = std::pow(r.value / hf_d, (s - 1.0) / s);

  FormalZariski out;
  out.value = r.value;
  out.positive.resize(dfv.size());
  out.negative.resize(dfv.size());
  VecD wd = to_doubles(w);
  for (size_t j = 0; j < dfv.size(); ++j) {
    out.positive[j] = c * dfv[j];
    out.negative[j] = wd[j] - out.positive[j];
  }
  auto pbest = detail::polar_optimize(f, out.positive, 16, 0x2545f4914f6cdd1dULL);
  double hf_p = std::pow(pbest.psi, s / (s - 1.0));
  out.value_residual = std::fabs(hf_p - r.value) / std::max(r.value, 1e-12);

  // dual-cone membership of the negative part, up to tolerance
  double wscale = norm2(wd);
  out.negative_in_dual = true;
  for (const auto& gq : f.cone.generators) {
    VecD g = to_doubles(gq);
    double p = 0;
    for (size_t j = 0; j < g.size(); ++j) p += out.negative[j] * g[j];
    double gs = norm2(g);
    if (p < -tol * 100 * std::max(1.0, wscale * gs)) out.negative_in_dual = false;
  }
  return out;
}

// The class volume, n!-normalized, as a concave cone function over a cone of
// divisor classes; weight n, gradient by finite differences.
inline ConcaveConeFunction volume_cone_function(const ToricVariety& x,
                                                const ConeDesc& cone) {
  std::vector<VecD> rays;
  rays.reserve(x.r);
  for (const auto& ray : x.fan.rays) rays.push_back(to_doubles(ray));
  std::vector<VecD> reps;
  reps.reserve(x.d);
  for (int j = 0; j < x.d; ++j) {
    VecQ e(x.d, Rational(0));
    e[j] = 1;
    reps.push_back(to_doubles(divisor_rep(x, e)));
  }
  double fact = 1;
  for (int k = 2; k <= x.n; ++k) fact *= k;
  int n = x.n;
  ConcaveConeFunction f;
  f.cone = cone;
  f.weight = n;
  f.eval = [rays, reps, fact, n](const VecD& y) {
    size_t r = rays.size();
    VecD a(r, 0.0);
    for (size_t j = 0; j < reps.size(); ++j)
      for (size_t k = 0; k < r; ++k) a[k] += y[j] * reps[j][k];
    std::vector<HalfSpace<double>> hs;
    hs.reserve(r);
    for (size_t k = 0; k < r; ++k) hs.push_back({rays[k], a[k], false});
    PolytopeD body = PolytopeD::from_halfspaces(std::move(hs), n, 1e-9, false);
    return fact * body.volume();
  };
  return f;
}

// samples homogeneity and s-concavity of a candidate function
inline bool validate_concave_cone_function(const ConcaveConeFunction& f,
                                           int samples = 40,
                                           std::uint64_t seed = 17) {
  const MatQ& gens = f.cone.generators;
  if (gens.empty()) return false;
  size_t m = gens.size(), d = gens[0].size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  auto sample = [&]() {
    VecD v(d, 0.0);
    for (size_t i = 0; i < m; ++i) {
      double c = uni(rng);
      for (size_t j = 0; j < d; ++j) v[j] += c * to_double(gens[i][j]);
    }
    return v;
  };
  double s = f.weight;
  for (int t = 0; t < samples; ++t) {
    VecD v = sample(), x = sample();
    double fv = f.eval(v), fx = f.eval(x);
    if (fv < 0 || fx < 0) return false;
    double lam = 0.5 + uni(rng);
    VecD vs(d);
    for (size_t j = 0; j < d; ++j) vs[j] = lam * v[j];
    double fh = f.eval(vs);
    double want = std::pow(lam, s) * fv;
    if (std::fabs(fh - want) > 1e-6 * std::max({1.0, fh, want})) return false;
    VecD sum(d);
    for (size_t j = 0; j < d; ++j) sum[j] = v[j] + x[j];
    double lhs = std::pow(fv, 1.0 / s) + std::pow(fx, 1.0 / s);
    double rhs = std::pow(f.eval(sum), 1.0 / s);
    if (lhs > rhs + 1e-6 * std::max(1.0, rhs)) return false;
  }
  return true;
}

}  // namespace poscurves
