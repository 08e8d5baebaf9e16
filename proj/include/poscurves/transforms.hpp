#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "poscurves/cone.hpp"
#include "poscurves/errors.hpp"
#include "poscurves/lp.hpp"
#include "poscurves/minkowski.hpp"
#include "poscurves/toric.hpp"

namespace poscurves {

inline VecQ snap_vector(const VecD& v, std::uint64_t max_den = 1000000) {
  VecQ out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = snap_rational(v[i], max_den);
  return out;
}

// Canonical rational coefficient vector representing a divisor class.
inline VecQ divisor_rep(const ToricVariety& x, const VecQ& cls) {
  auto a = solve_any(x.kernel, cls);
  if (!a) throw std::logic_error("class coordinates outside the divisor lattice");
  return *a;
}

// ----------------------------------------------------------------- mcal

struct McalResult {
  double value = 0;
  std::optional<Rational> exact_value;  // present when the witness round-trips
  bool movable = false;
  bool degenerate = false;  // movable but the positive support does not span
  std::optional<VecQ> witness_divisor;  // length-r coefficients
  std::optional<VecQ> witness_class;    // length-d coordinates
  bool witness_exact = false;
  std::optional<VecQ> degeneracy;  // movable divisor class M with M.alpha = 0
  std::optional<MinkowskiReport> solver;
};

// Volume of a movable curve class: reconstruct the polytope with facet data
// given by the weight, report n! times its volume, and recover the divisor
// witness from the support numbers. Non-movable classes get 0 by convention.
inline McalResult mcal(const ToricVariety& x, const VecQ& alpha) {
  McalResult out;
  VecQ t = x.relation_of(alpha);
  for (const auto& ti : t)
    if (ti < 0) return out;
  out.movable = true;

  MatQ spanning;
  for (int i = 0; i < x.r; ++i)
    if (t[i] > 0) spanning.push_back(x.fan.rays[i]);
  if (rank(spanning) < x.n) {
    out.degenerate = true;
    for (const auto& g : x.mov_divisors.generators)
      if (!is_zero_vec(g) && dot(g, alpha) == 0) {
        out.degeneracy = g;
        break;
      }
    if (!out.degeneracy)
      throw TheoremViolationError(
          "degenerate movable class admits no orthogonal movable divisor");
    return out;
  }

  auto rep = solve_minkowski(weight_to_facet_data(x.fan, t));
  if (!rep.converged)
    throw NonConvergenceError("facet-volume reconstruction did not converge");
  out.value = to_double(factorial_q(x.n)) * rep.polytope.volume();

  // class coordinates of the support divisor, snapped and verified exactly
  VecD y_dbl(x.d, 0.0);
  for (int j = 0; j < x.d; ++j) {
    VecD kj = to_doubles(x.kernel[j]);
    for (int i = 0; i < x.r; ++i)
      y_dbl[j] += kj[i] * rep.polytope.support(to_doubles(x.fan.rays[i]));
  }
  VecQ y = snap_vector(y_dbl);
  VecQ a = divisor_rep(x, y);
  try {
    if (x.positive_product_top(a) == alpha &&
        cone_membership(x.mov_divisors, y).location != ConeLocation::Outside) {
      out.exact_value = x.volume_divisor(a);
      out.value = to_double(*out.exact_value);
      out.witness_exact = true;
    }
  } catch (const PreconditionError&) {
    // snapped class not big: keep the floating result
  }
  out.witness_divisor = std::move(a);
  out.witness_class = std::move(y);
  out.solver = std::move(rep);
  return out;
}

// ----------------------------------------------------------------- volhat

struct VolhatCandidate {
  VecQ lambda;         // snapped weights over the nef generators
  VecQ rep;            // exact divisor coefficients of the direction
  VecQ cls;            // class coordinates
  Rational volume;     // vol of the direction
  Rational pairing;    // direction . alpha
  VecQ product_class;  // <direction^{n-1}> coordinates
  Rational sigma;      // largest s with alpha - s*<direction^{n-1}> psef
  Rational orth;       // |direction . (alpha - sigma*product)|
  double inf_value;    // Def-form value at this direction
  double sup_value;    // sup-form value along this direction
};

struct VolhatResult {
  double value = 0;
  bool feasible = false;  // alpha pseudo-effective
  bool boundary = false;  // on the boundary, where the value is 0
  double inf_value = 0;
  double sup_value = 0;
  std::vector<VolhatCandidate> candidates;  // sorted by inf_value
};

namespace detail {

inline VecD project_simplex(VecD y) {
  VecD u = y;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0, theta = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    double th = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - th > 0) theta = th;
  }
  for (auto& v : y) v = std::max(0.0, v - theta);
  return y;
}

struct NefObjective {
  const std::vector<VecD>& reps_d;  // divisor coefficients per generator
  const std::vector<VecD>& rays_d;
  const VecD& pair_coeff;  // generator . alpha
  int n;

  double eval(const VecD& lam, VecD* grad) const {
    size_t m = reps_d.size(), r = rays_d.size();
    VecD a(r, 0.0);
    for (size_t i = 0; i < m; ++i)
      for (size_t k = 0; k < r; ++k) a[k] += lam[i] * reps_d[i][k];
    std::vector<HalfSpace<double>> hs;
    hs.reserve(r);
    for (size_t k = 0; k < r; ++k) hs.push_back({rays_d[k], a[k], false});
    PolytopeD q = PolytopeD::from_halfspaces(std::move(hs), n, 1e-9, false);
    double vol = q.volume();
    if (grad) grad->assign(m, 0.0);
    if (vol <= 1e-13) return std::numeric_limits<double>::infinity();
    double p = 0;
    for (size_t i = 0; i < m; ++i) p += pair_coeff[i] * lam[i];
    double vn = std::pow(vol, 1.0 / n);
    if (grad) {
      VecD nf(r);
      for (size_t k = 0; k < r; ++k) nf[k] = q.normalized_facet_volume(rays_d[k]);
      for (size_t i = 0; i < m; ++i) {
        double dv = 0;
        for (size_t k = 0; k < r; ++k) dv += reps_d[i][k] * nf[k];
        (*grad)[i] = (pair_coeff[i] - p / (n * vol) * dv) / vn;
      }
    }
    return p / vn;
  }
};

inline VecD nef_descent(const NefObjective& obj, VecD lam, int cap = 300) {
  VecD g;
  double f = obj.eval(lam, &g);
  if (!std::isfinite(f)) return lam;
  VecD prev_l, prev_g;
  for (int it = 0; it < cap; ++it) {
    double step;
    double gn = 0;
    for (double v : g) gn += v * v;
    if (gn == 0) break;
    if (!prev_l.empty()) {
      double num = 0, den = 0;
      for (size_t i = 0; i < lam.size(); ++i) {
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
    double tf = 0;
    for (int bt = 0; bt < 60; ++bt) {
      trial.resize(lam.size());
      for (size_t i = 0; i < lam.size(); ++i) trial[i] = lam[i] - step * g[i];
      trial = project_simplex(std::move(trial));
      double decrease = 0;
      for (size_t i = 0; i < lam.size(); ++i) decrease += g[i] * (lam[i] - trial[i]);
      tf = obj.eval(trial, &tg);
      if (std::isfinite(tf) && decrease >= 0 && tf < f - 1e-4 * decrease) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    double move = 0;
    for (size_t i = 0; i < lam.size(); ++i)
      move = std::max(move, std::fabs(trial[i] - lam[i]));
    prev_l = std::move(lam);
    prev_g = std::move(g);
    lam = std::move(trial);
    g = std::move(tg);
    f = tf;
    if (move < 1e-12) break;
  }
  return lam;
}

}  // namespace detail

// The curve-class volume in its infimum form, minimized over the vol >= 1
// slice of the nef cone, together with the supremum form along each located
// direction. The two values sandwich the true one, so their agreement
// certifies convergence.
inline VolhatResult volhat_full(const ToricVariety& x, const VecQ& alpha,
                                int extra_starts = 0, std::uint64_t start_seed = 0) {
  x.require_projective();
  VolhatResult out;
  auto loc = cone_membership(x.eff_curves, alpha).location;
  if (loc == ConeLocation::Outside) return out;
  out.feasible = true;
  if (loc == ConeLocation::Boundary) {
    out.boundary = true;
    return out;
  }

  const MatQ& gens = x.nef_divisors.generators;
  size_t m = gens.size();
  std::vector<VecQ> reps(m);
  std::vector<VecD> reps_d(m);
  VecD pc(m);
  for (size_t i = 0; i < m; ++i) {
    reps[i] = divisor_rep(x, gens[i]);
    reps_d[i] = to_doubles(reps[i]);
    pc[i] = to_double(dot(gens[i], alpha));
  }
  std::vector<VecD> rays_d(x.r);
  for (int k = 0; k < x.r; ++k) rays_d[k] = to_doubles(x.fan.rays[k]);
  detail::NefObjective obj{reps_d, rays_d, pc, x.n};

  std::vector<VecD> starts;
  VecD bary(m, 1.0 / static_cast<double>(m));
  starts.push_back(bary);
  if (m > 1)
    for (size_t i = 0; i < m; ++i) {
      VecD s = bary;
      for (auto& v : s) v *= 0.25;
      s[i] += 0.75;
      starts.push_back(std::move(s));
    }
  if (extra_starts > 0 && m > 1) {
    std::mt19937_64 rng(start_seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int t = 0; t < extra_starts; ++t) {
      VecD s(m);
      double tot = 0;
      for (auto& v : s) {
        v = -std::log(std::max(uni(rng), 1e-12));
        tot += v;
      }
      for (auto& v : s) v /= tot;
      starts.push_back(std::move(s));
    }
  }

  std::vector<VecQ> lambdas;
  for (const auto& s : starts) {
    VecQ lq = snap_vector(detail::nef_descent(obj, s));
    bool zero = true;
    for (auto& v : lq) {
      if (v < 0) v = 0;
      if (v > 0) zero = false;
    }
    if (zero) continue;
    if (std::find(lambdas.begin(), lambdas.end(), lq) == lambdas.end())
      lambdas.push_back(std::move(lq));
  }

  double nd = x.n;
  for (const auto& lq : lambdas) {
    VolhatCandidate cand;
    cand.lambda = lq;
    cand.rep.assign(x.r, Rational(0));
    cand.cls.assign(x.d, Rational(0));
    for (size_t i = 0; i < m; ++i) {
      if (lq[i] == 0) continue;
      for (int k = 0; k < x.r; ++k) cand.rep[k] += lq[i] * reps[i][k];
      for (int j = 0; j < x.d; ++j) cand.cls[j] += lq[i] * gens[i][j];
    }
    cand.volume = x.volume_divisor(cand.rep);
    if (cand.volume == 0) continue;
    cand.product_class = x.positive_product_top(cand.rep);
    auto ms = max_scale_in_cone(x.eff_curves.generators, alpha, cand.product_class);
    if (!ms.feasible || !ms.bounded) continue;
    cand.sigma = ms.scale;
    cand.pairing = dot(cand.cls, alpha);
    cand.inf_value = std::pow(to_double(cand.pairing), nd / (nd - 1)) /
                     std::pow(to_double(cand.volume), 1.0 / (nd - 1));
    cand.sup_value =
        std::pow(to_double(cand.sigma), nd / (nd - 1)) * to_double(cand.volume);
    VecQ gamma = vsub(alpha, vscale(cand.sigma, cand.product_class));
    cand.orth = abs_val(dot(cand.cls, gamma));
    out.candidates.push_back(std::move(cand));
  }
  if (out.candidates.empty())
    throw NonConvergenceError("no usable nef direction located");
  std::sort(out.candidates.begin(), out.candidates.end(),
            [](const VolhatCandidate& a, const VolhatCandidate& b) {
              return a.inf_value < b.inf_value;
            });
  out.inf_value = out.candidates.front().inf_value;
  out.sup_value = out.candidates.front().sup_value;
  for (const auto& cand : out.candidates)
    out.sup_value = std::max(out.sup_value, cand.sup_value);
  out.value = out.inf_value;
  if (out.inf_value - out.sup_value > 1e-5 * std::max(out.inf_value, 1e-12))
    throw NonConvergenceError("infimum and supremum forms of the volume disagree");
  return out;
}

inline double volhat(const ToricVariety& x, const VecQ& alpha) {
  return volhat_full(x, alpha).value;
}

// ----------------------------------------------------------- zariski

struct ZariskiDecomposition {
  VecQ direction;        // exact nef divisor coefficients, unnormalized
  VecQ direction_class;  // its class coordinates
  Rational direction_volume;
  Rational sigma;       // positive_curve = sigma * <direction^{n-1}>
  double scale = 0;     // sigma^{1/(n-1)}, so B = scale * direction
  VecD positive_divisor;  // class coordinates of B
  VecQ positive_curve;    // exact coordinates of B^{n-1}
  VecQ negative;          // exact coordinates of gamma = alpha - B^{n-1}
  double volhat = 0;
  double orthogonality_residual = 0;
  double psef_residual = 0;
  bool negative_psef_exact = false;
};

inline ZariskiDecomposition zariski_decompose(const ToricVariety& x, const VecQ& alpha) {
  x.require_projective();
  if (cone_membership(x.eff_curves, alpha).location != ConeLocation::Interior)
    throw PreconditionError("Zariski decomposition requires interior class");
  auto vh = volhat_full(x, alpha);

  // ties between near-optimal directions go to the most orthogonal pair
  const VolhatCandidate* pick = nullptr;
  double pick_orth = 0;
  for (const auto& cand : vh.candidates) {
    if (cand.inf_value > vh.inf_value * (1 + 1e-6) + 1e-12) continue;
    double mu = std::pow(to_double(cand.sigma), 1.0 / (x.n - 1));
    double o = mu * to_double(cand.orth);
    if (!pick || o < pick_orth) {
      pick = &cand;
      pick_orth = o;
    }
  }
  if (!pick) throw NonConvergenceError("no usable optimizer direction");

  ZariskiDecomposition out;
  out.direction = pick->rep;
  out.direction_class = pick->cls;
  out.direction_volume = pick->volume;
  out.sigma = pick->sigma;
  out.scale = std::pow(to_double(pick->sigma), 1.0 / (x.n - 1));
  out.positive_divisor.resize(x.d);
  for (int j = 0; j < x.d; ++j)
    out.positive_divisor[j] = out.scale * to_double(pick->cls[j]);
  out.positive_curve = vscale(pick->sigma, pick->product_class);
  out.negative = vsub(alpha, out.positive_curve);
  out.volhat = vh.value;
  out.orthogonality_residual = pick_orth;

  auto gloc = cone_membership(x.eff_curves, out.negative);
  out.negative_psef_exact = gloc.location != ConeLocation::Outside;
  out.psef_residual = out.negative_psef_exact ? 0.0 : to_double(-gloc.violation);
  double scale_ref = std::pow(std::max(out.volhat, 1e-12), (x.n - 1.0) / x.n);
  if (out.orthogonality_residual > 1e-6 * scale_ref)
    throw NonConvergenceError("orthogonality certificate failed");
  if (out.psef_residual > 1e-8)
    throw NonConvergenceError("negative part fails the effectivity certificate");
  return out;
}

// ----------------------------------------------------------- ci membership

// Scale-invariant depth of a class outside the nef cone: the worst violated
// inequality relative to the row and class sizes, zero for nef classes.
inline double nef_violation(const ToricVariety& x, const VecQ& y) {
  Rational sup(0);
  for (const auto& e : y) sup = std::max(sup, abs_val(e));
  if (sup == 0) return 0.0;
  double worst = 0;
  for (const auto& row : x.nef_divisors.inequalities) {
    Rational n1(0);
    for (const auto& e : row) n1 += abs_val(e);
    if (n1 == 0) continue;
    worst = std::max(worst, to_double(Rational(-dot(row, y) / (n1 * sup))));
  }
  return worst;
}

struct CiResult {
  bool member = false;
  bool consistent = true;  // the exact witness test and the volume test agree
  double volhat_value = 0;
  double mcal_value = 0;
  VecQ witness_class;
  bool witness_exact = false;
  double witness_violation = 0;  // nef_violation of the witness
};

inline CiResult ci_membership(const ToricVariety& x, const VecQ& alpha) {
  auto mc = mcal(x, alpha);
  if (!(mc.value > 0) || !mc.witness_class)
    throw PreconditionError("membership test needs a non-degenerate movable class");
  CiResult out;
  out.mcal_value = mc.value;
  out.witness_class = *mc.witness_class;
  out.witness_exact = mc.witness_exact;
  out.volhat_value = volhat(x, alpha);
  bool nef_test =
      cone_membership(x.nef_divisors, out.witness_class).location != ConeLocation::Outside;
  bool vol_test = std::fabs(out.volhat_value - out.mcal_value) <=
                  1e-5 * std::max(out.volhat_value, 1e-12);
  out.member = nef_test;
  out.consistent = nef_test == vol_test;
  out.witness_violation = nef_test ? 0.0 : nef_violation(x, out.witness_class);
  return out;
}

// ----------------------------------------------------------- derivative

inline double mcal_derivative(const ToricVariety& x, const VecQ& alpha, const VecQ& beta) {
  auto mc = mcal(x, alpha);
  if (!(mc.value > 0) || !mc.witness_class)
    throw PreconditionError("derivative needs a non-degenerate movable class");
  return x.n / (x.n - 1.0) * to_double(ToricVariety::pair(*mc.witness_class, beta));
}

// ----------------------------------------------------------- Morse bound

struct MorseBound {
  double bound = 0;
  bool certified_big = false;
  bool exact = false;
  std::optional<Rational> exact_bound;
};

inline MorseBound morse_bound(const ToricVariety& x, const VecQ& alpha, const VecQ& beta) {
  x.require_projective();
  auto mc = mcal(x, alpha);
  if (!(mc.value > 0) || !mc.witness_class)
    throw PreconditionError("the bound needs a non-degenerate movable class");
  MorseBound out;
  Rational p = ToricVariety::pair(*mc.witness_class, beta);
  if (mc.exact_value) {
    Rational bound = *mc.exact_value - Rational(x.n * x.n, x.n - 1) * p;
    out.exact_bound = bound;
    out.bound = to_double(bound);
    out.certified_big = *mc.exact_value - x.n * p > 0;
    out.exact = true;
  } else {
    out.bound = mc.value - (x.n * x.n) / (x.n - 1.0) * to_double(p);
    out.certified_big = mc.value - x.n * to_double(p) > 0;
  }
  if (out.certified_big) {
    VecQ diff = vsub(alpha, beta);
    if (cone_membership(x.eff_curves, diff).location != ConeLocation::Interior)
      throw TheoremViolationError("certified difference is not an interior curve class");
  }
  return out;
}

// ----------------------------------------------------------- pi-hat

struct PiHatResult {
  VecQ value;        // exact divisor coefficients, nef by construction
  VecQ value_class;  // class coordinates
  VecD raw_class;    // unrounded class coordinates
  double coefficient = 1;  // kept fraction of the Zariski positive part
  bool nef_input = false;
};

inline PiHatResult pi_hat(const ToricVariety& x, const VecQ& a) {
  if (x.volume_divisor(a) == 0)
    throw PreconditionError("projection needs a big divisor class");
  PiHatResult out;
  VecQ cls = x.divisor_coords(a);
  if (cone_membership(x.nef_divisors, cls).location != ConeLocation::Outside) {
    out.value = a;
    out.value_class = cls;
    out.raw_class = to_doubles(cls);
    out.nef_input = true;
    return out;
  }
  VecQ alpha = x.positive_product_top(a);
  auto mc = mcal(x, alpha);
  auto z = zariski_decompose(x, alpha);
  double rel = 1.0 - mc.value / z.volhat;
  if (rel < 1e-9) rel = 0.0;
  if (rel > 1.0) rel = 1.0;
  double kappa = 1.0 - std::pow(rel, 1.0 / x.n);
  double s = kappa * z.scale;
  // round the scale down so the comparison certificate stays exact
  Rational sq(static_cast<long long>(std::floor(s * 1e6)), 1000000);
  if (sq < 0) sq = 0;
  out.value = vscale(sq, z.direction);
  out.value_class = vscale(sq, z.direction_class);
  out.raw_class.resize(x.d);
  for (int j = 0; j < x.d; ++j)
    out.raw_class[j] = s * to_double(z.direction_class[j]);
  out.coefficient = kappa;
  VecQ diff = vsub(cls, out.value_class);
  if (cone_membership(x.eff_divisors, diff).location == ConeLocation::Outside)
    throw TheoremViolationError("projection is not dominated by the class");
  return out;
}

// ----------------------------------------------------------- boundary split

struct BoundaryClassification {
  bool positive_product = false;
  std::optional<VecQ> witness_divisor;  // length-r, when positive_product
  std::optional<VecQ> witness_class;
  bool witness_exact = false;
  bool boundary_certified = false;  // witness on the movable-cone boundary
  std::optional<VecQ> orthogonal;   // movable divisor class M with M.alpha = 0
};

inline BoundaryClassification classify_boundary(const ToricVariety& x, const VecQ& alpha) {
  auto loc = cone_membership(x.mov_curves, alpha).location;
  if (loc == ConeLocation::Interior) throw PreconditionError("not a boundary class");
  if (loc == ConeLocation::Outside) throw PreconditionError("not a movable class");
  auto mc = mcal(x, alpha);
  BoundaryClassification out;
  if (mc.value > 0) {
    out.positive_product = true;
    out.witness_exact = mc.witness_exact;
    out.witness_divisor = std::move(mc.witness_divisor);
    out.witness_class = std::move(mc.witness_class);
    Rational tol = mc.witness_exact ? Rational(0) : Rational(1, 1000000);
    auto wloc = cone_membership(x.mov_divisors, *out.witness_class, tol).location;
    out.boundary_certified = wloc == ConeLocation::Boundary;
    if (mc.witness_exact && !out.boundary_certified)
      throw TheoremViolationError("positive-volume boundary witness left the boundary");
    return out;
  }
  for (const auto& g : x.mov_divisors.generators)
    if (!is_zero_vec(g) && dot(g, alpha) == 0) {
      out.orthogonal = g;
      return out;
    }
  throw TheoremViolationError("boundary class with zero volume but no orthogonal divisor");
}

// ----------------------------------------------------------- Diskant scale

// Largest s with a1 - s*a2 pseudo-effective, exactly.
inline Rational diskant_scale(const ToricVariety& x, const VecQ& a1, const VecQ& a2) {
  auto ms = max_scale_in_cone(x.eff_divisors.generators, x.divisor_coords(a1),
                              x.divisor_coords(a2));
  if (!ms.feasible) throw PreconditionError("first class is not pseudo-effective");
  if (!ms.bounded)
    throw PreconditionError("difference stays pseudo-effective at every scale");
  return ms.scale;
}

}  // namespace poscurves
