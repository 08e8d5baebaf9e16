#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "poscurves/cone.hpp"
#include "poscurves/errors.hpp"

namespace poscurves {

// Simplex weights over m generators: uniform sample snapped to denominator
// 1000, then mixed with the barycenter at weight 1/10 to stay interior.
inline VecQ random_simplex_weights(size_t m, std::mt19937_64& rng) {
  if (m == 0) throw PreconditionError("trivial cone");
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> e(m);
  double tot = 0;
  for (auto& v : e) {
    v = -std::log(std::max(uni(rng), 1e-12));
    tot += v;
  }
  VecQ lam(m);
  Rational lsum = 0;
  for (size_t i = 0; i < m; ++i) {
    lam[i] = Rational(static_cast<long long>(std::llround(1000.0 * e[i] / tot)), 1000);
    lsum += lam[i];
  }
  if (lsum == 0) {
    lam.assign(m, Rational(1));
    lsum = Rational(static_cast<int>(m));
  }
  Rational mix(1, 10);
  Rational unif(1, static_cast<int>(m));
  for (size_t i = 0; i < m; ++i)
    lam[i] = Rational((1 - mix) * lam[i] / lsum + mix * unif);
  return lam;
}

inline VecQ random_class(const ConeDesc& cone, std::mt19937_64& rng) {
  const MatQ& gens = cone.generators;
  VecQ lam = random_simplex_weights(gens.size(), rng);
  VecQ out(gens[0].size(), Rational(0));
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = 0; j < out.size(); ++j) out[j] += lam[i] * gens[i][j];
  return out;
}

inline VecQ random_class(const ConeDesc& cone, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_class(cone, rng);
}

// A class on a random proper face: generators lying on one facet hyperplane.
inline VecQ random_face_class(const ConeDesc& cone, std::mt19937_64& rng) {
  if (cone.generators.empty() || cone.inequalities.empty())
    throw PreconditionError("trivial cone");
  std::uniform_int_distribution<size_t> pick(0, cone.inequalities.size() - 1);
  for (int attempt = 0; attempt < 32; ++attempt) {
    const VecQ& ineq = cone.inequalities[pick(rng)];
    MatQ face;
    for (const auto& g : cone.generators)
      if (dot(ineq, g) == 0) face.push_back(g);
    if (face.empty()) continue;
    VecQ lam = random_simplex_weights(face.size(), rng);
    VecQ out(face[0].size(), Rational(0));
    for (size_t i = 0; i < face.size(); ++i)
      for (size_t j = 0; j < out.size(); ++j) out[j] += lam[i] * face[i][j];
    if (!is_zero_vec(out)) return out;
  }
  throw PreconditionError("no usable face found");
}

}  // namespace poscurves
