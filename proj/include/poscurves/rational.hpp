#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace poscurves {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline double to_double(const Rational& x) { return x.template convert_to<double>(); }
inline double to_double(double x) { return x; }

inline BigInt rat_num(const Rational& x) { return boost::multiprecision::numerator(x); }
inline BigInt rat_den(const Rational& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const Rational& x) { return rat_den(x) == 1; }

// Parses "p/q", "p", or "-p/q". Throws on malformed input or zero denominator.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(s));
    }
    BigInt p(s.substr(0, slash));
    BigInt q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    Rational r(p);
    r /= Rational(q);
    return r;
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
}

inline std::string format_rational(const Rational& x) {
  if (is_integer(x)) return rat_num(x).str();
  return rat_num(x).str() + "/" + rat_den(x).str();
}

// Every finite double is dyadic, so this conversion is exact (mpq_set_d).
inline Rational rational_exact(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  return Rational(x);
}

// Best rational approximation with denominator bounded by max_den,
// via continued-fraction convergents plus a final semiconvergent step.
inline Rational snap_rational(double x, std::uint64_t max_den = 1000000) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  bool neg = x < 0;
  double v = neg ? -x : x;
  BigInt h_prev = 1, k_prev = 0;  // convergent p_{-1}/q_{-1}
  BigInt h = BigInt(static_cast<long long>(std::floor(v))), k = 1;
  double frac = v - std::floor(v);
  BigInt bound(static_cast<std::uint64_t>(max_den));
  for (int it = 0; it < 64 && frac > 1e-15; ++it) {
    v = 1.0 / frac;
    double fl = std::floor(v);
    if (fl > 9e18) break;
    BigInt a(static_cast<long long>(fl));
    frac = v - fl;
    BigInt h_next = a * h + h_prev;
    BigInt k_next = a * k + k_prev;
    if (k_next > bound) {
      // take the largest semiconvergent still under the bound
      BigInt t = (bound - k_prev) / k;
      if (t > 0) {
        BigInt hs = t * h + h_prev, ks = t * k + k_prev;
        Rational cand = Rational(hs) / Rational(ks);
        Rational best = Rational(h) / Rational(k);
        double xa = neg ? -x : x;
        if (std::fabs(to_double(cand) - xa) < std::fabs(to_double(best) - xa)) {
          h = hs;
          k = ks;
        }
      }
      break;
    }
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  Rational r = Rational(h) / Rational(k);
  return neg ? Rational(-r) : r;
}

// Scales a rational vector to a primitive integer vector (gcd 1).
// Zero vectors pass through. Does not change sign orientation.
inline std::vector<Rational> primitive_integer(const std::vector<Rational>& v) {
  BigInt l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, rat_den(x));
  BigInt g = 0;
  std::vector<BigInt> ints;
  ints.reserve(v.size());
  for (const auto& x : v) {
    BigInt n = rat_num(x) * (l / rat_den(x));
    ints.push_back(n);
    g = boost::multiprecision::gcd(g, n);
  }
  std::vector<Rational> out(v.size(), Rational(0));
  if (g == 0) return out;
  for (size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
  return out;
}

}  // namespace poscurves
