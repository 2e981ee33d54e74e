#ifndef TSL_RATIONAL_FUNCTION_HPP
#define TSL_RATIONAL_FUNCTION_HPP

#include <string>
#include <utility>
#include <vector>

#include "tsl/errors.hpp"
#include "tsl/poly.hpp"
#include "tsl/scalar.hpp"

namespace tsl {

using QPoly = Poly<Rational>;

/// Rational function N(t)/D(t) over Q, regular at t = 0.
struct RationalFunction {
  QPoly num;
  QPoly den = QPoly{1};
  bool reduced = false;

  RationalFunction() = default;
  RationalFunction(QPoly n, QPoly d) : num(std::move(n)), den(std::move(d)) {}
  static RationalFunction polynomial(QPoly n) { return {std::move(n), QPoly{1}}; }

  std::string to_string(const std::string& var = "t") const {
    return "(" + num.to_string(var) + ")/(" + den.to_string(var) + ")";
  }
};

/// Cancels gcd(N, D) and scales so that D(0) = 1.
inline RationalFunction reduce(const RationalFunction& f) {
  if (f.den.is_zero()) throw Error(ErrorCode::invalid_input, "zero denominator");
  QPoly g = gcd(f.num, f.den);
  QPoly n = f.num.is_zero() ? QPoly{} : exact_quotient(f.num, g);
  QPoly d = f.num.is_zero() ? QPoly{1} : exact_quotient(f.den, g);
  if (d.constant_term() == 0)
    throw Error(ErrorCode::zero_constant_term, "rational function has a pole at t = 0");
  const Rational c = d.constant_term();
  RationalFunction out{n / c, d / c};
  out.reduced = true;
  return out;
}

inline RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return reduce({a.num * b.den + b.num * a.den, a.den * b.den});
}
inline RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return reduce({a.num * b.den - b.num * a.den, a.den * b.den});
}
inline RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return reduce({a.num * b.num, a.den * b.den});
}
inline RationalFunction operator*(const Rational& c, const RationalFunction& a) {
  return reduce({a.num * c, a.den});
}

/// t^k * f
inline RationalFunction shift(const RationalFunction& f, int k) { return reduce({f.num.shifted(k), f.den}); }

inline RationalFunction derivative(const RationalFunction& f) {
  return reduce({f.num.derivative() * f.den - f.num * f.den.derivative(), f.den * f.den});
}

/// f(c t)
inline RationalFunction rescale(const RationalFunction& f, const Rational& c) {
  return reduce({f.num.scaled(c), f.den.scaled(c)});
}

/// Exact equality as functions (cross multiplication).
inline bool equal(const RationalFunction& a, const RationalFunction& b) {
  return a.num * b.den == b.num * a.den;
}

/// Taylor coefficients gamma_0..gamma_{n_max} by unrolling the linear recurrence of D.
inline std::vector<Rational> taylor(const RationalFunction& f, int n_max) {
  const Rational d0 = f.den.constant_term();
  if (d0 == 0) throw Error(ErrorCode::zero_constant_term, "denominator constant term is zero");
  const int q = f.den.degree();
  std::vector<Rational> g(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    Rational acc = f.num.coeff(n);
    for (int k = 1; k <= std::min(q, n); ++k) {
      const Rational& dk = f.den.coeffs()[static_cast<std::size_t>(k)];
      if (dk != 0) acc -= dk * g[static_cast<std::size_t>(n - k)];
    }
    g[static_cast<std::size_t>(n)] = acc / d0;
  }
  return g;
}

}  // namespace tsl

#endif  // TSL_RATIONAL_FUNCTION_HPP
