#ifndef TSL_POLY_HPP
#define TSL_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "tsl/errors.hpp"
#include "tsl/scalar.hpp"

namespace tsl {

/// Dense univariate polynomial with coefficients in ascending degree.
///
/// T is either an exact field (Rational, Quadratic<D>) or Complex. The
/// coefficient vector never carries trailing zeros, so the zero polynomial has
/// an empty vector and degree() == -1.
namespace detail {
template <typename T>
bool coeff_zero(const T& x) { return is_zero(x); }
}  // namespace detail

template <typename T>
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<T> c) : c_(c) { trim(); }
  explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }

  static Poly constant(T value) { return Poly(std::vector<T>{std::move(value)}); }
  static Poly monomial(int k, T value = T(1)) {
    std::vector<T> c(static_cast<std::size_t>(k) + 1, T(0));
    c.back() = std::move(value);
    return Poly(std::move(c));
  }
  /// 1 - value * t^k
  static Poly one_minus(T value, int k) {
    return Poly::constant(T(1)) - Poly::monomial(k, std::move(value));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int k) const {
    return (k < 0 || k >= static_cast<int>(c_.size())) ? T(0) : c_[static_cast<std::size_t>(k)];
  }
  const T& leading() const { return c_.back(); }
  T constant_term() const { return coeff(0); }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }
  Poly& operator/=(const T& s) {
    for (auto& x : c_) x /= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Poly operator*(Poly a, const T& s) { return a *= s; }
  friend Poly operator*(const T& s, Poly a) { return a *= s; }
  friend Poly operator/(Poly a, const T& s) { return a /= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::coeff_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Horner evaluation in the coefficient type.
  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  /// Horner evaluation at a working-precision complex point.
  Complex eval(const Complex& x) const {
    Complex acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_complex(*it);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> out(c_.size() - 1, T(0));
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * T(static_cast<int>(i));
    return Poly(std::move(out));
  }
  /// t^d p(1/t); requires d >= degree().
  Poly reversed(int d) const {
    std::vector<T> out(static_cast<std::size_t>(d) + 1, T(0));
    for (int i = 0; i <= degree(); ++i) out[static_cast<std::size_t>(d - i)] = c_[static_cast<std::size_t>(i)];
    return Poly(std::move(out));
  }
  Poly reversed() const { return reversed(degree()); }
  /// p(s * t)
  Poly scaled(const T& s) const {
    std::vector<T> out = c_;
    T f(1);
    for (auto& x : out) {
      x *= f;
      f *= s;
    }
    return Poly(std::move(out));
  }
  /// p(t^h)
  Poly power_substituted(int h) const {
    if (is_zero()) return {};
    std::vector<T> out(static_cast<std::size_t>(degree() * h) + 1, T(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i * static_cast<std::size_t>(h)] = c_[i];
    return Poly(std::move(out));
  }
  /// t^k p(t)
  Poly shifted(int k) const {
    if (is_zero()) return {};
    std::vector<T> out(static_cast<std::size_t>(k), T(0));
    out.insert(out.end(), c_.begin(), c_.end());
    return Poly(std::move(out));
  }
  /// Coefficients below t^n.
  Poly truncated(int n) const {
    std::vector<T> out(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(n, static_cast<std::ptrdiff_t>(c_.size())));
    return Poly(std::move(out));
  }
  /// Divides by the constant term so that p(0) = 1.
  Poly normalized_constant() const {
    if (is_zero() || detail::coeff_zero(c_[0])) throw Error(ErrorCode::zero_constant_term, "polynomial has zero constant term");
    return *this / c_[0];
  }
  Poly monic() const {
    if (is_zero()) return {};
    return *this / leading();
  }

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim() {
    while (!c_.empty() && detail::coeff_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

template <typename T>
std::string Poly<T>::to_string(const std::string& var) const {
  using tsl::to_string;
  if (is_zero()) return "0";
  std::string out;
  for (int i = 0; i <= degree(); ++i) {
    const T& x = c_[static_cast<std::size_t>(i)];
    if (detail::coeff_zero(x)) continue;
    std::string coef;
    if constexpr (std::is_same_v<T, Complex>) {
      coef = "(" + tsl::to_string(x.re, 20) + (x.im < 0 ? "" : "+") + tsl::to_string(x.im, 20) + "i)";
    } else {
      coef = to_string(x);
    }
    bool neg = false;
    if (coef.size() > 1 && coef[0] == '-' && coef.find_first_of("+-", 1) == std::string::npos) {
      neg = true;
      coef.erase(0, 1);
    }
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (i == 0) {
      out += coef;
    } else {
      out += (coef == "1" ? "" : coef + "*") + var + (i == 1 ? "" : "^" + std::to_string(i));
    }
  }
  return out;
}

/// Euclidean division over a field: a = q*b + r with deg r < deg b.
template <typename T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& a, const Poly<T>& b) {
  if (b.is_zero()) throw Error(ErrorCode::invalid_input, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly<T>{}, a};
  std::vector<T> rem = a.coeffs();
  std::vector<T> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1, T(0));
  const T& lead = b.leading();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    const std::size_t top = static_cast<std::size_t>(k + b.degree());
    if (detail::coeff_zero(rem[top])) continue;
    T f = rem[top] / lead;
    for (int j = 0; j <= b.degree(); ++j) rem[static_cast<std::size_t>(k + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    rem[top] = T(0);
    quo[static_cast<std::size_t>(k)] = std::move(f);
  }
  rem.resize(static_cast<std::size_t>(std::max(b.degree(), 0)), T(0));
  return {Poly<T>(std::move(quo)), Poly<T>(std::move(rem))};
}

template <typename T>
Poly<T> operator%(const Poly<T>& a, const Poly<T>& b) { return divmod(a, b).second; }

/// Quotient a / b, which must be exact.
template <typename T>
Poly<T> exact_quotient(const Poly<T>& a, const Poly<T>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(ErrorCode::inexact_division, "polynomial division is not exact");
  return q;
}

template <typename T>
bool divides(const Poly<T>& d, const Poly<T>& a) { return (a % d).is_zero(); }

namespace detail {

/// Rational polynomial scaled to integer coefficients with unit content.
inline Poly<Rational> primitive_part(const Poly<Rational>& p) {
  if (p.is_zero()) return p;
  Integer l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, denominator(c));
  Integer g = 0;
  for (const auto& c : p.coeffs()) g = gcd(g, numerator(c * l));
  return p * Rational(l, g);
}

}  // namespace detail

/// Canonical normalization of a gcd: constant term 1 when nonzero, else monic.
template <typename T>
Poly<T> normalize_gcd(const Poly<T>& g) {
  if (g.is_zero()) return g;
  if (!detail::coeff_zero(g.constant_term())) return g / g.constant_term();
  return g.monic();
}

/// Greatest common divisor over an exact field, normalized by normalize_gcd.
/// Rational inputs run a primitive remainder sequence to limit coefficient growth.
template <typename T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
  if constexpr (std::is_same_v<T, Rational>) {
    a = detail::primitive_part(a);
    b = detail::primitive_part(b);
  }
  while (!b.is_zero()) {
    Poly<T> r = a % b;
    if constexpr (std::is_same_v<T, Rational>) r = detail::primitive_part(r);
    a = std::move(b);
    b = std::move(r);
  }
  return normalize_gcd(a);
}

/// Yun's square-free decomposition in characteristic zero: p = c * prod f_i^i.
/// Returns (f_i, i) for nonconstant factors, each normalized by normalize_gcd.
template <typename T>
std::vector<std::pair<Poly<T>, int>> square_free_decomposition(const Poly<T>& p) {
  std::vector<std::pair<Poly<T>, int>> out;
  if (p.degree() < 1) return out;
  const Poly<T> dp = p.derivative();
  Poly<T> a = gcd(p, dp);
  Poly<T> b = exact_quotient(p, a);
  Poly<T> c = exact_quotient(dp, a);
  Poly<T> d = c - b.derivative();
  for (int i = 1; b.degree() >= 1; ++i) {
    Poly<T> g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(normalize_gcd(g), i);
    b = exact_quotient(b, g);
    c = exact_quotient(d, g);
    d = c - b.derivative();
  }
  return out;
}

template <typename T>
Poly<Complex> to_complex_poly(const Poly<T>& p) {
  std::vector<Complex> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.push_back(to_complex(x));
  return Poly<Complex>(std::move(c));
}

/// Exact embedding of a rational polynomial into a larger field.
template <typename F>
Poly<F> lift(const Poly<Rational>& p) {
  std::vector<F> c;
  for (const auto& x : p.coeffs()) c.push_back(F(x));
  return Poly<F>(std::move(c));
}

/// Monic polynomial with the given complex roots.
inline Poly<Complex> from_roots(const std::vector<Complex>& roots) {
  Poly<Complex> out = Poly<Complex>::constant(Complex(1));
  for (const auto& r : roots) out = out * Poly<Complex>{-r, Complex(1)};
  return out;
}

/// Largest coefficient distance; missing coefficients count as zero.
template <typename T>
Real max_coeff_distance(const Poly<T>& a, const Poly<T>& b) {
  Real out = 0;
  const int n = std::max(a.degree(), b.degree());
  for (int k = 0; k <= n; ++k) {
    const Real d = abs(to_complex(a.coeff(k)) - to_complex(b.coeff(k)));
    if (d > out) out = d;
  }
  return out;
}

}  // namespace tsl

#endif  // TSL_POLY_HPP
