#ifndef TSL_SCALAR_HPP
#define TSL_SCALAR_HPP

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "tsl/errors.hpp"

namespace tsl {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
/// Variable-precision binary float; its precision follows the active PrecisionScope.
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 256;

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(static_cast<double>(bits) * 0.30102999566398120) + 1;
}

namespace detail {

struct PrecisionRecord {
  unsigned bits = 0;
  unsigned digits = 0;
};

inline PrecisionRecord& precision_record() {
  thread_local PrecisionRecord r;
  return r;
}

}  // namespace detail

/// Current working precision in bits.
inline unsigned working_precision_bits() {
  const auto& r = detail::precision_record();
  const unsigned digits = Real::default_precision();
  if (r.digits == digits && r.bits) return r.bits;
  return static_cast<unsigned>(static_cast<double>(digits) / 0.30102999566398120);
}

/// Sets the working precision of Real for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_digits_(Real::default_precision()), saved_(detail::precision_record()) {
    Real::default_precision(bits_to_digits10(bits));
    detail::precision_record() = {bits, static_cast<unsigned>(Real::default_precision())};
  }
  ~PrecisionScope() {
    Real::default_precision(saved_digits_);
    detail::precision_record() = saved_;
  }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits_;
  detail::PrecisionRecord saved_;
};

/// Precision from TSL_PRECISION_BITS, else the library default.
inline unsigned precision_from_env() {
  if (const char* env = std::getenv("TSL_PRECISION_BITS")) {
    char* end = nullptr;
    const long bits = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && bits >= 64) return static_cast<unsigned>(bits);
  }
  return kDefaultPrecisionBits;
}

inline Real pow10(int e) { return pow(Real(10), e); }

// ---------------------------------------------------------------------------
// Rationals

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::invalid_input, "rational with zero denominator");
  Rational q(num, den);
  return q;
}

/// Parses "p", "p/q" or a finite decimal such as "-0.25" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw Error(ErrorCode::invalid_input, "empty rational literal");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      const auto frac_len = s.size() - dot - 1;
      if (digits == "-" || digits == "+" || digits.empty()) digits += "0";
      Integer den = 1;
      for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
      return make_rational(Integer(digits), den);
    }
    return Rational(Integer(s));
  } catch (const std::runtime_error&) {
    throw Error(ErrorCode::invalid_input, "malformed rational literal '" + s + "'");
  }
}

inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Real to_real(const Rational& q) { return Real(q); }

/// q^k for integer k (negative k inverts).
template <typename T>
T ipow(T base, long k) {
  if (k < 0) return T(1) / ipow(std::move(base), -k);
  T out(1);
  while (k > 0) {
    if (k & 1) out *= base;
    base *= base;
    k >>= 1;
  }
  return out;
}

inline std::string to_string(const Real& x, int digits = 40) {
  return x.str(digits, std::ios_base::scientific);
}

// ---------------------------------------------------------------------------
// Complex numbers at working precision

struct Complex {
  Real re{0};
  Real im{0};

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT: implicit widening
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r), im(0) {}  // NOLINT

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    const Real d = o.re * o.re + o.im * o.im;
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << "(" << to_string(z.re, 30) << ", " << to_string(z.im, 30) << ")";
  }
};

inline Real abs(const Complex& z) { return sqrt(z.re * z.re + z.im * z.im); }
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }
inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Complex polar(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }

inline Complex pow(Complex z, long k) {
  if (k < 0) return Complex(1) / pow(std::move(z), -k);
  Complex out(1);
  while (k > 0) {
    if (k & 1) out *= z;
    z *= z;
    k >>= 1;
  }
  return out;
}

inline Real pi() { return boost::math::constants::pi<Real>(); }

inline Complex to_complex(const Rational& q) { return Complex(Real(q)); }
inline Complex to_complex(const Complex& z) { return z; }
inline Complex to_complex(const Real& x) { return Complex(x); }

inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(const Complex& z) { return z.re == 0 && z.im == 0; }

/// Exact element re + im*i of Q(i); coefficient type of streams with complex parameters.
struct Gaussian {
  Rational re{0};
  Rational im{0};

  Gaussian() = default;
  Gaussian(Rational r) : re(std::move(r)) {}  // NOLINT
  Gaussian(int r) : re(r) {}                  // NOLINT
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  Gaussian& operator+=(const Gaussian& o) { re += o.re; im += o.im; return *this; }
  Gaussian& operator-=(const Gaussian& o) { re -= o.re; im -= o.im; return *this; }
  Gaussian& operator*=(const Gaussian& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) {
    const Rational d = o.re * o.re + o.im * o.im;
    if (d == 0) throw Error(ErrorCode::invalid_input, "division by zero");
    Rational r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
  bool is_real() const { return im == 0; }
};

inline Complex to_complex(const Gaussian& z) { return {Real(z.re), Real(z.im)}; }
inline bool is_zero(const Gaussian& z) { return z.re == 0 && z.im == 0; }
inline std::string to_string(const Gaussian& z) {
  if (z.im == 0) return to_string(z.re);
  return to_string(z.re) + (z.im < 0 ? "-" : "+") + to_string(abs(z.im)) + "i";
}

/// Continued-fraction rationalization: the first convergent p/q with q <= max_den
/// and |x - p/q| <= bound, if any.
inline std::optional<Rational> rationalize(const Real& x, const Real& bound, const Integer& max_den) {
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Real rest = x;
  for (int iter = 0; iter < 200; ++iter) {
    const Real fl = floor(rest);
    const Integer a = fl.convert_to<Integer>();
    const Integer p2 = a * p1 + p0;
    const Integer q2 = a * q1 + q0;
    if (q2 > max_den) return std::nullopt;
    const Rational cand(p2, q2);
    if (abs(x - Real(cand)) <= bound) return cand;
    const Real frac = rest - fl;
    if (frac == 0) return std::nullopt;
    rest = 1 / frac;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
  }
  return std::nullopt;
}

}  // namespace tsl

#endif  // TSL_SCALAR_HPP
