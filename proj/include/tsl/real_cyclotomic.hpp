#ifndef TSL_REAL_CYCLOTOMIC_HPP
#define TSL_REAL_CYCLOTOMIC_HPP

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "tsl/errors.hpp"
#include "tsl/poly.hpp"
#include "tsl/scalar.hpp"

namespace tsl {

/// The real subfield Q(2cos(2pi/h)) of the h-th cyclotomic field.
class CyclotomicContext {
 public:
  explicit CyclotomicContext(int h) : h_(h) {
    if (h < 1) throw Error(ErrorCode::invalid_input, "cyclotomic order must be positive");
    PrecisionScope scope(512);
    std::vector<Complex> roots;
    if (h <= 2) {
      roots.push_back(Complex(Real(h == 1 ? 2 : -2)));
    } else {
      for (int k = 1; 2 * k < h; ++k)
        if (std::gcd(k, h) == 1) roots.push_back(Complex(2 * cos(2 * pi() * k / h)));
    }
    const Poly<Complex> m = from_roots(roots);
    std::vector<Rational> c;
    for (const auto& x : m.coeffs()) c.emplace_back(Integer(round(x.re).convert_to<Integer>()));
    min_poly_ = QPoly(std::move(c));
  }
  int order() const { return h_; }
  int degree() const { return min_poly_.degree(); }
  const Poly<Rational>& minimal_polynomial() const { return min_poly_; }
  /// theta = 2cos(2pi/h) at the working precision.
  Real theta() const { return h_ <= 2 ? Real(h_ == 1 ? 2 : -2) : Real(2 * cos(2 * pi() / h_)); }

 private:
  using QPoly = Poly<Rational>;
  int h_;
  QPoly min_poly_;
};

/// Exact element of Q(theta), theta = 2cos(2pi/h), stored as a polynomial in theta
/// of degree below the field degree. A null context denotes a plain rational.
class RealCyclotomic {
 public:
  using Ctx = std::shared_ptr<const CyclotomicContext>;

  RealCyclotomic() = default;
  RealCyclotomic(int x) : p_{Rational(x)} {}                // NOLINT
  RealCyclotomic(const Rational& x) : p_{x} {}              // NOLINT
  RealCyclotomic(Poly<Rational> p, Ctx ctx) : p_(std::move(p)), ctx_(std::move(ctx)) { reduce(); }

  /// 2cos(2pi k/h) as a field element.
  static RealCyclotomic two_cos(const Ctx& ctx, int k) {
    const Poly<Rational> theta{Rational(0), Rational(1)};
    Poly<Rational> prev{Rational(2)}, cur = theta;
    if (k == 0) return {prev, ctx};
    for (int i = 1; i < k; ++i) {
      Poly<Rational> next = theta * cur - prev;
      prev = std::move(cur);
      cur = std::move(next);
      cur = cur % ctx->minimal_polynomial();
    }
    return {cur, ctx};
  }

  const Ctx& context() const { return ctx_; }
  const Poly<Rational>& representation() const { return p_; }
  bool is_rational() const { return p_.degree() <= 0; }
  Rational rational_value() const { return p_.constant_term(); }

  RealCyclotomic& operator+=(const RealCyclotomic& o) { adopt(o); p_ += o.p_; return *this; }
  RealCyclotomic& operator-=(const RealCyclotomic& o) { adopt(o); p_ -= o.p_; return *this; }
  RealCyclotomic& operator*=(const RealCyclotomic& o) {
    adopt(o);
    p_ = p_ * o.p_;
    reduce();
    return *this;
  }
  RealCyclotomic& operator/=(const RealCyclotomic& o) {
    adopt(o);
    return *this *= o.inverse();
  }
  friend RealCyclotomic operator+(RealCyclotomic a, const RealCyclotomic& b) { return a += b; }
  friend RealCyclotomic operator-(RealCyclotomic a, const RealCyclotomic& b) { return a -= b; }
  friend RealCyclotomic operator*(RealCyclotomic a, const RealCyclotomic& b) { return a *= b; }
  friend RealCyclotomic operator/(RealCyclotomic a, const RealCyclotomic& b) { return a /= b; }
  friend RealCyclotomic operator-(RealCyclotomic a) {
    a.p_ = -a.p_;
    return a;
  }
  friend bool operator==(const RealCyclotomic& a, const RealCyclotomic& b) { return a.p_ == b.p_; }
  friend bool operator!=(const RealCyclotomic& a, const RealCyclotomic& b) { return !(a == b); }
  friend bool operator<(const RealCyclotomic& a, const RealCyclotomic& b) { return (a - b).sign() < 0; }
  friend bool operator>(const RealCyclotomic& a, const RealCyclotomic& b) { return (a - b).sign() > 0; }

  RealCyclotomic inverse() const {
    if (p_.is_zero()) throw Error(ErrorCode::invalid_input, "division by zero in number field");
    if (is_rational()) return RealCyclotomic(Rational(1) / p_.constant_term()).with(ctx_);
    // extended Euclid: u*p + v*m = 1
    Poly<Rational> r0 = ctx_->minimal_polynomial(), r1 = p_;
    Poly<Rational> s0{}, s1{Rational(1)};
    while (r1.degree() > 0) {
      auto [q, r] = divmod(r0, r1);
      Poly<Rational> s = s0 - q * s1;
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    return {s1 / r1.constant_term(), ctx_};
  }

  /// Exact sign; a nonzero element is evaluated at high precision.
  int sign() const {
    if (p_.is_zero()) return 0;
    if (is_rational()) return p_.constant_term().sign();
    PrecisionScope scope(std::max(512U, working_precision_bits()));
    const Real v = p_.eval(Complex(ctx_->theta())).re;
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  }

  Complex value() const {
    if (is_rational()) return Complex(Real(p_.constant_term()));
    return p_.eval(Complex(ctx_->theta()));
  }

  std::string to_string() const {
    if (is_rational()) return tsl::to_string(p_.constant_term());
    return p_.to_string("c" + std::to_string(ctx_->order()));
  }

 private:
  RealCyclotomic with(Ctx c) const {
    RealCyclotomic out = *this;
    out.ctx_ = std::move(c);
    return out;
  }
  void adopt(const RealCyclotomic& o) {
    if (!ctx_) ctx_ = o.ctx_;
    else if (o.ctx_ && o.ctx_ != ctx_ && o.ctx_->order() != ctx_->order())
      throw Error(ErrorCode::invalid_input, "mixing elements of different number fields");
  }
  void reduce() {
    if (ctx_ && p_.degree() >= ctx_->degree()) p_ = p_ % ctx_->minimal_polynomial();
  }

  Poly<Rational> p_;
  Ctx ctx_;
};

inline Complex to_complex(const RealCyclotomic& x) { return x.value(); }
inline bool is_zero(const RealCyclotomic& x) { return x.representation().is_zero(); }
inline std::string to_string(const RealCyclotomic& x) { return x.to_string(); }

}  // namespace tsl

#endif  // TSL_REAL_CYCLOTOMIC_HPP
