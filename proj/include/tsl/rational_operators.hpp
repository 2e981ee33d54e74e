#ifndef TSL_RATIONAL_OPERATORS_HPP
#define TSL_RATIONAL_OPERATORS_HPP

#include <string>
#include <vector>

#include "tsl/errors.hpp"
#include "tsl/matrix.hpp"
#include "tsl/pole_analysis.hpp"
#include "tsl/rational_function.hpp"

namespace tsl {

/// Hadamard section T^[e] of a rational function for the residue class e mod h.
struct SectionedRational {
  int e = 0;
  int h = 1;
  RationalFunction result;
};

inline int mod_class(long n, int h) { return static_cast<int>(((n % h) + h) % h); }

/// Denominator of the class subsequence: reversal of charpoly(C^h), C the companion
/// matrix of the recurrence of D. Its roots are the h-th powers of the roots of D.
inline QPoly section_denominator(const QPoly& den, int h) {
  const int q = den.degree();
  if (q < 1) return QPoly{Rational(1)};
  const Rational d0 = den.constant_term();
  // companion of t^q D(1/t)/d0 = t^q + (d1/d0) t^(q-1) + ... + dq/d0
  Matrix<Rational> c(static_cast<std::size_t>(q), std::vector<Rational>(static_cast<std::size_t>(q), Rational(0)));
  for (int j = 0; j < q; ++j) c[0][static_cast<std::size_t>(j)] = -den.coeff(j + 1) / d0;
  for (int i = 1; i < q; ++i) c[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = Rational(1);
  const QPoly chi = characteristic_polynomial(matrix_power(c, static_cast<unsigned>(h)));
  return chi.reversed(q);
}

/// T^[e] P for P = N/D, exact over Q.
inline SectionedRational section_rational(const RationalFunction& input, int h, int e) {
  if (h < 1) throw Error(ErrorCode::invalid_input, "section modulus must be positive");
  const RationalFunction rep = input.reduced ? input : reduce(input);
  e = mod_class(e, h);
  SectionedRational out{e, h, {}};
  if (rep.num.is_zero()) {
    out.result = reduce({QPoly{}, QPoly{1}});
    return out;
  }
  const QPoly dtau = section_denominator(rep.den, h);
  const int q = rep.den.degree();
  const int excess = std::max(0, rep.num.degree() - q + 1);
  const int len = q + (excess + h - 1) / h + 1;
  const int check = len + q + 4;
  const auto gamma = taylor(rep, e + (len + check) * h);
  std::vector<Rational> sub;
  for (int m = 0; m < len + check; ++m) sub.push_back(gamma[static_cast<std::size_t>(e + m * h)]);
  // N_tau = D_tau * S truncated, valid once the recurrence holds for the whole window
  QPoly s_head(std::vector<Rational>(sub.begin(), sub.begin() + len));
  QPoly ntau = (dtau * s_head).truncated(len);
  const auto expanded = taylor({ntau, dtau}, len + check - 1);
  for (int m = 0; m < len + check; ++m)
    if (expanded[static_cast<std::size_t>(m)] != sub[static_cast<std::size_t>(m)])
      throw Error(ErrorCode::inexact_division, "section numerator fit failed verification");
  out.result = reduce({ntau.power_substituted(h).shifted(e), dtau.power_substituted(h)});
  return out;
}

/// Generic sum of sections: sum_e T^[e] = identity on any coefficient list.
inline std::vector<SectionedRational> all_sections(const RationalFunction& rep, int h) {
  std::vector<SectionedRational> out;
  for (int e = 0; e < h; ++e) out.push_back(section_rational(rep, h, e));
  return out;
}

struct IdentityCheck {
  std::string name;
  int e = -1;
  bool passed = false;
  std::string residual;  // nonzero residual numerator when failed
};

struct IdentityRecord {
  int h = 1;
  std::vector<IdentityCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

/// Exact checks of sum_e T^[e] = 1, T^[e] t = t T^[e-1], T^[e] d/dt = d/dt T^[e+1], and
/// that no section raises the top boundary pole order.
inline IdentityRecord operator_identity_suite(const RationalFunction& input, int h) {
  const RationalFunction rep = input.reduced ? input : reduce(input);
  IdentityRecord rec;
  rec.h = h;
  auto record = [&](const std::string& name, int e, const RationalFunction& lhs, const RationalFunction& rhs) {
    const RationalFunction diff = lhs - rhs;
    rec.checks.push_back({name, e, diff.num.is_zero(), diff.num.is_zero() ? "" : diff.to_string()});
  };
  const auto secs = all_sections(rep, h);
  RationalFunction total = reduce({QPoly{}, QPoly{1}});
  for (const auto& s : secs) total = total + s.result;
  record("sum_of_sections", -1, total, rep);

  const RationalFunction trep = shift(rep, 1);
  const RationalFunction drep = derivative(rep);
  for (int e = 0; e < h; ++e) {
    record("shift", e, section_rational(trep, h, e).result, shift(secs[static_cast<std::size_t>(mod_class(e - 1, h))].result, 1));
    record("derivative", e, section_rational(drep, h, e).result,
           derivative(secs[static_cast<std::size_t>(mod_class(e + 1, h))].result));
  }
  if (rep.den.degree() >= 1) {
    const Real tol = pow(Real(10), -40);
    const BoundaryOrder base = boundary_order_numeric(rep, tol);
    for (int e = 0; e < h; ++e) {
      const RationalFunction& s = secs[static_cast<std::size_t>(e)].result;
      bool ok = true;
      std::string note;
      if (s.den.degree() >= 1 && !s.num.is_zero()) {
        const BoundaryOrder b = boundary_order_numeric(s, tol);
        // a section's radius is never smaller; on the same circle its order is never larger
        if (b.r < base.r * (1 - tol)) ok = false;
        else if (b.r <= base.r * (1 + tol) && b.order > base.order) ok = false;
        if (!ok) note = "order " + std::to_string(b.order) + " at radius " + to_string(b.r, 20);
      }
      rec.checks.push_back({"pole_order", e, ok, note});
    }
  }
  return rec;
}

}  // namespace tsl

#endif  // TSL_RATIONAL_OPERATORS_HPP
