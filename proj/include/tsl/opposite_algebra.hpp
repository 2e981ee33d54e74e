#ifndef TSL_OPPOSITE_ALGEBRA_HPP
#define TSL_OPPOSITE_ALGEBRA_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "tsl/errors.hpp"
#include "tsl/matrix.hpp"
#include "tsl/poly.hpp"
#include "tsl/real_cyclotomic.hpp"
#include "tsl/scalar.hpp"

namespace tsl {

inline int cyc(int e, int h) { return ((e % h) + h) % h; }

/// A = prod of the initials.
template <typename F>
F period_product(const std::vector<F>& a) {
  F out(1);
  for (const auto& x : a) out *= x;
  return out;
}

/// A^[e](s) = sum_{j<h} (prod_{i=1..j} a^[e-i+1]) s^j for e = 0..h-1.
template <typename F>
std::vector<Poly<F>> numerators(const std::vector<F>& a) {
  const int h = static_cast<int>(a.size());
  if (h == 0) throw Error(ErrorCode::invalid_input, "no initials");
  for (const auto& x : a)
    if (detail::coeff_zero(x)) throw Error(ErrorCode::zero_coefficient, "initial a1 is zero");
  std::vector<Poly<F>> out;
  for (int e = 0; e < h; ++e) {
    std::vector<F> c(static_cast<std::size_t>(h), F(0));
    F p(1);
    for (int j = 0; j < h; ++j) {
      c[static_cast<std::size_t>(j)] = p;
      p *= a[static_cast<std::size_t>(cyc(e - j, h))];
    }
    out.emplace_back(std::move(c));
  }
  return out;
}

/// 1 - A s^h
template <typename F>
Poly<F> period_denominator(const F& A, int h) {
  return Poly<F>::one_minus(A, h);
}

/// a^[e+1] s A^[e] + (1 - A s^h) == A^[e+1] for every e.
template <typename F>
bool relation_holds(const std::vector<F>& a, const std::vector<Poly<F>>& nums) {
  const int h = static_cast<int>(a.size());
  const Poly<F> den = period_denominator(period_product(a), h);
  for (int e = 0; e < h; ++e) {
    const Poly<F> lhs = nums[static_cast<std::size_t>(e)].shifted(1) * a[static_cast<std::size_t>(cyc(e + 1, h))] + den;
    if (lhs != nums[static_cast<std::size_t>(cyc(e + 1, h))]) return false;
  }
  return true;
}

/// M[e][f] = prod_{i=1..f} a^[e-i+1]; row e holds the coefficients of A^[e].
template <typename F>
Matrix<F> coefficient_matrix(const std::vector<F>& a) {
  Matrix<F> m;
  for (const auto& p : numerators(a)) {
    std::vector<F> row(a.size(), F(0));
    for (int j = 0; j <= p.degree(); ++j) row[static_cast<std::size_t>(j)] = p.coeff(j);
    m.push_back(std::move(row));
  }
  return m;
}

/// D_h = det M_h
template <typename F>
F discriminant(const std::vector<F>& a) {
  return determinant(coefficient_matrix(a));
}

template <typename F>
struct DenominatorPair {
  Poly<F> delta;     // common gcd, constant term 1
  Poly<F> delta_op;  // (1 - A s^h) / delta
  int d_P = 0;
  int rank_M = 0;
};

/// delta = gcd(A^[e], 1 - A s^h), checked identical across classes and consecutive pairs.
template <typename F>
DenominatorPair<F> denominator_pair(const std::vector<F>& a) {
  const int h = static_cast<int>(a.size());
  const auto nums = numerators(a);
  const F A = period_product(a);
  const Poly<F> den = period_denominator(A, h);
  DenominatorPair<F> out;
  out.delta = gcd(nums[0], den);
  for (int e = 0; e < h; ++e) {
    const Poly<F> g = gcd(nums[static_cast<std::size_t>(e)], den);
    const Poly<F> gp = h > 1 ? gcd(nums[static_cast<std::size_t>(e)], nums[static_cast<std::size_t>(cyc(e + 1, h))]) : g;
    if (g != out.delta || gp != out.delta)
      throw Error(ErrorCode::inconsistent_gcd, "gcd differs at class " + std::to_string(e));
  }
  out.delta_op = exact_quotient(den, out.delta);
  out.d_P = out.delta_op.degree();
  out.rank_M = rank(coefficient_matrix(a));
  if (out.rank_M != out.d_P)
    throw Error(ErrorCode::inconsistent_gcd, "rank(M_h) = " + std::to_string(out.rank_M) + " but deg = " +
                                                 std::to_string(out.d_P));
  return out;
}

template <typename F>
struct ReducedNumerators {
  std::vector<Poly<F>> b;
  int span_rank = 0;          // rank of the coefficient matrix of the b^[e]
  bool sigma_action = false;  // s b^[e] = (b^[e+1] - Delta^op) / a^[e+1]
};

/// b^[e] = A^[e] / delta; they span the polynomials of degree < d_P.
template <typename F>
ReducedNumerators<F> reduced_numerators(const std::vector<F>& a, const DenominatorPair<F>& pair) {
  const int h = static_cast<int>(a.size());
  ReducedNumerators<F> out;
  for (const auto& p : numerators(a)) out.b.push_back(exact_quotient(p, pair.delta));
  Matrix<F> m;
  for (const auto& p : out.b) {
    std::vector<F> row(static_cast<std::size_t>(std::max(pair.d_P, 1)), F(0));
    for (int j = 0; j <= p.degree(); ++j) {
      if (j >= pair.d_P) throw Error(ErrorCode::inexact_division, "reduced numerator degree too large");
      row[static_cast<std::size_t>(j)] = p.coeff(j);
    }
    m.push_back(std::move(row));
  }
  out.span_rank = rank(m);
  out.sigma_action = true;
  for (int e = 0; e < h; ++e) {
    const auto& bn = out.b[static_cast<std::size_t>(cyc(e + 1, h))];
    const Poly<F> rhs = (bn - pair.delta_op) / a[static_cast<std::size_t>(cyc(e + 1, h))];
    if (out.b[static_cast<std::size_t>(e)].shifted(1) != rhs) out.sigma_action = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Residues

namespace detail {

inline Real arg_0_2pi(const Complex& z) {
  Real a = arg(z);
  if (a < 0) a += 2 * pi();
  if (2 * pi() - a < pow(Real(2), -static_cast<int>(working_precision_bits()) / 2)) a = 0;
  return a;
}

}  // namespace detail

/// The h values x with x^h = A, sorted by argument in [0, 2pi).
inline std::vector<Complex> period_roots(const Complex& A, int h) {
  std::vector<Complex> out;
  const Real m = pow(abs(A), Real(1) / h);
  const Real base = arg(A);
  for (int j = 0; j < h; ++j) out.push_back(polar(m, (base + 2 * pi() * j) / h));
  std::sort(out.begin(), out.end(),
            [](const Complex& a, const Complex& b) { return detail::arg_0_2pi(a) < detail::arg_0_2pi(b); });
  return out;
}

struct ResidueMatrix {
  std::vector<Complex> x;        // columns: roots x_i with 1/x_i in V(Delta^op)
  Matrix<Complex> mu;            // mu[e][i] = A^[e](1/x_i) / h
  std::vector<Complex> excluded; // x^h = A but 1/x not a root of Delta^op
  Real excluded_max = 0;         // max |A^[e](1/x)| over excluded roots
  Real expansion_residual = 0;   // sum_i mu x_i^k vs a_k^[e], k < 2h
  int numeric_rank = 0;
  Poly<Complex> delta_op;        // prod over columns of (1 - x_i s)
};

/// Residue data from numerators evaluated numerically. A root 1/x of 1 - A s^h is kept when
/// some A^[e](1/x) is not negligible, which realizes Delta^op without exact gcds.
inline ResidueMatrix residue_matrix(const std::vector<Poly<Complex>>& nums, const Complex& A, const Real& tol) {
  const int h = static_cast<int>(nums.size());
  ResidueMatrix out;
  out.delta_op = Poly<Complex>::constant(Complex(1));
  Real scale = 1;
  for (const auto& p : nums)
    for (const auto& c : p.coeffs()) scale = std::max(scale, abs(c));
  for (const auto& x : period_roots(A, h)) {
    const Complex s = Complex(1) / x;
    Real m = 0;
    for (const auto& p : nums) m = std::max(m, abs(p.eval(s)));
    if (m <= tol * scale * (1 + pow(abs(s), h))) {
      out.excluded.push_back(x);
      out.excluded_max = std::max(out.excluded_max, m);
    } else {
      out.x.push_back(x);
      out.delta_op *= Poly<Complex>{Complex(1), -x};
    }
  }
  for (const auto& p : nums) {
    std::vector<Complex> row;
    for (const auto& x : out.x) row.push_back(p.eval(Complex(1) / x) / Complex(h));
    out.mu.push_back(std::move(row));
  }
  for (int e = 0; e < h; ++e) {
    const auto& p = nums[static_cast<std::size_t>(e)];
    for (int k = 0; k < 2 * h; ++k) {
      Complex expect = p.coeff(k % h);
      if (k >= h) expect *= A;
      Complex got(0);
      for (std::size_t i = 0; i < out.x.size(); ++i) got += out.mu[static_cast<std::size_t>(e)][i] * pow(out.x[i], k);
      out.expansion_residual = std::max(out.expansion_residual, abs(got - expect));
    }
  }
  out.numeric_rank = numeric_rank(out.mu, pow(Real(10), -20));
  return out;
}

// ---------------------------------------------------------------------------
// Stratification of positive initials by Delta^op normalized to the unit circle

inline std::shared_ptr<const CyclotomicContext> cyclotomic_context(int h) {
  return std::make_shared<const CyclotomicContext>(h);
}

/// Real divisor of 1 - s^h containing 1 - s. Factor id 0 is 1 - s, id h/2 (h even) is 1 + s,
/// and 0 < k < h/2 is 1 - 2cos(2pi k/h) s + s^2.
struct StratumLabel {
  int h = 1;
  std::vector<int> factors;
  Poly<RealCyclotomic> poly;

  std::string to_string() const {
    std::string out;
    for (int k : factors) {
      std::string f;
      if (k == 0) f = "(1 - s)";
      else if (2 * k == h) f = "(1 + s)";
      else {
        const auto ctx = cyclotomic_context(h);
        const RealCyclotomic c = RealCyclotomic::two_cos(ctx, k);
        f = c.is_rational() ? "(" + Poly<RealCyclotomic>{RealCyclotomic(1), -c, RealCyclotomic(1)}.to_string("s") + ")"
                            : "(1 - 2cos(2pi*" + std::to_string(k) + "/" + std::to_string(h) + ")s + s^2)";
      }
      out += f;
    }
    return out;
  }
  friend bool operator==(const StratumLabel& a, const StratumLabel& b) { return a.h == b.h && a.factors == b.factors; }
};

inline Poly<RealCyclotomic> unit_factor(const std::shared_ptr<const CyclotomicContext>& ctx, int k) {
  const int h = ctx->order();
  if (k == 0) return {RealCyclotomic(1), RealCyclotomic(-1)};
  if (2 * k == h) return {RealCyclotomic(1), RealCyclotomic(1)};
  return {RealCyclotomic(1), -RealCyclotomic::two_cos(ctx, k), RealCyclotomic(1)};
}

/// All labels for period h, by degree and then factor list.
inline std::vector<StratumLabel> all_labels(int h) {
  if (h < 1) throw Error(ErrorCode::invalid_input, "period must be positive");
  const auto ctx = cyclotomic_context(h);
  std::vector<int> optional_factors;
  for (int k = 1; 2 * k <= h; ++k) optional_factors.push_back(k);
  std::vector<StratumLabel> out;
  const std::size_t n = optional_factors.size();
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    StratumLabel l;
    l.h = h;
    l.factors.push_back(0);
    l.poly = unit_factor(ctx, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1U << i)) {
        l.factors.push_back(optional_factors[i]);
        l.poly *= unit_factor(ctx, optional_factors[i]);
      }
    out.push_back(std::move(l));
  }
  std::stable_sort(out.begin(), out.end(), [](const StratumLabel& a, const StratumLabel& b) {
    return a.poly.degree() != b.poly.degree() ? a.poly.degree() < b.poly.degree() : a.factors < b.factors;
  });
  return out;
}

template <typename F>
std::vector<RealCyclotomic> to_field(const std::vector<F>& v) {
  return {v.begin(), v.end()};
}

/// Label L with Delta^op(s) = L(r s), r = A^(1/h). Coefficientwise c_k = l_k r^k is decided
/// exactly through equal signs and c_k^h = l_k^h A^k.
inline StratumLabel stratum_classify(const std::vector<RealCyclotomic>& initials) {
  const int h = static_cast<int>(initials.size());
  for (const auto& x : initials)
    if (x.sign() <= 0) throw Error(ErrorCode::invalid_input, "stratification needs positive initials");
  const RealCyclotomic A = period_product(initials);
  const auto pair = denominator_pair(initials);
  const auto& c = pair.delta_op;
  for (const auto& label : all_labels(h)) {
    if (label.poly.degree() != c.degree()) continue;
    bool match = true;
    for (int k = 0; k <= c.degree() && match; ++k) {
      const RealCyclotomic ck = c.coeff(k), lk = label.poly.coeff(k);
      match = ck.sign() == lk.sign() && ipow(ck, h) == ipow(lk, h) * ipow(A, k);
    }
    if (match) return label;
  }
  throw Error(ErrorCode::inconsistent_gcd, "Delta^op matches no divisor of 1 - s^h");
}

template <typename F>
StratumLabel stratum_classify(const std::vector<F>& initials) {
  return stratum_classify(to_field(initials));
}

/// Initials in the stratum of `label` with A = r^h, built from b(s) = L(rs)/(1 - rs) + eps q(s)
/// and A^[0] = b(s)(1 - r^h s^h)/L(rs). Resampled until classification returns the label.
inline std::vector<RealCyclotomic> stratum_sample(const StratumLabel& label, const RealCyclotomic& r, std::uint64_t seed,
                                                  int budget = 200) {
  const int h = label.h;
  if (r.sign() <= 0) throw Error(ErrorCode::invalid_input, "scale r must be positive");
  const Poly<RealCyclotomic> lrs = label.poly.scaled(r);
  const Poly<RealCyclotomic> base = exact_quotient(lrs, Poly<RealCyclotomic>{RealCyclotomic(1), -r});
  const RealCyclotomic A = ipow(r, h);
  const Poly<RealCyclotomic> top = Poly<RealCyclotomic>::one_minus(A, h);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3), shrink(2, 7);
  const int dl = label.poly.degree();
  for (int attempt = 0; attempt < budget; ++attempt) {
    Poly<RealCyclotomic> q;
    if (attempt > 0 || dl > 1) {
      std::vector<RealCyclotomic> qc(static_cast<std::size_t>(std::max(dl, 1)), RealCyclotomic(0));
      for (int j = 1; j < dl; ++j) qc[static_cast<std::size_t>(j)] = RealCyclotomic(coef(rng));
      q = Poly<RealCyclotomic>(qc);
    }
    const RealCyclotomic eps(Rational(1, Integer(1) << shrink(rng)));
    const Poly<RealCyclotomic> b = base + q * eps;
    const Poly<RealCyclotomic> a0 = exact_quotient(b * top, lrs);
    bool positive = a0.degree() == h - 1;
    for (int j = 0; j < h && positive; ++j) positive = a0.coeff(j).sign() > 0;
    if (!positive) continue;
    std::vector<RealCyclotomic> a(static_cast<std::size_t>(h), RealCyclotomic(0));
    if (h == 1) {
      a[0] = A;
    } else {
      a[0] = a0.coeff(1) / a0.coeff(0);
      RealCyclotomic others = a[0];
      for (int j = 2; j < h; ++j) {
        a[static_cast<std::size_t>(h - j + 1)] = a0.coeff(j) / a0.coeff(j - 1);
        others *= a[static_cast<std::size_t>(h - j + 1)];
      }
      a[1] = A / others;
    }
    try {
      if (stratum_classify(a) == label && numerators(a)[0] == a0) return a;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::sample_budget, "no sample for " + label.to_string() + " within " + std::to_string(budget) + " attempts");
}

}  // namespace tsl

#endif  // TSL_OPPOSITE_ALGEBRA_HPP
