#ifndef TSL_OPPOSITE_SPACE_HPP
#define TSL_OPPOSITE_SPACE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tsl/errors.hpp"
#include "tsl/opposite_algebra.hpp"
#include "tsl/poly.hpp"
#include "tsl/scalar.hpp"
#include "tsl/sequence.hpp"

namespace tsl {

/// X_n(P) = sum_k gamma_{n-k}/gamma_n s^k
struct OppositePolynomial {
  long n = 0;
  std::vector<Gaussian> c;

  bool real() const {
    return std::all_of(c.begin(), c.end(), [](const Gaussian& g) { return g.is_real(); });
  }
  QPoly exact() const {
    std::vector<Rational> v;
    for (const auto& g : c) v.push_back(g.re);
    return QPoly(std::move(v));
  }
  Poly<Complex> numeric() const {
    std::vector<Complex> v;
    for (const auto& g : c) v.push_back(to_complex(g));
    return Poly<Complex>(std::move(v));
  }
};

inline OppositePolynomial opposite_polynomial(const CoefficientStream& stream, long n) {
  const auto g = stream.prefix(n);
  const Gaussian& gn = g[static_cast<std::size_t>(n)];
  if (is_zero(gn)) throw Error(ErrorCode::zero_coefficient, "gamma_" + std::to_string(n) + " is zero");
  OppositePolynomial x;
  x.n = n;
  for (long k = 0; k <= n; ++k) x.c.push_back(g[static_cast<std::size_t>(n - k)] / gn);
  return x;
}

struct DetectionOptions {
  long horizon = 512;
  Real tolerance = Real("1e-30");
  int h_max = 24;
  int window = 16;  // minimum number of tail differences per class
  TamenessOptions tameness;
};

/// Limit of one class-restricted ratio sequence.
struct ClassLimit {
  int e = 0;
  Complex value;
  Real error;
  std::string mode;  // geometric | algebraic
  long terms = 0;
  std::optional<Gaussian> reconstructed;
};

struct PeriodTrial {
  int h = 0;
  bool passed = false;
  std::string reason;
};

struct AccumulationReport {
  std::string verdict = "inconclusive";  // finite-rational | inconclusive
  int h_P = 0;
  int first_passing_h = 0;
  std::vector<ClassLimit> initials;
  Complex A;
  Real A_error;
  std::optional<Gaussian> A_exact;
  long N_P = 1;
  long horizon = 0;
  Real tolerance;
  int h_max = 0;
  std::vector<PeriodTrial> trials;
  std::optional<long> suggested_horizon;
  std::vector<std::string> diagnostics;
  std::vector<std::vector<Complex>> class_ratios;  // ratios gamma_{n-1}/gamma_n for n >= N_P, index n - N_P

  bool finite_rational() const { return verdict == "finite-rational"; }
  bool exact() const {
    return finite_rational() &&
           std::all_of(initials.begin(), initials.end(), [](const ClassLimit& c) { return c.reconstructed.has_value(); });
  }
  std::optional<std::vector<Rational>> exact_real_initials() const {
    if (!exact()) return std::nullopt;
    std::vector<Rational> out;
    for (const auto& c : initials) {
      if (!c.reconstructed->is_real()) return std::nullopt;
      out.push_back(c.reconstructed->re);
    }
    return out;
  }
  std::vector<Complex> initial_values() const {
    std::vector<Complex> out;
    for (const auto& c : initials) out.push_back(c.value);
    return out;
  }
};

namespace detail {

struct ClassResult {
  bool ok = false;
  Complex limit;
  Real error;
  std::string mode;
  std::string reason;
  long more_terms = 0;  // rough count of extra class terms needed
};

inline Real noise_floor(const Real& scale) {
  return pow(Real(2), -static_cast<int>(working_precision_bits()) + 24) * (scale + 1);
}

/// Wynn rho extrapolation of y (abscissae 0,1,2,...); returns the last entry of the deepest
/// even column reached before a column becomes constant or degenerate.
inline Complex wynn_rho(const std::vector<Complex>& y, const Real& floor) {
  std::vector<Complex> prev(y.size() + 1, Complex(0));
  std::vector<Complex> cur = y;
  Complex best = y.back();
  for (int k = 0; cur.size() >= 2; ++k) {
    std::vector<Complex> next;
    bool degenerate = false;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const Complex d = cur[i + 1] - cur[i];
      if (abs(d) <= floor) {
        degenerate = true;
        break;
      }
      next.push_back(prev[i + 1] + Complex(k + 1) / d);
    }
    if (degenerate) {
      if (k % 2 == 0) best = cur.back();
      break;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if ((k + 1) % 2 == 0) best = cur.back();
  }
  return best;
}

inline ClassResult class_limit(const std::vector<Complex>& x, const Real& tol, int window) {
  ClassResult r;
  const long L = static_cast<long>(x.size());
  const long start = L / 2;
  const long ndiff = L - start - 1;
  if (ndiff < window) {
    r.reason = "too few terms in class (" + std::to_string(L) + ")";
    r.more_terms = 2 * (window + 1) - L + 2;
    return r;
  }
  Real scale = 0;
  for (long i = start; i < L; ++i) scale = std::max(scale, abs(x[static_cast<std::size_t>(i)]));
  const Real floor = noise_floor(scale);
  std::vector<Real> d;
  for (long i = start; i + 1 < L; ++i) d.push_back(abs(x[static_cast<std::size_t>(i + 1)] - x[static_cast<std::size_t>(i)]));
  const std::size_t q = d.size() / 4;
  std::vector<Real> M;
  for (int b = 0; b < 4; ++b) {
    auto lo = d.begin() + static_cast<std::ptrdiff_t>(b * q);
    auto hi = b == 3 ? d.end() : lo + static_cast<std::ptrdiff_t>(q);
    M.push_back(std::max(*std::max_element(lo, hi), floor));
  }
  for (int b = 1; b < 4; ++b)
    if (M[static_cast<std::size_t>(b)] > M[static_cast<std::size_t>(b - 1)]) {
      r.reason = "class sequence is not Cauchy over the tail";
      return r;
    }
  const Real rho_block = M[3] <= floor || M[2] <= floor ? Real(0) : M[3] / M[2];
  const Real rho = rho_block > 0 ? pow(rho_block, Real(1) / static_cast<long>(q)) : Real(0);
  if (M[3] < tol) {
    r.ok = true;
    r.mode = "geometric";
    r.limit = x.back();
    // Aitken step on the last three terms
    const Complex d1 = x[static_cast<std::size_t>(L - 1)] - x[static_cast<std::size_t>(L - 2)];
    const Complex d0 = x[static_cast<std::size_t>(L - 2)] - x[static_cast<std::size_t>(L - 3)];
    const Complex dd = d1 - d0;
    if (abs(d1) > floor && abs(dd) > floor && rho > 0 && rho < 1) r.limit = r.limit - d1 * d1 / dd;
    r.error = (rho > 0 && rho < 1) ? M[3] * rho / (1 - rho) + floor : (M[3] <= floor ? floor : M[3] * static_cast<long>(q));
    return r;
  }
  // algebraic convergence: Wynn rho on the last terms, compared across shifted windows
  const long K = std::min<long>(6, (ndiff - 3) / 2);
  if (K >= 1) {
    const long n = 2 * K + 1;
    std::vector<Complex> est;
    for (long shift = 0; shift < 3; ++shift) {
      const long end = L - shift;
      std::vector<Complex> w(x.begin() + (end - n), x.begin() + end);
      est.push_back(wynn_rho(w, floor));
    }
    const Real err = std::max(abs(est[0] - est[1]), abs(est[0] - est[2]));
    if (err < tol) {
      r.ok = true;
      r.mode = "algebraic";
      r.limit = est[0];
      r.error = err + floor;
      return r;
    }
  }
  r.reason = "class sequence converges too slowly for the tolerance";
  if (rho > 0 && rho < Real("0.999")) {
    const Real steps = log(tol / M[3]) / log(rho);
    r.more_terms = static_cast<long>(steps.convert_to<double>()) + 1;
  } else {
    r.more_terms = L;
  }
  return r;
}

inline std::optional<Gaussian> reconstruct(const Complex& z, const Real& err) {
  const Real bound = std::max(err * 4, pow(Real(2), -static_cast<int>(working_precision_bits()) + 24));
  if (err >= Real("1e-20")) return std::nullopt;
  const Integer max_den(1000000);
  auto part = [&](const Real& v) -> std::optional<Rational> {
    if (abs(v) <= bound) return Rational(0);
    return rationalize(v, bound, max_den);
  };
  auto re = part(z.re), im = part(z.im);
  if (!re || !im) return std::nullopt;
  return Gaussian(*re, *im);
}

}  // namespace detail

/// Finds the least period h <= h_max for which every class-restricted ratio sequence
/// converges within the tolerance, then reduces it to the minimal period of the limits.
inline AccumulationReport detect_accumulation(const CoefficientStream& stream, const DetectionOptions& opt = {}) {
  AccumulationReport rep;
  rep.tolerance = opt.tolerance;
  rep.h_max = opt.h_max;
  long H = opt.horizon;
  if (stream.limit()) {
    if (*stream.limit() < H) rep.diagnostics.push_back("horizon capped at " + std::to_string(*stream.limit()) + " by input length");
    H = std::min(H, *stream.limit());
  }
  rep.horizon = H;
  const TamenessCertificate cert = certify_tameness(stream, H, opt.tameness);
  rep.N_P = cert.N_P;
  const auto g = stream.prefix(H);
  std::vector<Complex> ratio;
  for (long n = cert.N_P; n <= H; ++n)
    ratio.push_back(to_complex(g[static_cast<std::size_t>(n - 1)]) / to_complex(g[static_cast<std::size_t>(n)]));

  long need = 0;
  for (int h = 1; h <= opt.h_max; ++h) {
    std::vector<detail::ClassResult> res(static_cast<std::size_t>(h));
    std::vector<std::vector<Complex>> classes(static_cast<std::size_t>(h));
    for (long n = cert.N_P; n <= H; ++n) classes[static_cast<std::size_t>(n % h)].push_back(ratio[static_cast<std::size_t>(n - cert.N_P)]);
    PeriodTrial trial{h, true, ""};
    for (int e = 0; e < h && trial.passed; ++e) {
      res[static_cast<std::size_t>(e)] = detail::class_limit(classes[static_cast<std::size_t>(e)], opt.tolerance, opt.window);
      const auto& cr = res[static_cast<std::size_t>(e)];
      if (!cr.ok) {
        trial.passed = false;
        trial.reason = "class " + std::to_string(e) + ": " + cr.reason;
        need = std::max(need, cr.more_terms * h);
      } else if (abs(cr.limit) <= opt.tolerance) {
        trial.passed = false;
        trial.reason = "class " + std::to_string(e) + ": limit is zero";
      }
    }
    rep.trials.push_back(trial);
    if (!trial.passed) continue;

    rep.first_passing_h = h;
    // minimal period of the tuple of limits
    int p = h;
    for (int d = 1; d < h; ++d) {
      if (h % d) continue;
      bool same = true;
      for (int e = 0; e + d < h && same; ++e) {
        const auto& a = res[static_cast<std::size_t>(e)];
        const auto& b = res[static_cast<std::size_t>(e + d)];
        same = abs(a.limit - b.limit) <= a.error + b.error + opt.tolerance;
      }
      if (same) {
        p = d;
        break;
      }
    }
    if (p < h)
      rep.diagnostics.push_back("limits at h=" + std::to_string(h) + " repeat with period " + std::to_string(p));
    rep.h_P = p;
    for (int e = 0; e < p; ++e) {
      ClassLimit cl;
      cl.e = e;
      cl.value = res[static_cast<std::size_t>(e)].limit;
      cl.error = res[static_cast<std::size_t>(e)].error;
      cl.mode = res[static_cast<std::size_t>(e)].mode;
      for (int f = e; f < h; f += p) {
        cl.error = std::max(cl.error, res[static_cast<std::size_t>(f)].error);
        if (res[static_cast<std::size_t>(f)].mode == "algebraic") cl.mode = "algebraic";
      }
      cl.terms = static_cast<long>(classes[static_cast<std::size_t>(e)].size());
      cl.reconstructed = detail::reconstruct(cl.value, cl.error);
      rep.initials.push_back(std::move(cl));
    }
    rep.verdict = "finite-rational";
    break;
  }

  if (!rep.finite_rational()) {
    rep.suggested_horizon = std::max(2 * H, H + need);
    rep.diagnostics.push_back("no period h <= " + std::to_string(opt.h_max) + " passed; horizon " + std::to_string(H) +
                              " may be too small (suggested " + std::to_string(*rep.suggested_horizon) + ")");
    return rep;
  }
  rep.A = Complex(1);
  Real rel = 0;
  for (const auto& c : rep.initials) {
    rep.A *= c.value;
    rel += c.error / abs(c.value);
  }
  rep.A_error = abs(rep.A) * rel;
  if (rep.exact()) {
    Gaussian a(1);
    for (const auto& c : rep.initials) a *= *c.reconstructed;
    rep.A_exact = a;
  }
  return rep;
}

/// Omega_1(P): distinct initials, and whether the projection from classes is non-injective.
struct Omega1Summary {
  std::vector<Complex> values;
  std::vector<std::optional<Gaussian>> exact;
  std::vector<int> multiplicity;
  bool non_injective = false;
};

inline Omega1Summary omega1_summary(const AccumulationReport& rep) {
  if (!rep.finite_rational()) throw Error(ErrorCode::inconclusive, "no finite rational accumulation");
  Omega1Summary s;
  for (const auto& c : rep.initials) {
    bool found = false;
    for (std::size_t i = 0; i < s.values.size() && !found; ++i) {
      const bool same = (c.reconstructed && s.exact[i]) ? *c.reconstructed == *s.exact[i]
                                                        : abs(c.value - s.values[i]) <= 2 * c.error + rep.tolerance;
      if (same) {
        ++s.multiplicity[i];
        found = true;
      }
    }
    if (!found) {
      s.values.push_back(c.value);
      s.exact.push_back(c.reconstructed);
      s.multiplicity.push_back(1);
    }
  }
  s.non_injective = static_cast<int>(s.values.size()) < rep.h_P;
  return s;
}

/// a^[e](s) = A^[e](s) / (1 - A s^h)
struct OppositeSeriesForm {
  int e = 0;
  int h = 1;
  Poly<Complex> numerator;
  Complex A;
  std::optional<QPoly> numerator_exact;
  std::optional<Rational> A_exact;

  /// a_k^[e] = A^m a_j^[e] for k = m h + j
  Complex coefficient(long k) const { return numerator.coeff(static_cast<int>(k % h)) * pow(A, k / h); }
  /// |A|^(-1/h)
  Real radius() const { return pow(abs(A), Real(-1) / h); }
};

inline OppositeSeriesForm opposite_rational_form(const AccumulationReport& rep, int e) {
  if (!rep.finite_rational()) throw Error(ErrorCode::inconclusive, "no finite rational accumulation");
  OppositeSeriesForm f;
  f.h = rep.h_P;
  f.e = cyc(e, f.h);
  f.A = rep.A;
  f.numerator = numerators(rep.initial_values())[static_cast<std::size_t>(f.e)];
  if (auto ex = rep.exact_real_initials()) {
    f.numerator_exact = numerators(*ex)[static_cast<std::size_t>(f.e)];
    f.A_exact = period_product(*ex);
  }
  return f;
}

struct TauResult {
  OppositeSeriesForm form;  // class e - 1
  Real residual;            // distance to the stored class e - 1 numerator
  bool exact_match = false;
};

namespace detail {

/// (A^[e] - 1 + A s^h) / (iota s)
template <typename F>
std::optional<Poly<F>> tau_numerator(const Poly<F>& num, const F& A, int h, const F& iota) {
  const Poly<F> shifted = num - Poly<F>::one_minus(A, h);
  if (!coeff_zero(shifted.coeff(0))) return std::nullopt;
  std::vector<F> c;
  for (int j = 1; j <= shifted.degree(); ++j) c.push_back(shifted.coeff(j) / iota);
  return Poly<F>(std::move(c));
}

}  // namespace detail

/// tau(a) = (a - 1)/(a1 s) on the class-e form; the result should be the class e-1 form.
inline TauResult tau_omega(const OppositeSeriesForm& f, const AccumulationReport& rep) {
  const Complex iota = f.h == 1 ? f.A : f.numerator.coeff(1);
  if (is_zero(iota)) throw Error(ErrorCode::zero_coefficient, "zero initial");
  TauResult out;
  out.form = opposite_rational_form(rep, f.e - 1);
  const Poly<Complex> shifted = f.numerator - Poly<Complex>::one_minus(f.A, f.h);
  std::vector<Complex> c;
  for (int j = 1; j <= shifted.degree(); ++j) c.push_back(shifted.coeff(j) / iota);
  out.residual = max_coeff_distance(Poly<Complex>(std::move(c)), out.form.numerator) + abs(shifted.coeff(0));
  if (f.numerator_exact && out.form.numerator_exact && f.A_exact) {
    const Rational ia = f.h == 1 ? *f.A_exact : f.numerator_exact->coeff(1);
    const auto got = detail::tau_numerator(*f.numerator_exact, *f.A_exact, f.h, ia);
    out.exact_match = got && *got == *out.form.numerator_exact;
  }
  return out;
}

/// CSV rows n,class,ratio_re,ratio_im of the ratio sequence, classes mod h.
inline void write_ratio_csv(std::ostream& out, const CoefficientStream& stream, long horizon, long from, int h) {
  const auto g = stream.prefix(horizon);
  out << "n,class,ratio_re,ratio_im\n";
  for (long n = std::max(from, 1L); n <= horizon; ++n) {
    const Gaussian& gn = g[static_cast<std::size_t>(n)];
    if (is_zero(gn)) continue;
    const Complex r = to_complex(g[static_cast<std::size_t>(n - 1)]) / to_complex(gn);
    out << n << ',' << (n % std::max(h, 1)) << ',' << to_string(r.re, 30) << ',' << to_string(r.im, 30) << '\n';
  }
}

}  // namespace tsl

#endif  // TSL_OPPOSITE_SPACE_HPP
