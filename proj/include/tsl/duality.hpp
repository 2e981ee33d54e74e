#ifndef TSL_DUALITY_HPP
#define TSL_DUALITY_HPP

#include <algorithm>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "tsl/errors.hpp"
#include "tsl/matrix.hpp"
#include "tsl/opposite_algebra.hpp"
#include "tsl/opposite_space.hpp"
#include "tsl/pole_analysis.hpp"
#include "tsl/rational_operators.hpp"
#include "tsl/sequence.hpp"

namespace tsl {

struct TransitionMatrix {
  std::string side;  // series | pole
  std::vector<Complex> x;
  Matrix<Complex> entries;  // rows e, columns x
  Real error;               // entrywise error estimate
  int numeric_rank = 0;
};

struct SeriesSide {
  AccumulationReport detection;
  int h = 0;
  Complex A;
  std::optional<Rational> A_exact;
  Poly<Complex> delta_op;
  std::optional<QPoly> delta_op_exact;
  std::optional<QPoly> delta_exact;  // gcd of the numerators with 1 - A s^h
  int d_P = 0;
  ResidueMatrix residues;
  TransitionMatrix matrix;
};

struct PoleSide {
  PoleSet poles;
  PolarData polar;
  int h = 0;  // least h with all top poles sharing x^h; 0 if none <= h_max
  Complex A;  // x^h
  int d_P = 0;
  std::vector<SectionedRational> sections;
  TransitionMatrix matrix;
};

struct DualityCheck {
  std::string name;
  bool passed = false;
  bool skipped = false;
  Real residual;
  std::string detail;
};

struct DualityOptions {
  DetectionOptions detection;
  Real tolerance = Real("1e-20");
  bool strict = false;
  unsigned precision_bits = 0;  // 0: current working precision
};

struct DualityReport {
  std::string verdict = "inconclusive";  // pass | fail | series-only | pole-only | inconclusive
  unsigned precision_bits = 0;
  std::optional<SeriesSide> series;
  std::optional<PoleSide> pole;
  std::vector<DualityCheck> checks;
  std::vector<std::string> diagnostics;
  Real reversal_residual = -1;
  Real matrix_distance = -1;
  std::optional<Complex> series_determinant, pole_determinant;

  bool passed() const { return verdict == "pass"; }
  const DualityCheck* check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

inline Real entry_scale(const Matrix<Complex>& m) {
  Real s = 1;
  for (const auto& row : m)
    for (const auto& v : row) s = std::max(s, abs(v));
  return s;
}

/// Leading Laurent coefficient of f at x, where f must have a pole of order exactly d.
inline Complex leading_coefficient(const RationalFunction& f, const Complex& x, int d) {
  const auto dc = taylor_shift(to_complex_poly(f.den), x);
  const auto nc = taylor_shift(to_complex_poly(f.num), x);
  Real scale = 0;
  for (const auto& c : dc) scale = std::max(scale, abs(c));
  const Real tol = scale * pow(Real(2), -static_cast<int>(working_precision_bits()) / 2);
  for (int j = 0; j < d; ++j)
    if (j >= static_cast<int>(dc.size()) || abs(dc[static_cast<std::size_t>(j)]) > tol)
      throw Error(ErrorCode::order_mismatch, "pole order below " + std::to_string(d) + " at a top pole");
  if (static_cast<int>(dc.size()) <= d || abs(dc[static_cast<std::size_t>(d)]) <= tol)
    throw Error(ErrorCode::order_mismatch, "pole order above " + std::to_string(d) + " at a top pole");
  if (nc.empty() || abs(nc[0]) <= tol * (1 + abs(nc[0])))
    throw Error(ErrorCode::order_mismatch, "numerator vanishes at a top pole");
  return nc[0] / dc[static_cast<std::size_t>(d)];
}

inline int pole_period(const std::vector<Complex>& top, int h_max, const Real& tol) {
  if (top.empty()) return 0;
  for (int h = 1; h <= h_max; ++h) {
    const Complex a = pow(top[0], h);
    bool ok = true;
    for (const auto& x : top) ok = ok && abs(pow(x, h) - a) <= tol * (1 + abs(a));
    if (ok) return h;
  }
  return 0;
}

/// Column permutation of b matching the nodes of a; empty when the node sets differ.
inline std::vector<std::size_t> match_nodes(const std::vector<Complex>& a, const std::vector<Complex>& b, const Real& tol) {
  if (a.size() != b.size()) return {};
  std::vector<std::size_t> perm;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    std::size_t best = b.size();
    Real dist = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const Real d = abs(x - b[j]);
      if (best == b.size() || d < dist) {
        best = j;
        dist = d;
      }
    }
    if (best == b.size() || dist > tol * (1 + abs(x))) return {};
    used[best] = true;
    perm.push_back(best);
  }
  return perm;
}

/// Leading square block of a transition matrix (first d_P rows).
inline Complex leading_determinant(const Matrix<Complex>& m) {
  if (m.empty() || m[0].empty() || m.size() < m[0].size()) return Complex(0);
  Matrix<Complex> sq(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(m[0].size()));
  return determinant(sq);
}

/// Rational polynomial with coefficients within bound of p, when p is real.
inline std::optional<QPoly> exactify(const Poly<Complex>& p, const Real& bound) {
  std::vector<Rational> c;
  for (const auto& z : p.coeffs()) {
    if (abs(z.im) > bound) return std::nullopt;
    if (abs(z.re) <= bound) {
      c.push_back(Rational(0));
      continue;
    }
    auto q = rationalize(z.re, bound, Integer(1000000000));
    if (!q) return std::nullopt;
    c.push_back(*q);
  }
  return QPoly(std::move(c));
}

inline SeriesSide series_side(const CoefficientStream& stream, const DetectionOptions& opt) {
  SeriesSide s;
  s.detection = detect_accumulation(stream, opt);
  if (!s.detection.finite_rational()) return s;
  s.h = s.detection.h_P;
  s.A = s.detection.A;
  const auto values = s.detection.initial_values();
  std::vector<Poly<Complex>> nums;
  if (auto ex = s.detection.exact_real_initials()) {
    const auto pair = denominator_pair(*ex);
    s.delta_op_exact = pair.delta_op;
    s.delta_exact = pair.delta;
    s.A_exact = period_product(*ex);
    for (const auto& p : numerators(*ex)) nums.push_back(to_complex_poly(p));
  } else {
    nums = numerators(values);
  }
  Real err = 0;
  for (const auto& c : s.detection.initials) err = std::max(err, c.error);
  const Real tol = std::max(err * 1000, pow(Real(2), -static_cast<int>(working_precision_bits()) / 2));
  s.residues = residue_matrix(nums, s.A, tol);
  s.delta_op = s.residues.delta_op;
  s.d_P = s.delta_op.degree();
  s.matrix.side = "series";
  s.matrix.x = s.residues.x;
  for (const auto& row : s.residues.mu) {
    std::vector<Complex> r;
    for (const auto& m : row) r.push_back(m * Complex(s.h));
    s.matrix.entries.push_back(std::move(r));
  }
  s.matrix.error = err * static_cast<long>(s.h) * entry_scale(s.matrix.entries);
  s.matrix.numeric_rank = numeric_rank(s.matrix.entries, Real("1e-20"));
  return s;
}

inline PoleSide pole_side(const RationalFunction& rep, int h_hint, int h_max) {
  PoleSide p;
  p.poles = boundary_poles(rep);
  p.polar = polar_polynomials(rep, p.poles);
  p.d_P = p.polar.delta_top.degree();
  const Real tol = pow(Real(2), -static_cast<int>(working_precision_bits()) / 2);
  p.h = pole_period(p.polar.top_poles, h_max, tol);
  const int h = h_hint > 0 ? h_hint : p.h;
  p.A = p.h > 0 ? pow(p.polar.top_poles[0], p.h) : Complex(0);
  p.matrix.side = "pole";
  p.matrix.x = p.polar.top_poles;
  if (h <= 0) return p;
  p.sections = all_sections(rep, h);
  std::vector<Complex> lead;
  for (const auto& x : p.polar.top_poles) lead.push_back(leading_coefficient(rep, x, p.poles.d_m));
  for (const auto& sec : p.sections) {
    std::vector<Complex> row;
    if (sec.result.num.is_zero()) throw Error(ErrorCode::order_mismatch, "section " + std::to_string(sec.e) + " vanishes");
    for (std::size_t i = 0; i < lead.size(); ++i)
      row.push_back(lead[i] / leading_coefficient(sec.result, p.polar.top_poles[i], p.poles.d_m));
    p.matrix.entries.push_back(std::move(row));
  }
  p.matrix.error = tol * entry_scale(p.matrix.entries);
  p.matrix.numeric_rank = numeric_rank(p.matrix.entries, Real("1e-20"));
  return p;
}

inline void run_checks(DualityReport& r, const Real& tol) {
  const SeriesSide& s = *r.series;
  const PoleSide& p = *r.pole;
  auto add = [&](std::string name, bool ok, Real res, std::string detail = "") {
    r.checks.push_back({std::move(name), ok, false, std::move(res), std::move(detail)});
  };
  auto skip = [&](std::string name, std::string detail) {
    r.checks.push_back({std::move(name), false, true, Real(0), std::move(detail)});
  };

  add("period", s.h == p.h, Real(std::abs(s.h - p.h)),
      "series h_P=" + std::to_string(s.h) + ", pole h=" + std::to_string(p.h));
  const Real a_res = abs(s.A - p.A);
  add("period_product", a_res < tol, a_res);
  add("degree", s.d_P == p.d_P, Real(std::abs(s.d_P - p.d_P)),
      "deg Delta^op=" + std::to_string(s.d_P) + ", deg Delta^top=" + std::to_string(p.d_P));

  if (s.d_P == p.d_P) {
    r.reversal_residual = max_coeff_distance(s.delta_op.reversed(s.d_P), p.polar.delta_top);
    add("reversal", r.reversal_residual < tol, r.reversal_residual);
  } else {
    r.reversal_residual = Real(1);
    add("reversal", false, r.reversal_residual, "degrees differ");
  }

  const auto perm = match_nodes(s.matrix.x, p.matrix.x, Real("1e-20"));
  if (perm.empty() || p.matrix.entries.size() != s.matrix.entries.size()) {
    r.matrix_distance = Real(1);
    add("matrix", false, r.matrix_distance, "column nodes differ between sides");
  } else {
    Real d = 0;
    for (std::size_t e = 0; e < s.matrix.entries.size(); ++e)
      for (std::size_t i = 0; i < perm.size(); ++i)
        d = std::max(d, abs(s.matrix.entries[e][i] - p.matrix.entries[e][perm[i]]));
    r.matrix_distance = d;
    add("matrix", d < tol, d);
  }
  add("rank_series", s.matrix.numeric_rank == s.d_P, Real(0),
      "rank " + std::to_string(s.matrix.numeric_rank) + " vs d_P " + std::to_string(s.d_P));
  add("rank_pole", p.matrix.numeric_rank == p.d_P, Real(0),
      "rank " + std::to_string(p.matrix.numeric_rank) + " vs d_P " + std::to_string(p.d_P));
  if (s.residues.excluded.empty())
    skip("excluded_residues", "delta = 1, no excluded roots");
  else
    add("excluded_residues", s.residues.excluded_max < tol, s.residues.excluded_max,
        std::to_string(s.residues.excluded.size()) + " excluded roots");

  // ratio of sections at a top pole against products of initials
  if (p.sections.size() == static_cast<std::size_t>(s.h) && s.h > 1) {
    const auto a = s.detection.initial_values();
    Real worst = 0;
    for (const auto& x : p.polar.top_poles) {
      std::vector<Complex> lead;
      for (const auto& sec : p.sections) lead.push_back(leading_coefficient(sec.result, x, p.poles.d_m));
      for (int e = 0; e < s.h; ++e)
        for (int f = 0; f < s.h; ++f) {
          if (e == f) continue;
          Complex expect = pow(x, f - e);
          if (e < f)
            for (int j = e + 1; j <= f; ++j) expect /= a[static_cast<std::size_t>(j)];
          else
            for (int j = f + 1; j <= e; ++j) expect *= a[static_cast<std::size_t>(j)];
          const Complex got = lead[static_cast<std::size_t>(f)] / lead[static_cast<std::size_t>(e)];
          worst = std::max(worst, abs(got - expect) / (1 + abs(expect)));
        }
    }
    add("section_ratios", worst < tol, worst);
  } else {
    skip("section_ratios", "needs h_P > 1");
  }

  if (!perm.empty() && s.d_P > 0 && static_cast<int>(s.matrix.entries.size()) >= s.d_P) {
    Matrix<Complex> pm;
    for (const auto& row : p.matrix.entries) {
      std::vector<Complex> out;
      for (auto j : perm) out.push_back(row[j]);
      pm.push_back(std::move(out));
    }
    r.series_determinant = leading_determinant(s.matrix.entries);
    r.pole_determinant = leading_determinant(pm);
    const Real d = abs(*r.series_determinant - *r.pole_determinant);
    add("determinant", d < tol && abs(*r.series_determinant) > tol, d);
  }

  // exact containment both ways on exactified candidates
  const Real bound = std::max(tol, pow(Real(2), -static_cast<int>(working_precision_bits()) / 2));
  std::optional<QPoly> op = s.delta_op_exact;
  if (!op) op = exactify(s.delta_op, bound);
  std::optional<QPoly> top = p.polar.delta_top_exact;
  if (!top) top = exactify(p.polar.delta_top, bound);
  if (op && top && op->degree() >= 0) {
    const QPoly rev = op->reversed(op->degree());
    add("top_divides_reversed_op", divides(*top, rev), Real(0));
    add("reversed_op_divides_top", divides(rev, *top), Real(0));
  } else {
    skip("top_divides_reversed_op", "no exact candidate");
    skip("reversed_op_divides_top", "no exact candidate");
  }
}

inline DualityReport verify_once(const CoefficientStream& stream, const DualityOptions& opt) {
  DualityReport r;
  r.precision_bits = working_precision_bits();
  const auto rep = as_rational(stream.spec());
  const unsigned bits = r.precision_bits;

  auto series_task = std::async(std::launch::async, [&]() -> std::optional<SeriesSide> {
    PrecisionScope scope(bits);
    try {
      return series_side(stream, opt.detection);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::not_tame) throw;
      r.diagnostics.push_back(std::string("series side: ") + e.what());
      return std::nullopt;
    }
  });
  std::optional<PoleSide> pole;
  if (rep && rep->den.degree() >= 1) {
    for (unsigned b = bits;; b *= 2) {
      PrecisionScope scope(b);
      try {
        pole = pole_side(reduce(*rep), 0, opt.detection.h_max);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::order_mismatch || b * 2 > kPrecisionCapBits) {
          series_task.wait();
          throw;
        }
      }
    }
  } else if (rep) {
    r.diagnostics.push_back("pole side: input is a polynomial");
  } else {
    r.diagnostics.push_back("pole side: input has no rational form");
  }
  auto series = series_task.get();

  if (series && series->detection.finite_rational()) r.series = std::move(series);
  else if (series) {
    for (const auto& d : series->detection.diagnostics) r.diagnostics.push_back("series side: " + d);
  }
  if (pole) {
    // sections use the series period when both are available
    if (r.series && r.series->h != pole->h && r.series->h > 0) {
      PrecisionScope scope(bits);
      pole = pole_side(reduce(*rep), r.series->h, opt.detection.h_max);
    }
    r.pole = std::move(pole);
  }

  if (r.series && r.pole) {
    run_checks(r, opt.tolerance);
    bool ok = true;
    for (const auto& c : r.checks) ok = ok && (c.passed || c.skipped);
    r.verdict = ok ? "pass" : "fail";
  } else if (r.series) {
    r.verdict = "series-only";
  } else if (r.pole) {
    r.verdict = "pole-only";
  }
  return r;
}

}  // namespace detail

/// Series side: Delta^op and A^[e](1/x) from the detected accumulation. Pole side: Delta^top
/// and P/T^[e]P at the top poles. Reports both with the residual checks.
inline DualityReport verify_duality(const CoefficientStream& stream, const DualityOptions& opt = {}) {
  if (non_meromorphic(stream.spec())) throw Error(ErrorCode::non_meromorphic, "non-meromorphic input");
  const unsigned bits = opt.precision_bits ? opt.precision_bits : working_precision_bits();
  DualityReport r;
  {
    PrecisionScope scope(bits);
    r = detail::verify_once(stream, opt);
  }
  if (opt.strict && r.verdict == "pass") {
    PrecisionScope scope(std::min(2 * bits, kPrecisionCapBits));
    const DualityReport again = detail::verify_once(stream, opt);
    if (!again.passed()) {
      r.verdict = "fail";
      r.diagnostics.push_back("strict rerun at " + std::to_string(again.precision_bits) + " bits did not pass");
    } else {
      const Real drift = abs(again.reversal_residual - r.reversal_residual) + abs(again.matrix_distance - r.matrix_distance);
      r.checks.push_back({"strict_rerun", drift < opt.tolerance, false, drift,
                          "rerun at " + std::to_string(again.precision_bits) + " bits"});
      if (drift >= opt.tolerance) r.verdict = "fail";
    }
  }
  return r;
}

inline DualityReport verify_duality(const RationalFunction& rep, const DualityOptions& opt = {}) {
  return verify_duality(CoefficientStream(SeriesSpec::rational(rep)), opt);
}

}  // namespace tsl

#endif  // TSL_DUALITY_HPP
