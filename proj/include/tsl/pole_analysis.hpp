#ifndef TSL_POLE_ANALYSIS_HPP
#define TSL_POLE_ANALYSIS_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsl/errors.hpp"
#include "tsl/poly.hpp"
#include "tsl/rational_function.hpp"
#include "tsl/scalar.hpp"

namespace tsl {

inline constexpr unsigned kPrecisionCapBits = 1024;

/// Approximate root with an inclusion disc guaranteed to contain exactly one root.
struct IsolatedRoot {
  Complex center;
  Real radius;
};

/// Simultaneous Aberth-Ehrlich iteration followed by Weierstrass inclusion discs.
/// The input must be square-free; throws root_isolation when discs fail to separate.
inline std::vector<IsolatedRoot> isolate_roots(const Poly<Complex>& p, int max_iter = 400) {
  const int n = p.degree();
  std::vector<IsolatedRoot> out;
  if (n < 1) return out;
  const Complex& lead = p.leading();
  const unsigned bits = working_precision_bits();
  const Real eps = pow(Real(2), -static_cast<int>(bits) + 12);
  if (n == 1) {
    Complex z = -p.coeff(0) / lead;
    out.push_back({z, eps * (abs(z) + 1)});
    return out;
  }
  const Real scale = pow(abs(p.coeff(0) / lead), Real(1) / n);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) z[static_cast<std::size_t>(j)] = polar(scale, 2 * pi() * j / n + Real(0.4));
  const Poly<Complex> dp = p.derivative();
  auto converged = [&] {
    for (int j = 0; j < n; ++j) {
      const Complex& zj = z[static_cast<std::size_t>(j)];
      Complex prod = lead;
      for (int k = 0; k < n; ++k)
        if (k != j) prod *= zj - z[static_cast<std::size_t>(k)];
      if (is_zero(prod)) return false;
    }
    return true;
  };
  for (int it = 0; it < max_iter; ++it) {
    Real worst = 0;
    for (int j = 0; j < n; ++j) {
      Complex& zj = z[static_cast<std::size_t>(j)];
      const Complex pz = p.eval(zj);
      if (is_zero(pz)) continue;
      const Complex ratio = pz / dp.eval(zj);
      Complex sum(0);
      for (int k = 0; k < n; ++k)
        if (k != j) sum += Complex(1) / (zj - z[static_cast<std::size_t>(k)]);
      const Complex w = ratio / (Complex(1) - ratio * sum);
      zj -= w;
      const Real rel = abs(w) / (abs(zj) + 1);
      if (rel > worst) worst = rel;
    }
    if (worst < eps && converged()) break;
  }
  Real coef_abs_sum = 0;
  for (const auto& c : p.coeffs()) coef_abs_sum += abs(c);
  for (int j = 0; j < n; ++j) {
    const Complex& zj = z[static_cast<std::size_t>(j)];
    Complex prod = lead;
    for (int k = 0; k < n; ++k)
      if (k != j) prod *= zj - z[static_cast<std::size_t>(k)];
    const Real mz = abs(zj);
    const Real eval_err = eps * n * coef_abs_sum * pow(std::max(mz, Real(1)), n);
    const Real rad = n * (abs(p.eval(zj)) + eval_err) / abs(prod);
    out.push_back({zj, rad + eps * (mz + 1)});
  }
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      if (abs(out[a].center - out[b].center) <= out[a].radius + out[b].radius)
        throw Error(ErrorCode::root_isolation, "inclusion discs overlap at " + std::to_string(bits) + " bits");
  return out;
}

/// |x|^power == value, exactly.
struct ModulusPower {
  int power = 1;
  Rational value;
};

/// Exact piece of a square-free factor of the denominator: g(t^k) with multiplicity.
struct PolePiece {
  QPoly g;
  int k = 1;
  int multiplicity = 1;
  std::optional<ModulusPower> modulus;
  QPoly in_t() const { return g.power_substituted(k); }
};

struct Pole {
  Complex center;
  Real radius;
  int multiplicity = 1;
  Real modulus_lo, modulus_hi;
  std::size_t piece = 0;
  int key = 0;  // equal keys have provably equal modulus
  bool boundary = false;
};

struct PoleSet {
  std::vector<Pole> poles;
  std::vector<PolePiece> pieces;
  Real r;        // minimal pole modulus
  Real r_error;  // enclosure half-width
  std::optional<ModulusPower> r_exact;
  int d_m = 0;
  unsigned precision_bits = 0;

  std::vector<const Pole*> boundary() const {
    std::vector<const Pole*> out;
    for (const auto& p : poles)
      if (p.boundary) out.push_back(&p);
    return out;
  }
};

namespace detail {

inline int power_structure(const QPoly& f) {
  int k = 0;
  for (int i = 1; i <= f.degree(); ++i)
    if (f.coeffs()[static_cast<std::size_t>(i)] != 0) k = std::gcd(k, i);
  return std::max(k, 1);
}

inline QPoly compress_power(const QPoly& f, int k) {
  std::vector<Rational> c;
  for (int i = 0; i <= f.degree(); i += k) c.push_back(f.coeffs()[static_cast<std::size_t>(i)]);
  return QPoly(std::move(c));
}

/// Factor of g whose roots satisfy conj(x) = c/x for a rational c, so |x|^2 = c exactly.
/// Candidates come from gcd(g, t^d g(c/t)); the pairing is confirmed root by root against
/// the separation of the inclusion discs.
inline std::optional<std::pair<QPoly, std::optional<ModulusPower>>> reciprocal_piece(
    const QPoly& g, const std::vector<IsolatedRoot>& roots, const Real& bound, const Integer& max_den) {
  const int d = g.degree();
  for (const auto& root : roots) {
    const Real m2 = norm(root.center);
    auto c = rationalize(m2, bound * (m2 + 1), max_den);
    if (!c || *c <= 0) continue;
    std::vector<Rational> rc(static_cast<std::size_t>(d) + 1);
    Rational cp(1);
    for (int i = 0; i <= d; ++i, cp *= *c) rc[static_cast<std::size_t>(d - i)] = g.coeff(i) * cp;
    const QPoly piece = gcd(g, QPoly(std::move(rc)));
    if (piece.degree() < 1) continue;
    const auto pr = isolate_roots(to_complex_poly(piece));
    Real sep = -1;
    for (std::size_t a = 0; a < pr.size(); ++a)
      for (std::size_t b = a + 1; b < pr.size(); ++b) {
        const Real s = abs(pr[a].center - pr[b].center) - pr[a].radius - pr[b].radius;
        if (sep < 0 || s < sep) sep = s;
      }
    bool paired = true;
    for (const auto& y : pr) {
      const Real my = abs(y.center);
      if (my <= y.radius) {
        paired = false;
        break;
      }
      const Real slack = y.radius * (1 + Real(*c) / ((my - y.radius) * (my - y.radius)));
      const Real gap = abs(Complex(Real(*c)) / y.center - conj(y.center)) + slack;
      if (pr.size() > 1 ? gap * 2 >= sep : gap > bound) {
        paired = false;
        break;
      }
    }
    if (paired) return std::make_pair(piece, std::optional<ModulusPower>(ModulusPower{2, *c}));
  }
  return std::nullopt;
}

/// Splits g (a polynomial in u) into pieces whose roots lie on a circle |u|^j = |c| with c rational,
/// plus one remaining piece without that structure.
inline std::vector<std::pair<QPoly, std::optional<ModulusPower>>> split_circles(QPoly g) {
  std::vector<std::pair<QPoly, std::optional<ModulusPower>>> out;
  const Real bound = pow(Real(2), -static_cast<int>(working_precision_bits()) / 2);
  const Integer max_den = Integer(1000000000000LL);
  bool progress = true;
  while (progress && g.degree() >= 1) {
    progress = false;
    const auto roots = isolate_roots(to_complex_poly(g));
    // x^j can be rational for j above deg g (b times a primitive 6th root has j = 3)
    const int j_max = std::max(24, 2 * g.degree());
    for (const auto& root : roots) {
      Complex pw(1);
      for (int j = 1; j <= j_max && !progress; ++j) {
        pw *= root.center;
        if (abs(pw.im) > bound * (abs(pw) + 1)) continue;
        auto c = rationalize(pw.re, bound * (abs(pw.re) + 1), max_den);
        if (!c || *c == 0) continue;
        QPoly circle = QPoly::constant(-*c) + QPoly::monomial(j, Rational(1));
        QPoly piece = gcd(g, circle);
        if (piece.degree() < 1) continue;
        out.push_back({piece, ModulusPower{j, abs(*c)}});
        g = exact_quotient(g, piece);
        progress = true;
      }
      if (progress) break;
    }
    if (!progress) {
      if (auto piece = reciprocal_piece(g, roots, bound, max_den)) {
        out.push_back(*piece);
        g = exact_quotient(g, piece->first);
        progress = g.degree() >= 1;
      }
    }
  }
  if (g.degree() >= 1) out.push_back({normalize_gcd(g), std::nullopt});
  return out;
}

inline int compare_exact(const ModulusPower& a, const ModulusPower& b) {
  // compare a.value^(1/a.power) with b.value^(1/b.power)
  const Rational lhs = ipow(a.value, b.power);
  const Rational rhs = ipow(b.value, a.power);
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

inline PoleSet locate_poles(const RationalFunction& rep) {
  PoleSet ps;
  ps.precision_bits = working_precision_bits();
  int next_key = 0;
  for (const auto& [f, mult] : square_free_decomposition(rep.den)) {
    const int k = power_structure(f);
    for (auto& [g, mod] : split_circles(compress_power(f, k))) {
      PolePiece piece{g, k, mult, std::nullopt};
      if (mod) piece.modulus = ModulusPower{mod->power * k, mod->value};
      const std::size_t piece_id = ps.pieces.size();
      const auto uroots = isolate_roots(to_complex_poly(g));
      std::vector<int> ukey(uroots.size(), -1);
      for (std::size_t a = 0; a < uroots.size(); ++a) {
        if (ukey[a] >= 0) continue;
        ukey[a] = piece.modulus ? (a == 0 ? next_key : ukey[0]) : next_key;
        if (!piece.modulus || a == 0) ++next_key;
        // a conjugate root of a real polynomial shares the modulus
        const Complex cj = conj(uroots[a].center);
        for (std::size_t b = a + 1; b < uroots.size(); ++b)
          if (ukey[b] < 0 && abs(uroots[b].center - cj) <= uroots[a].radius + uroots[b].radius) ukey[b] = ukey[a];
      }
      for (std::size_t a = 0; a < uroots.size(); ++a) {
        const Complex& u = uroots[a].center;
        const Real mu = abs(u);
        const Real mt = pow(mu, Real(1) / k);
        // disc radius for the k-th roots: |dt| <= |du| / (k |t|^(k-1)), doubled for safety
        const Real rt = 2 * uroots[a].radius / (k * pow(mt, k - 1)) + pow(Real(2), -static_cast<int>(ps.precision_bits) + 12);
        const Real base = arg(u);
        for (int l = 0; l < k; ++l) {
          Pole p;
          p.center = polar(mt, (base + 2 * pi() * l) / k);
          p.radius = rt;
          p.multiplicity = mult;
          p.modulus_lo = mt - rt;
          p.modulus_hi = mt + rt;
          p.piece = piece_id;
          p.key = ukey[a];
          ps.poles.push_back(std::move(p));
        }
      }
      ps.pieces.push_back(std::move(piece));
    }
  }
  return ps;
}

enum class Cmp { less, equal, greater, unknown };

inline Cmp compare_modulus(const PoleSet& ps, const Pole& a, const Pole& b) {
  if (a.key == b.key) return Cmp::equal;
  const auto& ma = ps.pieces[a.piece].modulus;
  const auto& mb = ps.pieces[b.piece].modulus;
  if (ma && mb) {
    const int c = compare_exact(*ma, *mb);
    return c < 0 ? Cmp::less : (c > 0 ? Cmp::greater : Cmp::equal);
  }
  if (a.modulus_hi < b.modulus_lo) return Cmp::less;
  if (a.modulus_lo > b.modulus_hi) return Cmp::greater;
  return Cmp::unknown;
}

/// Marks boundary poles; returns indices of undecided poles (empty when decided).
inline std::vector<std::size_t> decide_boundary(PoleSet& ps) {
  std::size_t m0 = 0;
  for (std::size_t i = 1; i < ps.poles.size(); ++i)
    if (abs(ps.poles[i].center) < abs(ps.poles[m0].center)) m0 = i;
  std::vector<std::size_t> undecided;
  for (std::size_t i = 0; i < ps.poles.size(); ++i) {
    const Cmp c = compare_modulus(ps, ps.poles[i], ps.poles[m0]);
    if (c == Cmp::equal) ps.poles[i].boundary = true;
    else if (c == Cmp::greater) ps.poles[i].boundary = false;
    else undecided.push_back(i);
  }
  if (!undecided.empty()) return undecided;
  const Pole& p0 = ps.poles[m0];
  ps.r = abs(p0.center);
  ps.r_error = p0.radius;
  ps.r_exact = ps.pieces[p0.piece].modulus;
  ps.d_m = 0;
  for (const auto& p : ps.poles)
    if (p.boundary) ps.d_m = std::max(ps.d_m, p.multiplicity);
  return undecided;
}

}  // namespace detail

/// Locates all poles and decides which lie on the circle of convergence, doubling
/// the working precision until decided or the cap is reached.
inline PoleSet boundary_poles(const RationalFunction& input, unsigned precision_bits = 0,
                              unsigned cap_bits = kPrecisionCapBits) {
  const RationalFunction rep = input.reduced ? input : reduce(input);
  if (rep.den.degree() < 1) throw Error(ErrorCode::invalid_input, "rational function has no poles");
  unsigned bits = std::max(precision_bits, working_precision_bits());
  for (;;) {
    PrecisionScope scope(bits);
    std::vector<std::size_t> undecided;
    try {
      PoleSet ps = detail::locate_poles(rep);
      undecided = detail::decide_boundary(ps);
      if (undecided.empty()) return ps;
      if (bits * 2 > cap_bits) {
        std::string list;
        for (auto i : undecided) list += " " + to_string(ps.poles[i].center.re, 12) + (ps.poles[i].center.im < 0 ? "" : "+") + to_string(ps.poles[i].center.im, 12) + "i";
        throw Error(ErrorCode::undecidable_boundary, "boundary membership undecided at " + std::to_string(bits) + " bits for roots" + list);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::root_isolation || bits * 2 > cap_bits) throw;
    }
    bits *= 2;
  }
}

/// Polar part data on the convergence circle.
struct PolarData {
  Poly<Complex> delta_p;
  Poly<Complex> delta_top;
  std::optional<QPoly> delta_p_exact;
  std::optional<QPoly> delta_top_exact;
  std::vector<Complex> top_poles;  // sorted by argument in [0, 2pi)
  /// c[i][j-1] is the coefficient of (t - x_i)^-j for boundary pole i (order of PoleSet::boundary()).
  std::vector<std::vector<Complex>> partial_fractions;
};

namespace detail {

inline Real arg_positive(const Complex& z) {
  Real a = arg(z);
  if (a < 0) a += 2 * pi();
  // treat -0 angles and rounding just below 2pi as 0
  if (2 * pi() - a < pow(Real(2), -static_cast<int>(working_precision_bits()) / 2)) a = 0;
  return a;
}

/// Coefficients of p(x + u) in u.
inline std::vector<Complex> taylor_shift(const Poly<Complex>& p, const Complex& x) {
  std::vector<Complex> c = p.coeffs();
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < n; ++i)
    for (int j = n - 2; j >= i; --j) c[static_cast<std::size_t>(j)] += x * c[static_cast<std::size_t>(j + 1)];
  return c;
}

}  // namespace detail

/// Leading Laurent data of N/D at x where D has a zero of order d: the first `terms`
/// Taylor coefficients of N(x+u) / (D(x+u)/u^d).
inline std::vector<Complex> laurent_head(const QPoly& num, const QPoly& den, const Complex& x, int d, int terms) {
  auto nc = detail::taylor_shift(to_complex_poly(num), x);
  auto dc = detail::taylor_shift(to_complex_poly(den), x);
  std::vector<Complex> e(dc.begin() + std::min<std::ptrdiff_t>(d, static_cast<std::ptrdiff_t>(dc.size())), dc.end());
  nc.resize(std::max<std::size_t>(nc.size(), static_cast<std::size_t>(terms)), Complex(0));
  e.resize(std::max<std::size_t>(e.size(), static_cast<std::size_t>(terms)), Complex(0));
  std::vector<Complex> q(static_cast<std::size_t>(terms));
  for (int l = 0; l < terms; ++l) {
    Complex acc = nc[static_cast<std::size_t>(l)];
    for (int k = 1; k <= l; ++k) acc -= e[static_cast<std::size_t>(k)] * q[static_cast<std::size_t>(l - k)];
    q[static_cast<std::size_t>(l)] = acc / e[0];
  }
  return q;
}

inline PolarData polar_polynomials(const RationalFunction& input, const PoleSet& ps) {
  const RationalFunction rep = input.reduced ? input : reduce(input);
  PolarData out;
  out.delta_p = Poly<Complex>::constant(Complex(1));
  out.delta_top = Poly<Complex>::constant(Complex(1));
  std::vector<Complex> top;
  for (const auto& p : ps.poles) {
    if (!p.boundary) continue;
    const Poly<Complex> lin{-p.center, Complex(1)};
    for (int i = 0; i < p.multiplicity; ++i) out.delta_p *= lin;
    if (p.multiplicity == ps.d_m) {
      out.delta_top *= lin;
      top.push_back(p.center);
    }
  }
  std::sort(top.begin(), top.end(), [](const Complex& a, const Complex& b) {
    return detail::arg_positive(a) < detail::arg_positive(b);
  });
  out.top_poles = top;

  // exact when every piece is either fully on or fully off the boundary
  bool exact = true;
  QPoly dp{Rational(1)}, dtop{Rational(1)};
  for (std::size_t i = 0; i < ps.pieces.size(); ++i) {
    int on = 0, total = 0;
    for (const auto& p : ps.poles)
      if (p.piece == i) {
        ++total;
        on += p.boundary ? 1 : 0;
      }
    if (on == 0) continue;
    if (on != total) {
      exact = false;
      break;
    }
    const QPoly f = ps.pieces[i].in_t().monic();
    for (int m = 0; m < ps.pieces[i].multiplicity; ++m) dp *= f;
    if (ps.pieces[i].multiplicity == ps.d_m) dtop *= f;
  }
  if (exact) {
    out.delta_p_exact = dp;
    out.delta_top_exact = dtop;
  }

  for (const auto* p : ps.boundary()) {
    const int d = p->multiplicity;
    const auto q = laurent_head(rep.num, rep.den, p->center, d, d);
    std::vector<Complex> c(static_cast<std::size_t>(d));
    for (int l = 0; l < d; ++l) c[static_cast<std::size_t>(d - l - 1)] = q[static_cast<std::size_t>(l)];
    out.partial_fractions.push_back(std::move(c));
  }
  return out;
}

/// |gamma_n - (boundary polar part)_n| * r^n for n < terms; decays geometrically when the
/// polar part is right.
inline std::vector<Real> partial_fraction_residuals(const RationalFunction& rep, const PoleSet& ps,
                                                    const PolarData& pd, int terms) {
  const auto gamma = taylor(rep, terms - 1);
  const auto bnd = ps.boundary();
  std::vector<Real> out;
  for (int n = 0; n < terms; ++n) {
    Complex acc = to_complex(gamma[static_cast<std::size_t>(n)]);
    for (std::size_t i = 0; i < bnd.size(); ++i) {
      const Complex& x = bnd[i]->center;
      for (int j = 1; j <= bnd[i]->multiplicity; ++j) {
        // [t^n] (t - x)^-j = (-1)^j C(n+j-1, j-1) x^(-j-n)
        Real binom = 1;
        for (int a = 1; a < j; ++a) binom = binom * (n + a) / a;
        Complex term = pd.partial_fractions[i][static_cast<std::size_t>(j - 1)] * Complex(binom) * pow(x, -(j + n));
        if (j % 2) term = -term;
        acc -= term;
      }
    }
    out.push_back(abs(acc) * pow(ps.r, n));
  }
  return out;
}

/// Lower growth bound check on the tail: min |gamma_n| r^n / n^e over [N/2, N] for
/// e = d_m (displayed form) and e = d_m - 1 (form that follows from the partial fractions).
struct GrowthCheck {
  int d_m = 0;
  Real min_scaled_dm;
  Real min_scaled_dm_minus_1;
  bool displayed_bound_holds = false;
  bool corrected_bound_holds = false;
  bool discrepancy = false;
};

inline GrowthCheck growth_lower_bound(const RationalFunction& rep, const PoleSet& ps, int horizon) {
  GrowthCheck g;
  g.d_m = ps.d_m;
  const auto gamma = taylor(rep, horizon);
  auto window_min = [&](int lo, int hi, int e) {
    Real m = -1;
    for (int n = std::max(lo, 1); n <= hi; ++n) {
      const Real v = abs(Real(gamma[static_cast<std::size_t>(n)])) * pow(ps.r, n) / pow(Real(n), e);
      if (m < 0 || v < m) m = v;
    }
    return m;
  };
  const int n = horizon;
  g.min_scaled_dm = window_min(n / 2, n, ps.d_m);
  g.min_scaled_dm_minus_1 = window_min(n / 2, n, ps.d_m - 1);
  // a bound holds when the scaled tail stays away from zero and does not keep decaying
  auto holds = [&](int e, const Real& late) {
    const Real early = window_min(n / 4, n / 2, e);
    return late > 0 && late * 3 >= early * 2;
  };
  g.displayed_bound_holds = holds(ps.d_m, g.min_scaled_dm);
  g.corrected_bound_holds = holds(ps.d_m - 1, g.min_scaled_dm_minus_1);
  g.discrepancy = g.corrected_bound_holds && !g.displayed_bound_holds;
  return g;
}

/// Tolerance-based boundary check for sweeps: minimal pole modulus and the largest
/// multiplicity among poles within rel_tol of it. Multiplicities are exact.
struct BoundaryOrder {
  Real r;
  int order = 0;
};

inline BoundaryOrder boundary_order_numeric(const RationalFunction& input, const Real& rel_tol) {
  const RationalFunction rep = input.reduced ? input : reduce(input);
  BoundaryOrder out;
  if (rep.den.degree() < 1) return out;
  std::vector<std::pair<Real, int>> mods;
  for (const auto& [f, m] : square_free_decomposition(rep.den))
    for (const auto& root : isolate_roots(to_complex_poly(f))) mods.emplace_back(abs(root.center), m);
  out.r = mods.front().first;
  for (const auto& [r, m] : mods) out.r = std::min(out.r, r);
  for (const auto& [r, m] : mods)
    if (r <= out.r * (1 + rel_tol)) out.order = std::max(out.order, m);
  return out;
}

}  // namespace tsl

#endif  // TSL_POLE_ANALYSIS_HPP
