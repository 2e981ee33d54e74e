#ifndef TSL_SEQUENCE_HPP
#define TSL_SEQUENCE_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tsl/errors.hpp"
#include "tsl/groups_growth.hpp"
#include "tsl/pole_analysis.hpp"
#include "tsl/rational_function.hpp"
#include "tsl/rational_operators.hpp"
#include "tsl/rational_subsets.hpp"
#include "tsl/scalar.hpp"

namespace tsl {

enum class NamedIndexSet { squares, powers_of_two };

/// Index set of an oscillating model: a rational subset, or a built-in non-rational set.
struct IndexSet {
  std::variant<RationalSubset, NamedIndexSet> set;

  bool rational() const { return std::holds_alternative<RationalSubset>(set); }
  const RationalSubset& subset() const { return std::get<RationalSubset>(set); }
  bool contains(long n) const {
    if (rational()) return subset().contains(n);
    if (std::get<NamedIndexSet>(set) == NamedIndexSet::squares) {
      const long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
      for (long c = std::max(0L, r - 1); c <= r + 1; ++c)
        if (c * c == n) return true;
      return false;
    }
    return n > 0 && (n & (n - 1)) == 0;
  }
  std::string name() const {
    if (rational()) return "rational";
    return std::get<NamedIndexSet>(set) == NamedIndexSet::squares ? "squares" : "powers_of_two";
  }
};

struct SeriesSpec;
using SpecPtr = std::shared_ptr<const SeriesSpec>;

struct ExplicitCoeffs {
  std::vector<Rational> values;
};
struct RationalSpec {
  RationalFunction f;
};
struct OscillatingModel {
  IndexSet U;
  Gaussian a;
  Gaussian b;
};
/// sqrt((1 + t)/(1 - t)); algebraic branch point on the circle, not meromorphic there.
struct SqrtFixture {};
struct DerivativeSpec {
  SpecPtr inner;
  int order = 1;
};
struct SumSpec {
  SpecPtr left, right;
};
/// P(c t)
struct RescaleSpec {
  SpecPtr inner;
  Rational c;
};
/// T_U P
struct SectionSpec {
  SpecPtr inner;
  RationalSubset U;
};

struct SeriesSpec {
  std::variant<ExplicitCoeffs, RationalSpec, FreeProductSpec, OscillatingModel, SqrtFixture, DerivativeSpec, SumSpec,
               RescaleSpec, SectionSpec>
      node;

  static SeriesSpec explicit_coeffs(std::vector<Rational> v) {
    if (v.empty()) throw Error(ErrorCode::invalid_input, "explicit coefficient list is empty");
    return {ExplicitCoeffs{std::move(v)}};
  }
  static SeriesSpec rational(QPoly num, QPoly den) {
    if (den.constant_term() == 0)
      throw Error(ErrorCode::zero_constant_term, "denominator constant term must be nonzero");
    return {RationalSpec{{std::move(num), std::move(den)}}};
  }
  static SeriesSpec rational(const RationalFunction& f) { return rational(f.num, f.den); }
  static SeriesSpec free_product(std::vector<int> orders) {
    FreeProductSpec s{std::move(orders)};
    s.validate();
    return {s};
  }
  static SeriesSpec oscillating(IndexSet U, Gaussian a, Gaussian b) {
    if (is_zero(a) || is_zero(b)) throw Error(ErrorCode::invalid_input, "oscillating model needs nonzero a and b");
    return {OscillatingModel{std::move(U), std::move(a), std::move(b)}};
  }
  static SeriesSpec sqrt_fixture() { return {SqrtFixture{}}; }
  static SeriesSpec derivative(SeriesSpec inner, int m) {
    if (m < 1) throw Error(ErrorCode::invalid_input, "derivative order must be at least 1");
    return {DerivativeSpec{std::make_shared<const SeriesSpec>(std::move(inner)), m}};
  }
  static SeriesSpec sum(SeriesSpec l, SeriesSpec r) {
    return {SumSpec{std::make_shared<const SeriesSpec>(std::move(l)), std::make_shared<const SeriesSpec>(std::move(r))}};
  }
  static SeriesSpec rescale(SeriesSpec inner, Rational c) {
    if (c == 0) throw Error(ErrorCode::invalid_input, "rescale factor must be nonzero");
    return {RescaleSpec{std::make_shared<const SeriesSpec>(std::move(inner)), std::move(c)}};
  }
  static SeriesSpec section(SeriesSpec inner, RationalSubset U) {
    return {SectionSpec{std::make_shared<const SeriesSpec>(std::move(inner)), std::move(U)}};
  }

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
};

namespace detail {

template <typename... F>
struct overloaded : F... {
  using F::operator()...;
};
template <typename... F>
overloaded(F...) -> overloaded<F...>;

inline bool spec_real(const SeriesSpec& s) {
  return std::visit(overloaded{
                        [](const OscillatingModel& m) { return m.a.is_real() && m.b.is_real(); },
                        [](const DerivativeSpec& d) { return spec_real(*d.inner); },
                        [](const SumSpec& d) { return spec_real(*d.left) && spec_real(*d.right); },
                        [](const RescaleSpec& d) { return spec_real(*d.inner); },
                        [](const SectionSpec& d) { return spec_real(*d.inner); },
                        [](const auto&) { return true; },
                    },
                    s.node);
}

inline std::optional<long> spec_limit(const SeriesSpec& s) {
  return std::visit(overloaded{
                        [](const ExplicitCoeffs& e) -> std::optional<long> { return static_cast<long>(e.values.size()) - 1; },
                        [](const DerivativeSpec& d) -> std::optional<long> {
                          auto l = spec_limit(*d.inner);
                          if (l) return *l - d.order;
                          return std::nullopt;
                        },
                        [](const SumSpec& d) -> std::optional<long> {
                          auto a = spec_limit(*d.left), b = spec_limit(*d.right);
                          if (a && b) return std::min(*a, *b);
                          return a ? a : b;
                        },
                        [](const RescaleSpec& d) { return spec_limit(*d.inner); },
                        [](const SectionSpec& d) { return spec_limit(*d.inner); },
                        [](const auto&) -> std::optional<long> { return std::nullopt; },
                    },
                    s.node);
}

inline std::vector<Gaussian> widen(const std::vector<Rational>& v) { return {v.begin(), v.end()}; }

inline std::vector<Gaussian> compute(const SeriesSpec& s, long n_max) {
  if (auto lim = spec_limit(s); lim && n_max > *lim)
    throw Error(ErrorCode::invalid_input, "requested index " + std::to_string(n_max) + " beyond the " +
                                              std::to_string(*lim + 1) + " available coefficients");
  const int n = static_cast<int>(n_max);
  return std::visit(
      overloaded{
          [&](const ExplicitCoeffs& e) {
            return widen(std::vector<Rational>(e.values.begin(), e.values.begin() + n + 1));
          },
          [&](const RationalSpec& r) { return widen(taylor(r.f, n)); },
          [&](const FreeProductSpec& f) { return widen(taylor(growth_series(f).cumulative, n)); },
          [&](const OscillatingModel& m) {
            std::vector<Gaussian> g(static_cast<std::size_t>(n) + 1);
            g[0] = Gaussian(1);
            for (long i = 1; i <= n; ++i)
              g[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(i - 1)] * (m.U.contains(i) ? m.a : m.b);
            return g;
          },
          [&](const SqrtFixture&) {
            // gamma_2k = gamma_2k+1 = C(2k, k) / 4^k
            std::vector<Gaussian> g(static_cast<std::size_t>(n) + 1);
            Rational c(1);
            for (long k = 0; 2 * k <= n; ++k) {
              if (k > 0) c = c * Rational((2 * k - 1), 2 * k);
              g[static_cast<std::size_t>(2 * k)] = c;
              if (2 * k + 1 <= n) g[static_cast<std::size_t>(2 * k + 1)] = c;
            }
            return g;
          },
          [&](const DerivativeSpec& d) {
            const auto inner = compute(*d.inner, n_max + d.order);
            std::vector<Gaussian> g(static_cast<std::size_t>(n) + 1);
            for (long i = 0; i <= n; ++i) {
              Integer f = 1;
              for (long j = 1; j <= d.order; ++j) f *= i + j;
              g[static_cast<std::size_t>(i)] = inner[static_cast<std::size_t>(i + d.order)] * Gaussian(Rational(f));
            }
            return g;
          },
          [&](const SumSpec& d) {
            auto a = compute(*d.left, n_max);
            const auto b = compute(*d.right, n_max);
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
            return a;
          },
          [&](const RescaleSpec& d) {
            auto a = compute(*d.inner, n_max);
            Rational p(1);
            for (auto& x : a) {
              x *= Gaussian(p);
              p *= d.c;
            }
            return a;
          },
          [&](const SectionSpec& d) {
            auto a = compute(*d.inner, n_max);
            for (long i = 0; i <= n; ++i)
              if (!d.U.contains(i)) a[static_cast<std::size_t>(i)] = Gaussian(0);
            return a;
          },
      },
      s.node);
}

}  // namespace detail

/// gamma_0..gamma_{n_max} of a spec (exact in Q(i); real specs have zero imaginary parts).
inline std::vector<Gaussian> coefficients(const SeriesSpec& spec, long n_max) {
  if (n_max < 0) throw Error(ErrorCode::invalid_input, "n_max must be nonnegative");
  return detail::compute(spec, n_max);
}

/// Lazily evaluated coefficient sequence with an extend-only cache. Copies share the cache;
/// concurrent readers are safe.
class CoefficientStream {
 public:
  explicit CoefficientStream(SeriesSpec spec) : state_(std::make_shared<State>()) {
    state_->spec = std::move(spec);
    state_->real = detail::spec_real(state_->spec);
    state_->limit = detail::spec_limit(state_->spec);
  }

  const SeriesSpec& spec() const { return state_->spec; }
  bool real() const { return state_->real; }
  /// Largest available index for finite inputs (coefficient files).
  std::optional<long> limit() const { return state_->limit; }

  std::vector<Gaussian> prefix(long n_max) const {
    std::lock_guard<std::mutex> lock(state_->mutex);
    auto& cache = state_->cache;
    if (static_cast<long>(cache.size()) <= n_max) {
      long target = std::max(n_max, 2 * static_cast<long>(cache.size()));
      if (state_->limit) target = std::min(target, *state_->limit);
      target = std::max(target, n_max);
      auto fresh = coefficients(state_->spec, target);
      // the cache only grows; earlier values are never replaced
      cache.insert(cache.end(), fresh.begin() + static_cast<std::ptrdiff_t>(cache.size()), fresh.end());
    }
    return {cache.begin(), cache.begin() + n_max + 1};
  }
  Gaussian at(long n) const { return prefix(n)[static_cast<std::size_t>(n)]; }

  std::vector<Rational> real_prefix(long n_max) const {
    if (!real()) throw Error(ErrorCode::invalid_input, "stream has complex coefficients");
    std::vector<Rational> out;
    for (auto& g : prefix(n_max)) out.push_back(g.re);
    return out;
  }

 private:
  struct State {
    SeriesSpec spec;
    bool real = true;
    std::optional<long> limit;
    std::mutex mutex;
    std::vector<Gaussian> cache;
  };
  std::shared_ptr<State> state_;
};

/// Stream of T_U P.
inline CoefficientStream section_stream(const CoefficientStream& s, const RationalSubset& U) {
  return CoefficientStream(SeriesSpec::section(s.spec(), U));
}

/// Exact rational form of a spec when one exists over Q.
inline std::optional<RationalFunction> as_rational(const SeriesSpec& s) {
  using detail::overloaded;
  return std::visit(
      overloaded{
          [](const RationalSpec& r) -> std::optional<RationalFunction> { return reduce(r.f); },
          [](const FreeProductSpec& f) -> std::optional<RationalFunction> { return growth_series(f).cumulative; },
          [](const OscillatingModel& m) -> std::optional<RationalFunction> {
            if (!m.U.rational() || !m.a.is_real() || !m.b.is_real()) return std::nullopt;
            const RationalSubset& U = m.U.subset();
            const int h = U.period();
            const long start = U.max_exception() + 1;
            const auto g = coefficients(SeriesSpec{m}, start + h);
            QPoly head, body;
            for (long i = 0; i < start; ++i) head += QPoly::monomial(static_cast<int>(i), g[static_cast<std::size_t>(i)].re);
            for (int j = 0; j < h; ++j) body += QPoly::monomial(j, g[static_cast<std::size_t>(start + j)].re);
            const Rational c = g[static_cast<std::size_t>(start + h)].re / g[static_cast<std::size_t>(start)].re;
            const QPoly den = QPoly::one_minus(c, h);
            return reduce({head * den + body.shifted(static_cast<int>(start)), den});
          },
          [](const DerivativeSpec& d) -> std::optional<RationalFunction> {
            auto f = as_rational(*d.inner);
            if (!f) return std::nullopt;
            for (int i = 0; i < d.order; ++i) *f = derivative(*f);
            return f;
          },
          [](const SumSpec& d) -> std::optional<RationalFunction> {
            auto a = as_rational(*d.left), b = as_rational(*d.right);
            if (!a || !b) return std::nullopt;
            return *a + *b;
          },
          [](const RescaleSpec& d) -> std::optional<RationalFunction> {
            auto f = as_rational(*d.inner);
            if (!f) return std::nullopt;
            return rescale(*f, d.c);
          },
          [](const SectionSpec& d) -> std::optional<RationalFunction> {
            auto f = as_rational(*d.inner);
            if (!f) return std::nullopt;
            const int h = d.U.period();
            RationalFunction out = reduce({QPoly{}, QPoly{1}});
            for (int e : d.U.residues()) out = out + section_rational(*f, h, e).result;
            const long top = d.U.max_exception();
            if (top >= 0) {
              const auto g = taylor(*f, static_cast<int>(top));
              QPoly fix;
              for (long n : d.U.added()) fix += QPoly::monomial(static_cast<int>(n), g[static_cast<std::size_t>(n)]);
              for (long n : d.U.removed()) fix -= QPoly::monomial(static_cast<int>(n), g[static_cast<std::size_t>(n)]);
              out = out + RationalFunction::polynomial(fix);
            }
            return out;
          },
          [](const auto&) -> std::optional<RationalFunction> { return std::nullopt; },
      },
      s.node);
}

/// True for inputs known not to be meromorphic on a neighbourhood of the closed disc.
inline bool non_meromorphic(const SeriesSpec& s) {
  using detail::overloaded;
  return std::visit(overloaded{
                        [](const SqrtFixture&) { return true; },
                        [](const DerivativeSpec& d) { return non_meromorphic(*d.inner); },
                        [](const SumSpec& d) { return non_meromorphic(*d.left) || non_meromorphic(*d.right); },
                        [](const RescaleSpec& d) { return non_meromorphic(*d.inner); },
                        [](const SectionSpec& d) { return non_meromorphic(*d.inner); },
                        [](const auto&) { return false; },
                    },
                    s.node);
}

inline std::string describe(const SeriesSpec& s) {
  using detail::overloaded;
  return std::visit(
      overloaded{
          [](const ExplicitCoeffs& e) { return "explicit(" + std::to_string(e.values.size()) + " coefficients)"; },
          [](const RationalSpec& r) { return "rational" + r.f.to_string(); },
          [](const FreeProductSpec& f) {
            std::string o;
            for (int p : f.orders) o += (o.empty() ? "" : ",") + std::to_string(p);
            return "free_product[" + o + "]";
          },
          [](const OscillatingModel& m) {
            return "oscillating(U=" + m.U.name() + ", a=" + to_string(m.a) + ", b=" + to_string(m.b) + ")";
          },
          [](const SqrtFixture&) { return std::string("sqrt((1+t)/(1-t))"); },
          [](const DerivativeSpec& d) { return "derivative^" + std::to_string(d.order) + "(" + describe(*d.inner) + ")"; },
          [](const SumSpec& d) { return "sum(" + describe(*d.left) + ", " + describe(*d.right) + ")"; },
          [](const RescaleSpec& d) { return "rescale(" + describe(*d.inner) + ", " + to_string(d.c) + ")"; },
          [](const SectionSpec& d) { return "section(" + describe(*d.inner) + ", h=" + std::to_string(d.U.period()) + ")"; },
      },
      s.node);
}

// ---------------------------------------------------------------------------
// Tameness and radii

struct TamenessOptions {
  long zero_threshold_index = 64;  // N
  int max_late_zeros = 4;          // K
};

struct TamenessCertificate {
  Real u, v;
  long N_P = 1;
  long verified_up_to = 0;
  Real tail_u, tail_v;  // bounds over the last half of the window
  long tail_from = 0;
};

namespace detail {

inline std::vector<Real> ratio_moduli(const std::vector<Gaussian>& g, long from) {
  std::vector<Real> out;
  for (std::size_t n = static_cast<std::size_t>(from); n < g.size(); ++n)
    out.push_back(abs(to_complex(g[n - 1]) / to_complex(g[n])));
  return out;
}

}  // namespace detail

inline TamenessCertificate certify_tameness(const CoefficientStream& stream, long horizon,
                                            const TamenessOptions& opt = {}) {
  if (horizon < 2) throw Error(ErrorCode::invalid_input, "tameness horizon must be at least 2");
  if (stream.limit()) horizon = std::min(horizon, *stream.limit());
  if (horizon < 2) throw Error(ErrorCode::invalid_input, "too few coefficients to certify tameness");
  const auto g = stream.prefix(horizon);
  long last_zero = -1;
  int late = 0;
  for (long n = 0; n <= horizon; ++n)
    if (is_zero(g[static_cast<std::size_t>(n)])) {
      last_zero = n;
      if (n > opt.zero_threshold_index) ++late;
    }
  if (late > opt.max_late_zeros)
    throw Error(ErrorCode::not_tame, "zero coefficients persist beyond index " +
                                         std::to_string(opt.zero_threshold_index) + " (witness n=" +
                                         std::to_string(last_zero) + ")");
  TamenessCertificate c;
  c.N_P = last_zero < 0 ? 1 : last_zero + 2;
  c.verified_up_to = horizon;
  if (c.N_P > horizon - 1) throw Error(ErrorCode::not_tame, "no nonzero ratios inside the horizon");
  const auto r = detail::ratio_moduli(g, c.N_P);
  c.u = *std::min_element(r.begin(), r.end());
  c.v = *std::max_element(r.begin(), r.end());
  const std::size_t half = r.size() / 2;
  c.tail_from = c.N_P + static_cast<long>(half);
  c.tail_u = *std::min_element(r.begin() + static_cast<std::ptrdiff_t>(half), r.end());
  c.tail_v = *std::max_element(r.begin() + static_cast<std::ptrdiff_t>(half), r.end());
  // drift test: extremes that keep moving by a fixed factor across quarters signal 0 or infinity
  if (r.size() >= 16) {
    const std::size_t q = r.size() / 4;
    std::vector<Real> lo, hi;
    for (int i = 0; i < 4; ++i) {
      auto b = r.begin() + static_cast<std::ptrdiff_t>(i * q), e = (i == 3) ? r.end() : b + static_cast<std::ptrdiff_t>(q);
      lo.push_back(*std::min_element(b, e));
      hi.push_back(*std::max_element(b, e));
    }
    const Real f(1.25);
    bool falling = true, rising = true;
    for (int i = 1; i < 4; ++i) {
      falling = falling && lo[static_cast<std::size_t>(i - 1)] > f * lo[static_cast<std::size_t>(i)];
      rising = rising && hi[static_cast<std::size_t>(i)] > f * hi[static_cast<std::size_t>(i - 1)];
    }
    if (falling || rising)
      throw Error(ErrorCode::not_tame, std::string("ratio moduli ") + (falling ? "tend to 0" : "are unbounded") +
                                           " (witness n=" + std::to_string(horizon) + ")");
  }
  if (c.u == 0) throw Error(ErrorCode::not_tame, "zero ratio inside the certified window");
  return c;
}

struct RadiusBounds {
  Real r, r_error;
  Real R, R_error;
  bool exact = false;
  std::optional<ModulusPower> r_power;  // r^power == value when exact
  std::string method;
};

inline RadiusBounds radius_bounds(const CoefficientStream& stream, long horizon) {
  RadiusBounds b;
  if (auto f = as_rational(stream.spec()); f && f->den.degree() >= 1) {
    const PoleSet ps = boundary_poles(*f);
    b.r = b.R = ps.r;
    b.r_error = b.R_error = ps.r_error;
    b.exact = ps.r_exact.has_value();
    b.r_power = ps.r_exact;
    b.method = "minimal pole modulus";
    return b;
  }
  if (const auto* m = stream.spec().as<OscillatingModel>(); m && m->U.rational()) {
    // 1/r = |a|^p |b|^(1-p) with p the density of U; r^(2h) is rational
    const RationalSubset& U = m->U.subset();
    const int h = U.period();
    const long k = static_cast<long>(U.residues().size());
    const Rational na = m->a.re * m->a.re + m->a.im * m->a.im;
    const Rational nb = m->b.re * m->b.re + m->b.im * m->b.im;
    const Rational r2h = Rational(1) / (ipow(na, k) * ipow(nb, h - k));
    b.r = b.R = pow(Real(r2h), Real(1) / (2 * h));
    b.r_error = b.R_error = 0;
    b.exact = true;
    b.r_power = ModulusPower{2 * h, r2h};
    b.method = "density formula";
    return b;
  }
  if (stream.limit()) horizon = std::min(horizon, *stream.limit());
  const auto g = stream.prefix(horizon);
  auto roots = [&](long from) {
    Real lo = -1, hi = -1;
    for (long n = std::max(from, 1L); n <= horizon; ++n) {
      const Real m = abs(to_complex(g[static_cast<std::size_t>(n)]));
      if (m == 0) continue;
      const Real v = pow(m, Real(1) / n);
      if (lo < 0 || v < lo) lo = v;
      if (hi < 0 || v > hi) hi = v;
    }
    return std::make_pair(lo, hi);
  };
  const auto [lo2, hi2] = roots(horizon / 2);
  const auto [lo4, hi4] = roots(3 * horizon / 4);
  if (hi4 <= 0) throw Error(ErrorCode::not_tame, "no nonzero coefficients in the radius window");
  b.r = 1 / hi4;
  b.R = 1 / lo4;
  b.r_error = abs(1 / hi2 - b.r);
  b.R_error = abs(1 / lo2 - b.R);
  b.method = "root test over the tail";
  return b;
}

// ---------------------------------------------------------------------------
// Coefficient files: CSV with header n,numerator,denominator

inline std::vector<Rational> read_coeffs_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::invalid_input, "empty coefficient file");
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    return s;
  };
  if (strip(line) != "n,numerator,denominator")
    throw Error(ErrorCode::invalid_input, "coefficient file header must be n,numerator,denominator");
  std::vector<Rational> out;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string n, p, q;
    if (!std::getline(ss, n, ',') || !std::getline(ss, p, ',') || !std::getline(ss, q, ','))
      throw Error(ErrorCode::invalid_input, "malformed coefficient row '" + line + "'");
    long idx = 0;
    try {
      idx = std::stol(n);
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_input, "malformed index in row '" + line + "'");
    }
    if (idx != static_cast<long>(out.size()))
      throw Error(ErrorCode::invalid_input, "coefficient rows must start at 0 and have no gaps (row n=" + n + ")");
    out.push_back(parse_rational(p + "/" + q));
  }
  if (out.empty()) throw Error(ErrorCode::invalid_input, "coefficient file has no rows");
  return out;
}

inline std::vector<Rational> read_coeffs_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open coefficient file " + path);
  return read_coeffs_csv(in);
}

inline void write_coeffs_csv(std::ostream& out, const std::vector<Rational>& g) {
  out << "n,numerator,denominator\n";
  for (std::size_t n = 0; n < g.size(); ++n) out << n << ',' << numerator(g[n]) << ',' << denominator(g[n]) << '\n';
}

}  // namespace tsl

#endif  // TSL_SEQUENCE_HPP
