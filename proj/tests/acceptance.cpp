// One line per acceptance criterion. Exit status is the number of failed criteria.

#include <chrono>
#include <iostream>
#include <sstream>

#include "corpus.hpp"
#include "generators.hpp"
#include "tsl/tsl.hpp"

using namespace tsl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::ostringstream why;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      why << what;
      ok = false;
    }
  }
};

const RationalFunction kMachi{QPoly{1, 1} * QPoly{1, 2}, QPoly{1, 0, -2} * QPoly{1, -1}};

std::string sci(const Real& x) { return to_string(x, 3); }

Outcome machi_end_to_end() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r = verify_duality(CoefficientStream(SeriesSpec::free_product({2, 3})));
  const double dt = seconds_since(t0);
  o.require(r.passed(), "verdict " + r.verdict);
  if (!r.series || !r.pole) return o;
  const auto& det = r.series->detection;
  o.require(det.h_P == 2, "h_P " + std::to_string(det.h_P));
  o.require(det.exact() && *det.initials[0].reconstructed == Gaussian(Rational(5, 7)) &&
                *det.initials[1].reconstructed == Gaussian(Rational(7, 10)),
            "initials not reconstructed as 5/7, 7/10");
  o.require(r.series->A_exact && *r.series->A_exact == Rational(1, 2), "A_P");
  o.require(r.series->delta_op_exact && *r.series->delta_op_exact == QPoly{1, 0, Rational(-1, 2)}, "Delta^op");
  o.require(r.pole->polar.delta_top_exact && *r.pole->polar.delta_top_exact == QPoly{Rational(-1, 2), 0, 1}, "Delta^top");
  o.require(r.reversal_residual < pow10(-30), "reversal residual " + sci(r.reversal_residual));
  const Real s2 = sqrt(Real(2));
  Real worst = 0;
  for (const auto* m : {&r.series->matrix, &r.pole->matrix})
    for (std::size_t i = 0; i < m->x.size(); ++i) {
      const bool plus = m->x[i].re > 0;
      worst = std::max(worst, abs(m->entries[0][i] - Complex(plus ? 1 + 5 * s2 / 7 : 1 - 5 * s2 / 7)));
      worst = std::max(worst, abs(m->entries[1][i] - Complex(plus ? 1 + 7 / (5 * s2) : 1 - 7 / (5 * s2))));
    }
  o.require(worst < pow10(-20), "matrix entries off by " + sci(worst));
  // rows of the matrix are e, columns x = 1/sqrt2, -1/sqrt2
  const bool first_positive = r.pole->matrix.x[0].re > 0;
  const Real det_err = abs(r.pole_determinant->re * (first_positive ? 1 : -1) - s2 / 35) + abs(r.pole_determinant->im);
  o.require(det_err < pow10(-20), "determinant off by " + sci(det_err));
  o.require(dt < 2.0, "runtime " + std::to_string(dt) + " s");
  o.why << (o.ok ? "" : "; ") << "runtime " << dt << " s";
  return o;
}

Outcome growth_oracle() {
  Outcome o;
  const auto t0 = Clock::now();
  int specs = 0;
  std::vector<std::vector<int>> layer{{}};
  for (int k = 1; k <= 3; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& t : layer)
      for (int p = 2; p <= 6; ++p) {
        auto u = t;
        u.push_back(p);
        next.push_back(u);
      }
    for (const auto& orders : next) {
      ++specs;
      const auto series = taylor(growth_series({orders}).cumulative, 12);
      const auto bfs = bfs_counts({orders}, 12);
      for (int n = 0; n <= 12; ++n)
        if (series[static_cast<std::size_t>(n)] != Rational(bfs[static_cast<std::size_t>(n)])) {
          o.require(false, "mismatch for orders of size " + std::to_string(orders.size()) + " at n=" + std::to_string(n));
          break;
        }
    }
    layer = std::move(next);
  }
  const double dt = seconds_since(t0);
  o.require(specs >= 60, "only " + std::to_string(specs) + " specs");
  o.require(dt < 30, "runtime " + std::to_string(dt) + " s");
  o.why << (o.ok ? "" : "; ") << specs << " specs, " << dt << " s";
  return o;
}

Outcome section_forms() {
  Outcome o;
  const QPoly den = QPoly{1, 0, -2} * QPoly{1, 0, -1};
  const auto s0 = section_rational(kMachi, 2, 0).result;
  const auto s1 = section_rational(kMachi, 2, 1).result;
  o.require(equal(s0, {QPoly{1, 0, 5}, den}), "even section " + s0.to_string());
  o.require(equal(s1, {QPoly{0, 4, 0, 2}, den}), "odd section " + s1.to_string());
  o.why << (o.ok ? "" : "; ") << "T^[0]P = " << s0.to_string() << ", T^[1]P = " << s1.to_string();
  return o;
}

Outcome identity_suite() {
  Outcome o;
  gen::Rng rng(4004);
  int checks = 0;
  for (int i = 0; i < 100; ++i) {
    const auto f = gen::rational_function(rng, 6, 6);
    const int h = static_cast<int>(rng.integer(1, 5));
    const auto rec = operator_identity_suite(f, h);
    checks += static_cast<int>(rec.checks.size());
    o.require(rec.all_passed(), "failed on " + f.to_string() + " h=" + std::to_string(h));
  }
  for (int h = 1; h <= 5; ++h) {
    const auto rec = operator_identity_suite(kMachi, h);
    checks += static_cast<int>(rec.checks.size());
    o.require(rec.all_passed(), "failed on Machi h=" + std::to_string(h));
  }
  o.why << (o.ok ? "" : "; ") << checks << " identity checks";
  return o;
}

Outcome duality_corpus() {
  Outcome o;
  PrecisionScope scope(256);
  const auto entries = corpus::build(60);
  const auto t0 = Clock::now();
  Real worst = 0;
  for (const auto& e : entries) {
    try {
      const auto r = verify_duality(e.f);
      o.require(r.passed(), e.name + " verdict " + r.verdict);
      if (!r.passed()) continue;
      worst = std::max({worst, r.reversal_residual, r.matrix_distance});
      o.require(r.series->h == e.expected_period, e.name + " period");
      o.require(r.pole->polar.delta_top_exact && r.pole->polar.delta_top_exact->monic() == e.expected_top,
                e.name + " Delta^top");
    } catch (const Error& err) {
      o.require(false, e.name + ": " + err.what());
    }
  }
  const double dt = seconds_since(t0);
  o.require(worst < pow10(-20), "worst residual " + sci(worst));
  o.require(dt < 60, "runtime " + std::to_string(dt) + " s");
  o.why << (o.ok ? "" : "; ") << entries.size() << " functions, worst residual " << sci(worst) << ", " << dt << " s";
  return o;
}

Outcome algebra_properties() {
  Outcome o;
  gen::Rng rng(6006);
  for (int i = 0; i < 200; ++i) {
    const int h = static_cast<int>(rng.integer(1, 6));
    const auto a = gen::positive_initials(rng, h);
    const auto pair = denominator_pair(a);
    o.require(rank(coefficient_matrix(a)) == pair.delta_op.degree(), "rank vs deg Delta^op");
    o.require(relation_holds(a, numerators(a)), "numerator relation");
  }
  for (int i = 0; i < 200; ++i) {
    const int h = static_cast<int>(rng.integer(1, 5));
    const auto a = gen::nonzero_initials(rng, h);
    std::vector<Rational> shifted(a.begin() + 1, a.end());
    shifted.push_back(a.front());
    const Rational sign = h % 2 ? Rational(1) : Rational(-1);
    o.require(discriminant(shifted) == sign * discriminant(a), "cyclic shift sign");
    const Rational lambda = rng.nonzero_rational(5, 4);
    std::vector<Rational> scaled;
    for (const auto& x : a) scaled.push_back(lambda * x);
    o.require(discriminant(scaled) == ipow(lambda, h * (h - 1) / 2) * discriminant(a), "homogeneity");
  }
  o.why << (o.ok ? "" : "; ") << "200 tuples h<=6, 200 tuples h<=5";
  return o;
}

Outcome stratification() {
  Outcome o;
  int labels = 0;
  for (int h = 1; h <= 6; ++h)
    for (const auto& label : all_labels(h)) {
      ++labels;
      const auto a = stratum_sample(label, RealCyclotomic(Rational(1)), static_cast<std::uint64_t>(100 + labels));
      o.require(stratum_classify(a) == label, "h=" + std::to_string(h) + " " + label.to_string());
    }
  o.why << (o.ok ? "" : "; ") << labels << " labels";
  return o;
}

Outcome invariance() {
  Outcome o;
  PrecisionScope scope(256);
  const Real tol = pow10(-20);
  struct Case {
    std::string name;
    SeriesSpec spec;
    Rational far;  // modulus comfortably beyond the radius
  };
  std::vector<Case> cases{{"machi", SeriesSpec::free_product({2, 3}), Rational(2)}};
  for (const auto& e : corpus::build(10, 8080)) cases.push_back({e.name, SeriesSpec::rational(e.f), e.b * 2});

  auto compare = [&](const std::string& label, const AccumulationReport& base, const AccumulationReport& other,
                     int shift, const Complex& factor) {
    if (!other.finite_rational() || other.h_P != base.h_P) {
      o.require(false, label + " period " + std::to_string(other.h_P));
      return;
    }
    const int h = base.h_P;
    for (int e = 0; e < h; ++e) {
      const Complex want = base.initials[static_cast<std::size_t>(cyc(e + shift, h))].value;
      const Complex got = other.initials[static_cast<std::size_t>(e)].value * factor;
      const Real d = abs(got - want);
      if (!(d < tol * (1 + abs(want)))) o.require(false, label + " initial off by " + sci(d));
    }
  };

  int runs = 0;
  for (const auto& c : cases) {
    const auto base = detect_accumulation(CoefficientStream(c.spec));
    if (!base.finite_rational()) {
      o.require(false, c.name + " base inconclusive");
      continue;
    }
    for (int m = 1; m <= 2; ++m) {
      // the m-th derivative moves class e+m onto class e
      compare(c.name + " derivative " + std::to_string(m), base,
              detect_accumulation(CoefficientStream(SeriesSpec::derivative(c.spec, m))), m, Complex(1));
      ++runs;
    }
    const SeriesSpec far = SeriesSpec::rational(QPoly{3}, QPoly{1, -Rational(1) / c.far});
    compare(c.name + " sum", base, detect_accumulation(CoefficientStream(SeriesSpec::sum(c.spec, far))), 0, Complex(1));
    ++runs;
    const Rational scale(3, 2);
    compare(c.name + " rescale", base, detect_accumulation(CoefficientStream(SeriesSpec::rescale(c.spec, scale))), 0,
            to_complex(scale));
    ++runs;
  }
  o.why << (o.ok ? "" : "; ") << cases.size() << " series, " << runs << " transformed runs";
  return o;
}

Outcome degenerate_inputs() {
  Outcome o;
  PrecisionScope scope(256);
  const auto sqrt_rep = detect_accumulation(CoefficientStream(SeriesSpec::sqrt_fixture()));
  o.require(sqrt_rep.finite_rational() && sqrt_rep.h_P == 1, "sqrt fixture period");
  if (sqrt_rep.finite_rational()) {
    const auto om = omega1_summary(sqrt_rep);
    o.require(om.values.size() == 1 && abs(om.values[0] - Complex(1)) < pow10(-20), "Omega_1 of the sqrt fixture");
  }
  try {
    verify_duality(CoefficientStream(SeriesSpec::sqrt_fixture()));
    o.require(false, "duality accepted the sqrt fixture");
  } catch (const Error& e) {
    o.require(e.code() == ErrorCode::non_meromorphic && std::string(e.what()).find("non-meromorphic input") != std::string::npos,
              std::string("unexpected refusal: ") + e.what());
  }
  const auto squares = detect_accumulation(
      CoefficientStream(SeriesSpec::oscillating(IndexSet{NamedIndexSet::squares}, Rational(2), Rational(3))));
  o.require(squares.verdict == "inconclusive", "squares verdict " + squares.verdict);
  o.why << (o.ok ? "" : "; ") << "sqrt h_P=" << sqrt_rep.h_P << ", squares " << squares.verdict;
  return o;
}

}  // namespace

int main() {
  PrecisionScope scope(256);
  const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
      {"Machi end-to-end", machi_end_to_end},
      {"growth series vs word enumeration", growth_oracle},
      {"section closed forms", section_forms},
      {"operator identity suite", identity_suite},
      {"duality corpus", duality_corpus},
      {"algebra properties", algebra_properties},
      {"stratification round trip", stratification},
      {"invariance suite", invariance},
      {"degenerate inputs", degenerate_inputs},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.why << "exception: " << e.what();
    }
    failed += o.ok ? 0 : 1;
    std::cout << (o.ok ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << o.why.str() << std::endl;
  }
  return failed;
}
