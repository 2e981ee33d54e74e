#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "tsl/tsl.hpp"

using namespace tsl;

namespace {

class Core : public ::testing::Test {
 protected:
  PrecisionScope scope{256};
};

}  // namespace

TEST_F(Core, ParseRationalCanonicalizes) {
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational(" -0.25 "), Rational(-1, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(to_string(parse_rational("6/-4")), "-3/2");
  try {
    parse_rational("1/0");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_input);
  }
  EXPECT_THROW(parse_rational("x/2"), Error);
}

TEST_F(Core, PrecisionScopeNestsAndRestores) {
  EXPECT_EQ(working_precision_bits(), 256u);
  {
    PrecisionScope inner(512);
    EXPECT_EQ(working_precision_bits(), 512u);
  }
  EXPECT_EQ(working_precision_bits(), 256u);
}

TEST_F(Core, DivisionWithRemainder) {
  gen::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const QPoly a = rng.poly(static_cast<int>(rng.integer(0, 8)), 9, 5);
    QPoly b = rng.poly(static_cast<int>(rng.integer(0, 4)), 9, 5);
    if (b.is_zero()) continue;
    const auto [q, r] = divmod(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
    EXPECT_EQ(exact_quotient(a * b, b), a);
  }
  EXPECT_THROW(exact_quotient(QPoly{1, 0, 1}, QPoly{1, 1}), Error);
}

TEST_F(Core, GcdContainsCommonFactor) {
  gen::Rng rng(12);
  for (int i = 0; i < 60; ++i) {
    const QPoly r = rng.poly(static_cast<int>(rng.integer(1, 3)), 5, 3);
    const QPoly p = rng.poly(static_cast<int>(rng.integer(0, 4)), 5, 3);
    const QPoly q = rng.poly(static_cast<int>(rng.integer(0, 4)), 5, 3);
    if (r.degree() < 1 || p.is_zero() || q.is_zero()) continue;
    const QPoly g = gcd(p * r, q * r);
    EXPECT_TRUE(divides(g, p * r));
    EXPECT_TRUE(divides(g, q * r));
    EXPECT_TRUE(divides(r, g));
  }
}

TEST_F(Core, GcdNormalization) {
  // constant term 1 when nonzero, else monic
  EXPECT_EQ(gcd(QPoly{2, -2}, QPoly{-3, 0, 3}), (QPoly{1, -1}));
  EXPECT_EQ(gcd(QPoly{0, 4}, QPoly{0, 0, 6}), (QPoly{0, 1}));
}

TEST_F(Core, SquareFreeDecompositionMultipliesBack) {
  gen::Rng rng(13);
  for (int i = 0; i < 40; ++i) {
    QPoly p{1};
    for (int j = 0; j < 3; ++j) {
      const QPoly f{Rational(1), rng.nonzero_rational(4, 3)};
      for (int m = 0; m < rng.integer(1, 3); ++m) p *= f;
    }
    QPoly back{1};
    for (const auto& [f, m] : square_free_decomposition(p)) {
      EXPECT_EQ(gcd(f, f.derivative()).degree(), 0);
      for (int k = 0; k < m; ++k) back *= f;
    }
    EXPECT_EQ(back.monic(), p.monic());
  }
}

TEST_F(Core, DeterminantAgreesWithCofactorExpansion) {
  gen::Rng rng(14);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
    Matrix<Rational> m(n, std::vector<Rational>(n));
    for (auto& row : m)
      for (auto& x : row) x = rng.rational(6, 4);
    EXPECT_EQ(determinant(m), oracle::cofactor_determinant(m));
    EXPECT_EQ(rank(m) == static_cast<int>(n), determinant(m) != 0);
  }
}

TEST_F(Core, CharacteristicPolynomialAnnihilates) {
  gen::Rng rng(15);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
    Matrix<Rational> m(n, std::vector<Rational>(n));
    for (auto& row : m)
      for (auto& x : row) x = rng.rational(5, 3);
    const QPoly chi = characteristic_polynomial(m);
    EXPECT_EQ(chi.degree(), static_cast<int>(n));
    EXPECT_EQ(chi.leading(), 1);
    Matrix<Rational> acc(n, std::vector<Rational>(n, Rational(0)));
    Matrix<Rational> pw = identity_matrix<Rational>(n);
    for (int k = 0; k <= chi.degree(); ++k) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) acc[a][b] += chi.coeff(k) * pw[a][b];
      pw = pw * m;
    }
    for (const auto& row : acc)
      for (const auto& x : row) EXPECT_EQ(x, 0);
  }
}

TEST_F(Core, CyclotomicMinimalPolynomials) {
  // minimal polynomials of 2cos(2pi/h)
  const std::vector<QPoly> expected{
      QPoly{-2, 1}, QPoly{2, 1}, QPoly{1, 1}, QPoly{0, 1}, QPoly{-1, 1, 1}, QPoly{-1, 1}, QPoly{-1, -2, 1, 1}, QPoly{-2, 0, 1}};
  for (int h = 1; h <= 8; ++h) EXPECT_EQ(CyclotomicContext(h).minimal_polynomial(), expected[static_cast<std::size_t>(h - 1)]) << h;
}

TEST_F(Core, RealCyclotomicFieldArithmetic) {
  gen::Rng rng(16);
  for (int h : {5, 7, 8}) {
    auto ctx = std::make_shared<const CyclotomicContext>(h);
    for (int i = 0; i < 20; ++i) {
      std::vector<Rational> c;
      for (int k = 0; k < ctx->degree(); ++k) c.push_back(rng.rational(5, 3));
      const RealCyclotomic x(QPoly(c), ctx);
      if (is_zero(x)) continue;
      const RealCyclotomic one = x * x.inverse();
      EXPECT_TRUE(one.is_rational());
      EXPECT_EQ(one.rational_value(), 1);
      const Real v = x.value().re;
      EXPECT_EQ(x.sign(), v > 0 ? 1 : -1);
    }
    // 2cos(2pi k/h) squared equals 2 + 2cos(4pi k/h)
    for (int k = 1; 2 * k < h; ++k) {
      const auto c = RealCyclotomic::two_cos(ctx, k);
      const auto c2 = RealCyclotomic::two_cos(ctx, 2 * k);
      EXPECT_TRUE(is_zero(c * c - c2 - RealCyclotomic(2)));
    }
  }
}

TEST_F(Core, ReduceExamples) {
  EXPECT_TRUE(equal(reduce({QPoly{1, 0, -1}, QPoly{1, -1} * QPoly{1, -2}}), {QPoly{1, 1}, QPoly{1, -2}}));
  const auto r = reduce({QPoly{2, 2}, QPoly{2}});
  EXPECT_EQ(r.num, (QPoly{1, 1}));
  EXPECT_EQ(r.den, QPoly{1});
  const RationalFunction machi{QPoly{1, 1} * QPoly{1, 2}, QPoly{1, 0, -2} * QPoly{1, -1}};
  const auto m = reduce(machi);
  EXPECT_EQ(m.num, machi.num);
  EXPECT_EQ(m.den, machi.den);
  try {
    reduce({QPoly{1}, QPoly{0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_constant_term);
  }
}

TEST_F(Core, TaylorMatchesGeometricSumOracle) {
  gen::Rng rng(17);
  for (int i = 0; i < 30; ++i) {
    const auto f = gen::rational_function(rng, 4, 4);
    EXPECT_EQ(taylor(f, 64), oracle::taylor_by_geometric_sum(f.num, f.den, 64));
  }
}

TEST_F(Core, RationalizeRecoversSmallFractions) {
  const Real x = Real(5) / 7 + pow(Real(10), -40);
  const auto q = rationalize(x, pow(Real(10), -30), Integer(1000000));
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, Rational(5, 7));
  EXPECT_FALSE(rationalize(sqrt(Real(2)), pow(Real(10), -30), Integer(1000000)).has_value());
}
