#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "tsl/tsl.hpp"

using namespace tsl;

namespace {

class Algebra : public ::testing::Test {
 protected:
  PrecisionScope scope{256};
};

const std::vector<Rational> kMachi{Rational(5, 7), Rational(7, 10)};
const std::vector<Rational> kFour{Rational(3, 2), Rational(2), Rational(1, 2), Rational(2, 3)};

std::vector<Rational> rotate(const std::vector<Rational>& a) {
  std::vector<Rational> out(a.begin() + 1, a.end());
  out.push_back(a.front());
  return out;
}

Poly<RealCyclotomic> unit_poly(std::initializer_list<long> c) {
  std::vector<RealCyclotomic> v;
  for (long x : c) v.emplace_back(Rational(x));
  return Poly<RealCyclotomic>(std::move(v));
}

}  // namespace

TEST_F(Algebra, NumeratorExamples) {
  const auto m = numerators(kMachi);
  EXPECT_EQ(m[0], (QPoly{1, Rational(5, 7)}));
  EXPECT_EQ(m[1], (QPoly{1, Rational(7, 10)}));
  EXPECT_EQ(numerators(std::vector<Rational>{Rational(9, 4)})[0], QPoly{1});
  EXPECT_EQ(numerators(kFour)[0], (QPoly{1, Rational(3, 2), 1, Rational(1, 2)}));
  EXPECT_THROW(numerators(std::vector<Rational>{Rational(1), Rational(0)}), Error);
}

TEST_F(Algebra, RelationHoldsForRandomInitials) {
  gen::Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    const int h = static_cast<int>(rng.integer(1, 8));
    const auto a = gen::nonzero_initials(rng, h);
    const auto nums = numerators(a);
    EXPECT_TRUE(relation_holds(a, nums));
    for (const auto& p : nums) {
      EXPECT_EQ(p.constant_term(), 1);
      EXPECT_EQ(p.degree(), h - 1);
    }
  }
}

TEST_F(Algebra, MatrixLayout) {
  const auto m = coefficient_matrix(kFour);
  for (const auto& row : m) EXPECT_EQ(row[0], 1);
  // M[e][f] = prod_{i=1..f} a^[e-i+1]
  EXPECT_EQ(m[2][3], kFour[2] * kFour[1] * kFour[0]);
  EXPECT_EQ(m[0][2], kFour[0] * kFour[3]);
}

TEST_F(Algebra, DiscriminantExamples) {
  EXPECT_EQ(discriminant(kMachi), Rational(-1, 70));
  EXPECT_EQ(rank(coefficient_matrix(kMachi)), 2);
  const std::vector<Rational> equal{Rational(4, 3), Rational(4, 3)};
  EXPECT_EQ(discriminant(equal), 0);
  EXPECT_EQ(rank(coefficient_matrix(equal)), 1);
}

TEST_F(Algebra, DiscriminantCyclicShiftSign) {
  gen::Rng rng(62);
  for (int i = 0; i < 100; ++i) {
    const int h = static_cast<int>(rng.integer(1, 5));
    const auto a = gen::nonzero_initials(rng, h);
    const Rational sign = h % 2 ? Rational(1) : Rational(-1);
    EXPECT_EQ(discriminant(rotate(a)), sign * discriminant(a));
  }
}

TEST_F(Algebra, DiscriminantHomogeneity) {
  gen::Rng rng(63);
  for (int i = 0; i < 100; ++i) {
    const int h = static_cast<int>(rng.integer(1, 5));
    const auto a = gen::nonzero_initials(rng, h);
    const Rational lambda = rng.nonzero_rational(5, 4);
    std::vector<Rational> scaled;
    for (const auto& x : a) scaled.push_back(lambda * x);
    EXPECT_EQ(discriminant(scaled), ipow(lambda, h * (h - 1) / 2) * discriminant(a));
  }
}

TEST_F(Algebra, DiscriminantAgreesWithCofactorOracle) {
  gen::Rng rng(64);
  for (int i = 0; i < 30; ++i) {
    const auto a = gen::nonzero_initials(rng, static_cast<int>(rng.integer(1, 5)));
    EXPECT_EQ(discriminant(a), oracle::cofactor_determinant(coefficient_matrix(a)));
  }
}

TEST_F(Algebra, DenominatorPairExamples) {
  const auto m = denominator_pair(kMachi);
  EXPECT_EQ(m.delta, QPoly{1});
  EXPECT_EQ(m.delta_op, (QPoly{1, 0, Rational(-1, 2)}));
  EXPECT_EQ(m.d_P, 2);

  const auto one = denominator_pair(std::vector<Rational>{Rational(1)});
  EXPECT_EQ(one.delta_op, (QPoly{1, -1}));
  EXPECT_EQ(one.d_P, 1);

  const auto four = denominator_pair(kFour);
  EXPECT_EQ(four.delta, (QPoly{1, 1}));
  EXPECT_EQ(four.delta_op, (QPoly{1, -1, 1, -1}));
  EXPECT_EQ(four.d_P, 3);
  EXPECT_EQ(four.rank_M, 3);
}

TEST_F(Algebra, RankEqualsOppositeDegree) {
  gen::Rng rng(65);
  for (int i = 0; i < 150; ++i) {
    const int h = static_cast<int>(rng.integer(1, 6));
    const auto a = gen::positive_initials(rng, h);
    const auto pair = denominator_pair(a);
    EXPECT_EQ(pair.rank_M, pair.d_P);
    EXPECT_EQ(pair.delta.constant_term(), 1);
    EXPECT_EQ(pair.delta * pair.delta_op, QPoly::one_minus(period_product(a), h));
  }
}

TEST_F(Algebra, DegenerateInitialsShrinkOppositeDegree) {
  // period-2 tuple seen at h = 4
  const std::vector<Rational> a{Rational(2), Rational(3), Rational(2), Rational(3)};
  const auto pair = denominator_pair(a);
  EXPECT_EQ(pair.d_P, 2);
  EXPECT_EQ(pair.delta_op, (QPoly{1, 0, -6}));
}

TEST_F(Algebra, ReducedNumerators) {
  const auto m = reduced_numerators(kMachi, denominator_pair(kMachi));
  EXPECT_EQ(m.b, numerators(kMachi));
  EXPECT_EQ(m.span_rank, 2);
  EXPECT_TRUE(m.sigma_action);

  const std::vector<Rational> one{Rational(5)};
  EXPECT_EQ(reduced_numerators(one, denominator_pair(one)).b[0], QPoly{1});

  const auto four = reduced_numerators(kFour, denominator_pair(kFour));
  for (const auto& b : four.b) EXPECT_EQ(b.degree(), 2);
  EXPECT_EQ(four.span_rank, 3);
  EXPECT_TRUE(four.sigma_action);
}

TEST_F(Algebra, ReducedNumeratorsSpanRandom) {
  gen::Rng rng(66);
  for (int i = 0; i < 60; ++i) {
    const auto a = gen::positive_initials(rng, static_cast<int>(rng.integer(1, 6)));
    const auto pair = denominator_pair(a);
    const auto red = reduced_numerators(a, pair);
    EXPECT_EQ(red.span_rank, pair.d_P);
    EXPECT_TRUE(red.sigma_action);
  }
}

TEST_F(Algebra, MachiResidueMatrix) {
  std::vector<Poly<Complex>> nums;
  for (const auto& p : numerators(kMachi)) nums.push_back(to_complex_poly(p));
  const auto rm = residue_matrix(nums, Complex(Real(Rational(1, 2))), pow10(-40));
  ASSERT_EQ(rm.x.size(), 2u);
  EXPECT_TRUE(rm.excluded.empty());
  EXPECT_EQ(rm.numeric_rank, 2);
  const Real s2 = sqrt(Real(2));
  // rows indexed by root, columns by class
  const Real expected[2][2] = {{1 + 5 * s2 / 7, 1 + 7 / (5 * s2)}, {1 - 5 * s2 / 7, 1 - 7 / (5 * s2)}};
  Matrix<Complex> twice(2, std::vector<Complex>(2));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t e = 0; e < 2; ++e) {
      twice[i][e] = rm.mu[e][i] * Complex(2);
      EXPECT_LT(abs(twice[i][e] - Complex(expected[i][e])), pow10(-60));
    }
  EXPECT_LT(abs(determinant(twice) - Complex(s2 / 35)), pow10(-60));
  EXPECT_LT(rm.expansion_residual, pow10(-30));
}

TEST_F(Algebra, TrivialResidueMatrix) {
  const auto rm = residue_matrix({Poly<Complex>::constant(Complex(1))}, Complex(1), pow10(-40));
  ASSERT_EQ(rm.x.size(), 1u);
  EXPECT_LT(abs(rm.mu[0][0] - Complex(1)), pow10(-60));
}

TEST_F(Algebra, ResidueExpansionRandom) {
  gen::Rng rng(67);
  for (int i = 0; i < 60; ++i) {
    const auto a = gen::positive_initials(rng, static_cast<int>(rng.integer(1, 6)));
    std::vector<Poly<Complex>> nums;
    for (const auto& p : numerators(a)) nums.push_back(to_complex_poly(p));
    const auto rm = residue_matrix(nums, to_complex(period_product(a)), pow10(-40));
    const auto pair = denominator_pair(a);
    EXPECT_EQ(static_cast<int>(rm.x.size()), pair.d_P);
    EXPECT_EQ(rm.numeric_rank, pair.d_P);
    EXPECT_LT(rm.expansion_residual, pow10(-30));
    EXPECT_LT(max_coeff_distance(rm.delta_op, to_complex_poly(pair.delta_op)), pow10(-40));
  }
}

TEST_F(Algebra, StratumExamples) {
  const auto m = stratum_classify(kMachi);
  EXPECT_EQ(m.h, 2);
  EXPECT_EQ(m.poly, unit_poly({1, 0, -1}));
  EXPECT_EQ(stratum_classify(std::vector<Rational>{Rational(3), Rational(3), Rational(3)}).poly, unit_poly({1, -1}));
  const auto four = stratum_classify(kFour);
  EXPECT_EQ(four.poly, unit_poly({1, -1, 1, -1}));
  EXPECT_EQ(four.to_string(), "(1 - s)(1 + s^2)");
  EXPECT_THROW(stratum_classify(std::vector<Rational>{Rational(1), Rational(-2)}), Error);
}

TEST_F(Algebra, LabelsDivideOneMinusPower) {
  for (int h = 1; h <= 8; ++h) {
    const auto ctx = cyclotomic_context(h);
    const auto full = Poly<RealCyclotomic>::one_minus(RealCyclotomic(1), h);
    const auto labels = all_labels(h);
    EXPECT_EQ(labels.size(), std::size_t(1) << (h / 2));
    for (const auto& l : labels) {
      EXPECT_EQ(l.poly.constant_term(), RealCyclotomic(1));
      EXPECT_TRUE(is_zero(l.poly(RealCyclotomic(1))));
      EXPECT_TRUE(divmod(full, l.poly).second.is_zero()) << l.to_string();
    }
    EXPECT_EQ(labels.back().poly.degree(), h);
  }
}

TEST_F(Algebra, StratumRoundTrip) {
  for (int h = 1; h <= 6; ++h)
    for (const auto& label : all_labels(h))
      for (const Rational& r : {Rational(1), Rational(3, 2)}) {
        const auto a = stratum_sample(label, RealCyclotomic(r), 7 + h);
        EXPECT_EQ(static_cast<int>(a.size()), h);
        for (const auto& x : a) EXPECT_GT(x.sign(), 0);
        EXPECT_EQ(stratum_classify(a), label) << label.to_string();
        EXPECT_EQ(period_product(a), ipow(RealCyclotomic(r), h));
      }
}

TEST_F(Algebra, GenericStratumHasNonzeroDiscriminant) {
  const auto labels = all_labels(4);
  const auto a = stratum_sample(labels.back(), RealCyclotomic(1), 99);
  EXPECT_FALSE(is_zero(discriminant(a)));
  EXPECT_EQ(stratum_classify(a).poly, unit_poly({1, 0, 0, 0, -1}));
}
