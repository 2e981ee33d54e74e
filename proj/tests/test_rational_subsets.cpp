#include <gtest/gtest.h>

#include "generators.hpp"
#include "tsl/tsl.hpp"

using namespace tsl;

namespace {

RationalSubset random_subset(gen::Rng& rng) {
  const int h = static_cast<int>(rng.integer(1, 8));
  std::vector<int> r;
  for (int e = 0; e < h; ++e)
    if (rng.coin()) r.push_back(e);
  std::set<long> add, rem;
  for (int i = 0; i < rng.integer(0, 3); ++i) add.insert(rng.integer(0, 20));
  for (int i = 0; i < rng.integer(0, 3); ++i) rem.insert(rng.integer(0, 20));
  for (long n : add) rem.erase(n);
  return RationalSubset(h, r, add, rem);
}

}  // namespace

TEST(RationalSubsets, Membership) {
  EXPECT_TRUE(RationalSubset::residue_class(2, 0).contains(4));
  EXPECT_FALSE(RationalSubset::residue_class(2, 1).contains(4));
  const RationalSubset u(3, {0}, {1}, {3});
  EXPECT_FALSE(u.contains(3));
  EXPECT_TRUE(u.contains(1));
  EXPECT_TRUE(u.contains(6));
  EXPECT_FALSE(u.contains(-3));
}

TEST(RationalSubsets, GeneratingFunctionExamples) {
  EXPECT_TRUE(equal(generating_function(RationalSubset::residue_class(2, 0)), {QPoly{1}, QPoly{1, 0, -1}}));
  EXPECT_TRUE(equal(generating_function(RationalSubset::residue_class(2, 1)), {QPoly{0, 1}, QPoly{1, 0, -1}}));
  const RationalSubset u(2, {0}, {1}, {0});
  const RationalFunction expected = RationalFunction::polynomial(QPoly{0, 1}) + RationalFunction{QPoly{0, 0, 1}, QPoly{1, 0, -1}};
  EXPECT_TRUE(equal(generating_function(u), expected));
  const auto t = taylor(generating_function(u), 15);
  for (int n = 0; n <= 15; ++n) EXPECT_EQ(t[static_cast<std::size_t>(n)], u.contains(n) ? 1 : 0) << n;
}

TEST(RationalSubsets, GeneratingFunctionAgreesWithMembership) {
  gen::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const RationalSubset u = random_subset(rng);
    const auto f = generating_function(u);
    EXPECT_LE(f.num.degree(), std::max<long>(u.period() - 1, u.max_exception() + u.period()));
    const int len = 4 * u.period() + static_cast<int>(u.added().size() + u.removed().size()) + static_cast<int>(u.max_exception()) + 1;
    const auto t = taylor(f, len);
    for (int n = 0; n <= len; ++n) ASSERT_EQ(t[static_cast<std::size_t>(n)], u.contains(n) ? 1 : 0) << n;
  }
}

TEST(RationalSubsets, NormalizationFindsMinimalPeriod) {
  EXPECT_EQ(RationalSubset(6, {0, 2, 4}).period(), 2);
  EXPECT_EQ(RationalSubset(6, {0, 3}).period(), 3);
  EXPECT_EQ(RationalSubset(4, {0, 1, 2, 3}).period(), 1);
  EXPECT_EQ(RationalSubset(6, {0, 1}).period(), 6);
  gen::Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    const RationalSubset u = random_subset(rng);
    const int h = u.period();
    for (int d = 1; d < h; ++d) {
      if (h % d) continue;
      bool periodic = true;
      for (int n = 0; n < h && periodic; ++n) periodic = u.in_residues(n) == u.in_residues(n + d);
      EXPECT_FALSE(periodic) << "period " << h << " shrinks to " << d;
    }
    for (long n : u.added()) EXPECT_FALSE(u.in_residues(n));
    for (long n : u.removed()) EXPECT_TRUE(u.in_residues(n));
  }
}

TEST(RationalSubsets, EqualityIsStructural) {
  EXPECT_EQ(RationalSubset(4, {1, 3}), RationalSubset(2, {1}));
  // exceptions that agree with the residues are dropped
  EXPECT_EQ(RationalSubset(2, {0}, {2}, {1}), RationalSubset(2, {0}));
}

TEST(RationalSubsets, ComplementAndIntersection) {
  gen::Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    const RationalSubset u = random_subset(rng);
    const RationalSubset c = u.complement();
    const int k = static_cast<int>(rng.integer(1, 5));
    const int e = static_cast<int>(rng.integer(0, k - 1));
    const RationalSubset x = u.intersect_class(k, e);
    for (long n = 0; n < 60; ++n) {
      EXPECT_NE(u.contains(n), c.contains(n));
      EXPECT_EQ(x.contains(n), u.contains(n) && n % k == e);
    }
  }
  EXPECT_EQ(RationalSubset(3, {0, 2}).density(), Rational(2, 3));
}

TEST(RationalSubsets, StandardPartition) {
  for (int h = 1; h <= 8; ++h) {
    const auto p = standard_partition(h);
    EXPECT_EQ(static_cast<int>(p.parts.size()), h);
    EXPECT_TRUE(p.exceptional.empty());
    EXPECT_EQ(partition_period(p), h);
    EXPECT_TRUE(is_valid_partition(p));
    RationalFunction sum = RationalFunction::polynomial(QPoly{});
    for (const auto& u : p.parts) sum = sum + generating_function(u);
    EXPECT_TRUE(equal(sum, {QPoly{1}, QPoly{1, -1}}));
  }
  const auto two = standard_partition(2);
  EXPECT_EQ(two.parts[0], RationalSubset::residue_class(2, 0));
  EXPECT_EQ(two.parts[1], RationalSubset::residue_class(2, 1));
  EXPECT_THROW(standard_partition(0), Error);
}

TEST(RationalSubsets, PartitionPeriodIsLcm) {
  RationalPartition p;
  p.parts = {RationalSubset(2, {0}), RationalSubset(6, {1, 5}), RationalSubset(6, {3})};
  EXPECT_TRUE(is_valid_partition(p));
  EXPECT_EQ(partition_period(p), 6);
  RationalPartition q;
  q.parts = {RationalSubset::all()};
  EXPECT_EQ(partition_period(q), 1);
  RationalPartition bad;
  bad.parts = {RationalSubset(2, {0}), RationalSubset(3, {0})};
  EXPECT_FALSE(is_valid_partition(bad));
}

TEST(RationalSubsets, PartitionWithExceptions) {
  RationalPartition p;
  p.parts = {RationalSubset(2, {0}, {}, {0, 4}), RationalSubset(2, {1})};
  EXPECT_FALSE(is_valid_partition(p));
  p.exceptional = {0, 4};
  EXPECT_TRUE(is_valid_partition(p));
}

TEST(RationalSubsets, ConstructorRejectsBadInput) {
  EXPECT_THROW(RationalSubset(0, {0}), Error);
  EXPECT_THROW(RationalSubset(2, {0}, {-1}), Error);
}
