#include <gtest/gtest.h>

#include "canimm/mathias.hpp"
#include "canimm/schnorr.hpp"
#include "oracles.hpp"

using namespace canimm;

TEST(Blocks, Examples) {
  EXPECT_EQ(block(1).elements(), (std::vector<std::uint64_t>{0}));
  EXPECT_EQ(block(2).elements(), (std::vector<std::uint64_t>{1, 2}));
  EXPECT_EQ(block(3).elements(), (std::vector<std::uint64_t>{3, 4, 5}));
  EXPECT_THROW(block(0), std::invalid_argument);
}

TEST(Blocks, PartitionUpToOneThousand) {
  std::uint64_t next = 0;
  for (std::uint64_t i = 1; i <= 1000; ++i) {
    EXPECT_EQ(block_start(i), next);
    EXPECT_EQ(block_end(i) - block_start(i), i);
    next = block_end(i);
  }
  EXPECT_EQ(next, 1000u * 1001u / 2u);
  for (std::uint64_t i = 1; i <= 40; ++i) {
    EXPECT_EQ(block(i).elements(), oracle::interval(i * (i - 1) / 2, i));
  }
}

TEST(InU, AllOnesAndAllZeros) {
  const std::uint64_t m = 8;
  const auto len = block_end(m);
  const auto ones = SetPrefix::from_bits(std::string(len, '1'));
  const auto zeros = SetPrefix::from_bits(std::string(len, '0'));
  for (std::uint64_t n = 0; n < m; ++n) {
    EXPECT_FALSE(in_U_n(ones, n, m).member);
    const auto z = in_U_n(zeros, n, m);
    EXPECT_TRUE(z.member);
    EXPECT_EQ(z.witness, n + 1);
  }
}

TEST(InU, ShortPrefixRejected) {
  const auto p = SetPrefix::from_bits(std::string(block_end(4) - 1, '1'));
  EXPECT_THROW(in_U_n(p, 0, 4), std::invalid_argument);
}

TEST(InU, LeastWitness) {
  // Members only in F_1, F_2 and F_4: F_3 is the first block missed.
  std::string bits(block_end(5), '0');
  for (std::uint64_t i : {1, 2, 4, 5}) bits[block_start(i)] = '1';
  const auto p = SetPrefix::from_bits(bits);
  EXPECT_EQ(in_U_n(p, 0, 5).witness, 3u);
  EXPECT_EQ(in_U_n(p, 2, 5).witness, 3u);
  EXPECT_FALSE(in_U_n(p, 3, 5).member);
}

TEST(InU, AvoidanceGenericFallsInEveryTest) {
  const Condition start{FiniteSet(), ComputableSet::omega()};
  const auto a = meet_avoidance(start, 6);
  const auto top = block_end(a.missed.back());
  const auto prefix = SetPrefix::from_members(a.condition.reservoir.below(top), top);
  for (std::uint64_t n = 0; n < a.missed.front(); ++n) {
    const auto u = in_U_n(prefix, n, a.missed.back());
    ASSERT_TRUE(u.member);
    EXPECT_NE(std::find(a.missed.begin(), a.missed.end(), *u.witness), a.missed.end());
  }
  for (std::size_t p = 0; p < a.missed.size(); ++p) {
    const auto u = in_U_n(prefix, a.missed[p] - 1, a.missed.back());
    ASSERT_TRUE(u.member);
    EXPECT_EQ(*u.witness, a.missed[p]);
  }
}

TEST(Measure, Examples) {
  EXPECT_EQ(measure_U_trunc(1, 2), DyadicRational(1, 2));
  EXPECT_EQ(measure_U_trunc(0, 2), DyadicRational(5, 3));
  EXPECT_EQ(measure_U_trunc(1, 3), DyadicRational(11, 5));
  EXPECT_EQ(measure_U_trunc(1, 2).to_string(), "1/2^2");
  EXPECT_THROW(measure_U_trunc(2, 2), std::invalid_argument);
  EXPECT_THROW(measure_U_trunc(3, 2), std::invalid_argument);
}

TEST(Measure, AgreesWithCylinderCounting) {
  for (std::uint64_t m = 1; m <= 6; ++m) {
    for (std::uint64_t n = 0; n < m; ++n) {
      const auto [count, bits] = oracle::brute_force_u_count(n, m);
      EXPECT_EQ(measure_U_trunc(n, m), DyadicRational(count, bits)) << n << "," << m;
    }
  }
}

TEST(Measure, BoundedAndMonotone) {
  for (std::uint64_t n = 0; n < 64; ++n) {
    DyadicRational prev;
    for (std::uint64_t m = n + 1; m <= 64; ++m) {
      const auto v = measure_U_trunc(n, m);
      EXPECT_LE(v, DyadicRational::inverse_power(n));
      EXPECT_LE(prev, v);
      prev = v;
    }
    // The exact value stays strictly below the bound.
    EXPECT_LT(prev, DyadicRational::inverse_power(n));
  }
}

TEST(SchnorrBound, Examples) {
  const auto a = check_schnorr_bound(1, 2);
  EXPECT_TRUE(a.holds);
  EXPECT_EQ(a.measure, DyadicRational(1, 2));
  EXPECT_EQ(a.bound, DyadicRational(1, 1));
  const auto b = check_schnorr_bound(0, 1);
  EXPECT_TRUE(b.holds);
  EXPECT_EQ(b.measure, DyadicRational(1, 1));
  EXPECT_EQ(b.bound, DyadicRational::one());
  const auto c = check_schnorr_bound(1, 64);
  EXPECT_TRUE(c.holds);
  EXPECT_TRUE(c.monotone);
}

TEST(Dyadic, CanonicalFormAndArithmetic) {
  const DyadicRational half(2, 2);
  EXPECT_EQ(half, DyadicRational(1, 1));
  EXPECT_EQ(half.numerator(), 1);
  EXPECT_EQ(half.exponent(), 1u);
  EXPECT_EQ(DyadicRational(0, 9), DyadicRational());
  EXPECT_EQ(half + half, DyadicRational::one());
  EXPECT_EQ(DyadicRational(3, 2) - half, DyadicRational(1, 2));
  EXPECT_EQ(DyadicRational(3, 2) * DyadicRational(7, 3), DyadicRational(21, 5));
  EXPECT_THROW(half - DyadicRational::one(), std::domain_error);
  EXPECT_LT(DyadicRational(1, 3), DyadicRational(1, 2));
  EXPECT_GT(DyadicRational(3, 2), half);
}

TEST(Dyadic, TextRoundTrip) {
  EXPECT_EQ(DyadicRational::one().to_string(), "1");
  EXPECT_EQ(DyadicRational(5, 3).to_string(), "5/2^3");
  EXPECT_EQ(DyadicRational::parse("11/2^5"), DyadicRational(11, 5));
  EXPECT_EQ(DyadicRational::parse("1"), DyadicRational::one());
  EXPECT_EQ(DyadicRational::parse("4/2^3"), DyadicRational(1, 1));
  for (std::uint64_t n = 0; n < 20; ++n) {
    const auto v = measure_U_trunc(n, n + 7);
    EXPECT_EQ(DyadicRational::parse(v.to_string()), v);
  }
  EXPECT_THROW(DyadicRational::parse("x/2^3"), std::invalid_argument);
}
