#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "canimm/codec.hpp"
#include "canimm/numbering.hpp"
#include "oracles.hpp"

using namespace canimm;
using namespace canimm::machine::dsl;

TEST(FiniteSetCodes, Examples) {
  EXPECT_EQ(encode_finite_set({}).code(), 0);
  EXPECT_EQ(encode_finite_set({0, 2}).code(), 5);
  EXPECT_EQ(decode_finite_set(8).elements(), (std::vector<std::uint64_t>{3}));
  EXPECT_THROW(FiniteSet().max(), std::domain_error);
}

TEST(FiniteSetCodes, BijectionOnSmallCodes) {
  for (std::uint64_t c = 0; c < 4096; ++c) {
    const auto s = decode_finite_set(c);
    EXPECT_EQ(s.elements(), oracle::bits_of(c));
    EXPECT_EQ(encode_finite_set(s.elements()).code(), c);
    EXPECT_EQ(FiniteSet::parse(s.to_string()), s);
  }
}

TEST(FiniteSetCodes, LargeElements) {
  const auto s = FiniteSet::from_elements({1000, 3, 70});
  EXPECT_EQ(s.code(), pow2(1000) + pow2(70) + pow2(3));
  EXPECT_EQ(s.to_string(), "[3,70,1000]");
  EXPECT_EQ(s.max(), 1000u);
}

TEST(StandardNumbering, Examples) {
  EXPECT_TRUE(standard_numbering(0).empty());
  EXPECT_EQ(standard_numbering(5), FiniteSet::from_elements({0, 2}));
  EXPECT_EQ(standard_numbering(6), FiniteSet::from_elements({1, 2}));
}

TEST(StageApprox, Examples) {
  const auto diverge = machine::encode(machine::always_diverge());
  const auto identity = machine::encode(arg(0));
  EXPECT_TRUE(stage_approx(diverge, 3, 10000).empty());
  EXPECT_EQ(stage_approx(identity, 5, 1000), FiniteSet::from_elements({0, 2}));
  EXPECT_TRUE(stage_approx(identity, 5, 0).empty());
}

TEST(StageApprox, StableAfterConvergence) {
  const auto e = machine::encode(interval_rule(arg(0), succ(arg(0))));
  for (std::uint64_t i = 0; i < 20; ++i) {
    FiniteSet first;
    bool converged = false;
    for (StepBudget s = 0; s < 300; ++s) {
      const auto v = stage_approx(e, i, s);
      if (converged) {
        EXPECT_EQ(v, first);
      } else if (!v.empty()) {
        converged = true;
        first = v;
      }
    }
    EXPECT_TRUE(converged);
    EXPECT_EQ(first.elements(), oracle::interval(i, i + 1));
  }
}

TEST(Registry, Examples) {
  Registry r;
  EXPECT_EQ(r.register_numbering(standard_rule()).id, 0u);
  const auto& singleton = r.register_numbering(singleton_rule());
  EXPECT_EQ(singleton.id, 1u);
  EXPECT_EQ(singleton.at(4), FiniteSet::from_elements({4}));
  const auto& again = r.register_numbering(singleton_rule());
  EXPECT_EQ(again.id, 2u);
  for (std::uint64_t i = 0; i < 30; ++i) EXPECT_EQ(r[1].at(i), r[2].at(i));
  EXPECT_THROW(r.register_numbering(mu(arg(0))), machine::NotTotalTier);
}

TEST(Registry, WriteReadRoundTrip) {
  const auto pool = default_pool();
  std::stringstream ss;
  pool.write(ss);
  const auto back = Registry::read(ss);
  ASSERT_EQ(back.size(), pool.size());
  for (std::size_t k = 0; k < pool.size(); ++k) {
    EXPECT_EQ(back[k].rule, pool[k].rule);
    EXPECT_EQ(back[k].surjective, pool[k].surjective);
  }
}

TEST(DefaultPool, MatchesNativeFormulas) {
  const auto pool = default_pool();
  ASSERT_EQ(pool.size(), 6u);
  machine::Evaluator ev;
  for (std::uint64_t id = 0; id < pool.size(); ++id) {
    for (std::uint64_t i = 0; i < 60; ++i) {
      EXPECT_EQ(pool[id].at(i, &ev).elements(), oracle::default_pool_value(id, i))
          << "id " << id << " i " << i;
    }
  }
}

TEST(DefaultPool, MembershipAndMaxAgreeWithDecoding) {
  const auto pool = default_pool();
  machine::Evaluator ev;
  for (const auto& d : pool.entries()) {
    for (std::uint64_t i = 0; i <= 1000; i += (i < 40 ? 1 : 37)) {
      const auto v = d.at(i, &ev);
      if (v.empty()) {
        EXPECT_THROW(d.max(i, &ev), std::domain_error);
        continue;
      }
      EXPECT_EQ(d.max(i, &ev), v.max());
      for (std::uint64_t x : {v.min(), v.max(), v.max() + 1}) {
        EXPECT_EQ(d.contains(i, x, &ev), v.contains(x)) << d.id << ":" << i << ":" << x;
      }
    }
  }
}

TEST(Adversarial, DesignatedIndexSeven) {
  const auto d = default_pool()[5];
  EXPECT_TRUE(adversarial_designated(7));
  EXPECT_EQ(d.at(7), FiniteSet::interval(14, 8));
}

TEST(Adversarial, InequalitiesAndStandardInterleave) {
  const Tree fs[] = {lit(0), arg(0), add(mul(arg(0), arg(0)), lit(1))};
  for (const auto& f : fs) {
    Registry r;
    const auto& d = r.register_numbering(adversarial_rule(f), true);
    machine::Evaluator ev;
    std::uint64_t prev_end = 0;
    for (std::uint64_t i = 0; i < 80; ++i) {
      const auto v = d.at(i, &ev);
      if (!adversarial_designated(i)) {
        EXPECT_EQ(v, standard_numbering(i / 2));
        continue;
      }
      const auto fi = machine::eval_total(f, std::vector<Natural>{i});
      EXPECT_GT(v.min(), i);
      EXPECT_GT(Natural(v.size()), fi);
      EXPECT_GE(v.min(), prev_end);
      EXPECT_EQ(v.max() - v.min() + 1, v.size());
      prev_end = v.max() + 1;
      const auto [lo, hi] = adversarial_block(f, i, &ev);
      EXPECT_EQ(lo, v.min());
      EXPECT_EQ(hi, v.max() + 1);
    }
  }
}

TEST(WitnessNumbering, Examples) {
  Registry r;
  const auto& empty = r.register_numbering(witness_rule(lit(0)));
  for (std::uint64_t m = 0; m < 20; ++m) {
    EXPECT_TRUE(empty.at(2 * m).empty());
    EXPECT_EQ(empty.at(2 * m + 1), standard_numbering(m));
  }
  const auto& diag = r.register_numbering(witness_rule(pow2(arg(0))));
  for (std::uint64_t i = 0; i < 4; ++i) {
    for (std::uint64_t n = 0; n < 4; ++n) {
      const auto p = pair(i, n);
      EXPECT_EQ(diag.at(2 * p), FiniteSet::from_elements({p}));
    }
  }
}

TEST(WitnessNumbering, TableRule) {
  Registry r;
  const std::vector<std::pair<std::uint64_t, FiniteSet>> table{
      {0, FiniteSet::from_elements({3})}, {4, FiniteSet::from_elements({1, 9})}};
  const auto& d = r.register_numbering(witness_rule(table_rule(table)));
  EXPECT_EQ(d.at(0), table[0].second);
  EXPECT_EQ(d.at(8), table[1].second);
  EXPECT_TRUE(d.at(2).empty());
  EXPECT_EQ(d.at(9), standard_numbering(4));
}
