#include <gtest/gtest.h>

#include "canimm/checkers.hpp"
#include "canimm/codec.hpp"
#include "canimm/mathias.hpp"
#include "canimm/schnorr.hpp"
#include "oracles.hpp"

using namespace canimm;
using namespace canimm::machine::dsl;

namespace {

Condition cond(std::vector<std::uint64_t> stem, ComputableSet reservoir) {
  return Condition{FiniteSet::from_elements(std::move(stem)), std::move(reservoir)};
}

std::vector<std::uint64_t> first(const ComputableSet& a, std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 0; k < n; ++k) out.push_back(a.at(k));
  return out;
}

}  // namespace

TEST(ComputableSets, BasicEnumerators) {
  EXPECT_EQ(first(ComputableSet::omega(), 4), (std::vector<std::uint64_t>{0, 1, 2, 3}));
  EXPECT_EQ(first(ComputableSet::evens(), 4), (std::vector<std::uint64_t>{0, 2, 4, 6}));
  EXPECT_EQ(first(ComputableSet::odds(), 4), (std::vector<std::uint64_t>{1, 3, 5, 7}));
  EXPECT_EQ(first(ComputableSet::odds().drop(2), 2), (std::vector<std::uint64_t>{5, 7}));
  const auto evens = ComputableSet::evens();
  EXPECT_TRUE(evens.contains(10));
  EXPECT_FALSE(evens.contains(11));
  EXPECT_EQ(evens.rank(7), 4u);
  EXPECT_EQ(evens.below(9), (std::vector<std::uint64_t>{0, 2, 4, 6, 8}));
}

TEST(ComputableSets, RejectsBadEnumerators) {
  EXPECT_THROW(ComputableSet(mu(arg(0))), machine::NotTotalTier);
  const ComputableSet flat(lit(3));
  EXPECT_THROW(flat.at(1), std::logic_error);
}

TEST(ComputableSets, FromCharacteristic) {
  const Tree multiple_of_three = is_zero(mod(arg(0), lit(3)));
  const auto a = ComputableSet::from_characteristic(multiple_of_three, add(arg(0), lit(3)));
  EXPECT_EQ(first(a, 5), (std::vector<std::uint64_t>{0, 3, 6, 9, 12}));
  EXPECT_TRUE(characteristic_witnessed(a, multiple_of_three, 50));
  // A gap that is too small is caught by the witness check.
  const auto bad = ComputableSet::from_characteristic(multiple_of_three, add(arg(0), lit(1)));
  EXPECT_FALSE(characteristic_witnessed(bad, multiple_of_three, 5));
}

TEST(Extends, Examples) {
  const auto evens = ComputableSet::evens();
  const auto c = cond({}, evens);
  EXPECT_TRUE(extends(c, c, 1000).holds);
  EXPECT_TRUE(extends(cond({0, 2}, evens.drop(2)), c, 1000).holds);
  const auto bad = extends(cond({1}, evens.drop(2)), c, 1000);
  EXPECT_FALSE(bad.holds);
  EXPECT_FALSE(bad.failed.empty());
  EXPECT_FALSE(extends(cond({}, ComputableSet::omega()), c, 1000).holds);
  EXPECT_EQ(extends(c, c, 77).horizon, 77u);
}

TEST(MeetSize, Examples) {
  const auto omega = cond({}, ComputableSet::omega());
  const auto same = meet_size(cond({4}, ComputableSet::omega().drop(5)), 1);
  EXPECT_EQ(same.stem, FiniteSet::from_elements({4}));
  EXPECT_EQ(same.reservoir.at(0), 5u);

  const auto two = meet_size(omega, 2);
  EXPECT_EQ(two.stem, FiniteSet::from_elements({0, 1}));
  EXPECT_EQ(two.reservoir.at(0), 2u);

  const auto odd = meet_size(cond({5}, ComputableSet::odds().drop(3)), 3);
  EXPECT_EQ(odd.stem, FiniteSet::from_elements({5, 7, 9}));
  EXPECT_EQ(odd.reservoir.at(0), 11u);
  EXPECT_TRUE(extends(odd, cond({5}, ComputableSet::odds().drop(3)), 1000).holds);
}

TEST(Thin, EmptyNumberingKeepsReservoir) {
  Registry r;
  const auto& d = r.register_numbering(lit(0));
  const auto c = cond({}, ComputableSet::evens());
  const auto t = thin_for_numbering(c, d, 16);
  EXPECT_EQ(first(t.reservoir, 16), first(c.reservoir, 16));
}

TEST(Thin, SingletonNumberingDropsZero) {
  const auto pool = default_pool();
  const auto t = thin_for_numbering(cond({}, ComputableSet::omega()), pool[1], 16);
  EXPECT_EQ(first(t.reservoir, 6), (std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6}));
}

TEST(Thin, DensityForEveryPoolNumbering) {
  const auto pool = default_pool();
  const std::vector<Condition> starts{cond({}, ComputableSet::omega()),
                                      cond({}, ComputableSet::evens()),
                                      cond({0, 3}, ComputableSet::omega().drop(4))};
  for (const auto& d : pool.entries()) {
    for (const auto& c : starts) {
      const std::uint64_t count = 12;
      const auto t = thin_for_numbering(c, d, count);
      const auto k = c.stem.size();
      EXPECT_TRUE(thinning_violations(t, d, k, k + count).empty()) << "pool " << d.id;
      EXPECT_TRUE(extends(t, c, 1000).holds);
      EXPECT_TRUE(t.valid());
    }
  }
}

TEST(Thin, ViolationsAreFoundWithoutThinning) {
  const auto pool = default_pool();
  // Lower intervals [0, i] sit inside omega and have i + 1 elements.
  const auto v = thinning_violations(cond({}, ComputableSet::omega()), pool[3], 0, 5);
  EXPECT_EQ(v, (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5}));
}

TEST(Avoidance, HandRunFromOmega) {
  const auto a = meet_avoidance(cond({}, ComputableSet::omega()), 3);
  EXPECT_EQ(first(a.condition.reservoir, 3), (std::vector<std::uint64_t>{1, 6, 15}));
  EXPECT_EQ(a.missed, (std::vector<std::uint64_t>{1, 3, 5}));
}

TEST(Avoidance, CountZeroIsIdentity) {
  const auto c = cond({2}, ComputableSet::evens().drop(2));
  const auto a = meet_avoidance(c, 0);
  EXPECT_TRUE(a.missed.empty());
  EXPECT_EQ(a.condition.reservoir.at(0), 4u);
}

TEST(Avoidance, MissedBlocksAreAvoided) {
  const auto c = cond({0, 4}, ComputableSet::odds().drop(3));
  const auto a = meet_avoidance(c, 8);
  for (std::size_t p = 1; p < a.missed.size(); ++p) EXPECT_LT(a.missed[p - 1], a.missed[p]);
  EXPECT_GT(block_start(a.missed.front()), c.stem.max());
  const auto top = block_end(a.missed.back());
  for (auto i : a.missed) {
    const auto missed_block = block(i);
    for (auto x : missed_block.elements()) {
      EXPECT_FALSE(a.condition.reservoir.contains(x));
      EXPECT_FALSE(a.condition.stem.contains(x));
    }
  }
  EXPECT_TRUE(extends(a.condition, c, top + 100).holds);
}

TEST(MeetDeh, DivergingCodeIsUnresolved) {
  const auto c = cond({}, ComputableSet::omega());
  const auto m = meet_D_eh(c, machine::encode(machine::always_diverge()), lit(0), 60);
  EXPECT_FALSE(m.met);
  EXPECT_EQ(m.clause, "unresolved");
  EXPECT_EQ(m.largest_seen, 0u);
}

TEST(MeetDeh, OracleOnesIsMet) {
  const auto c = cond({}, ComputableSet::omega());
  const auto e = machine::encode(halt_if(query(arg(0))));
  const auto m = meet_D_eh(c, e, lit(0), 200);
  ASSERT_TRUE(m.met);
  EXPECT_EQ(m.clause, "clause1");
  ASSERT_TRUE(m.fixed_point.has_value());
  EXPECT_EQ(m.w_j.size(), 1u);
  EXPECT_TRUE(m.w_j.subset_of(m.w_oracle));
  EXPECT_GT(m.w_j.size(), m.h_j);
  EXPECT_EQ(m.w_j, m.w_image);
  // Independent re-read of W^{chi_b}_{e,t}.
  const auto chi = characteristic_string(m.condition.stem);
  EXPECT_EQ(machine::we_window(e, m.clock, m.clock, &chi), m.w_oracle);
  EXPECT_TRUE(extends(m.condition, c, 1000).holds);
  EXPECT_TRUE(m.condition.valid());
}

TEST(MeetDeh, MetFromNonTrivialStem) {
  const auto c = cond({1}, ComputableSet::evens().drop(1));
  const auto e = machine::encode(halt_if(query(arg(0))));
  const auto m = meet_D_eh(c, e, lit(1), 400);
  ASSERT_TRUE(m.met);
  EXPECT_GT(m.w_j.size(), 1u);
  EXPECT_TRUE(m.w_j.subset_of(m.condition.stem));
  EXPECT_TRUE(extends(m.condition, c, 1000).holds);
}

TEST(CharacteristicString, Shape) {
  EXPECT_EQ(characteristic_string(FiniteSet()).str(), "");
  EXPECT_EQ(characteristic_string(FiniteSet::from_elements({0, 3})).str(), "1001");
}

TEST(Generic, EmptySchedule) {
  const auto start = cond({2}, ComputableSet::omega().drop(3));
  const auto run = build_generic(start, {});
  ASSERT_EQ(run.chain.size(), 1u);
  EXPECT_EQ(run.prefix.principal(), (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(run.prefix.length(), 3u);
}

TEST(Generic, PromotionsOnly) {
  const auto run = build_generic(cond({}, ComputableSet::omega()), {size_step(1), size_step(2)});
  EXPECT_EQ(run.prefix.principal(), (std::vector<std::uint64_t>{0, 1}));
  EXPECT_EQ(run.chain.size(), 3u);
}

TEST(Generic, ThinThenGrowPassesImmunity) {
  const auto pool = default_pool();
  for (const auto& d : pool.entries()) {
    const auto run =
        build_generic(cond({}, ComputableSet::omega()), {thin_step(d, 16), size_step(8)});
    EXPECT_EQ(run.prefix.principal().size(), 8u);
    Registry single;
    single.register_numbering(d.rule);
    const auto v = check_canonical_immunity(run.prefix, arg(0), single, {0}, 8);
    EXPECT_FALSE(v.failed()) << "pool " << d.id;
  }
}

TEST(Generic, ChainMonotoneAndStemsPersist) {
  const auto pool = default_pool();
  std::vector<Transformer> schedule;
  for (const auto& d : pool.entries()) schedule.push_back(thin_step(d, 16));
  schedule.push_back(avoidance_step(5));
  GenericOptions options;
  options.stem_growth = 2;
  const auto run = build_generic(cond({}, ComputableSet::omega()), schedule, options);
  for (std::size_t k = 1; k < run.chain.size(); ++k) {
    const auto& child = run.chain[k].step.condition;
    const auto& parent = run.chain[k - 1].step.condition;
    EXPECT_TRUE(extends(child, parent, 1000).holds) << run.chain[k].name;
    EXPECT_TRUE(parent.stem.subset_of(child.stem));
  }
  for (auto x : run.chain.back().step.condition.stem.elements()) EXPECT_TRUE(run.prefix.contains(x));
  EXPECT_EQ(run.prefix.principal().size(), 2 * schedule.size());
}

TEST(Generic, ViolationNamesTheStep) {
  const auto pool = default_pool();
  Transformer grab{"grab", [](const Condition& c) {
                     auto stem = c.stem.elements();
                     stem.push_back(1);
                     return StepResult{Condition{FiniteSet::from_elements(stem),
                                                 c.reservoir.drop(c.reservoir.rank(2))},
                                       "", {}, {}, {}};
                   }};
  try {
    build_generic(cond({}, ComputableSet::omega()), {thin_step(pool[4], 4), grab});
    FAIL() << "expected an extension violation";
  } catch (const ExtensionViolation& ex) {
    EXPECT_EQ(ex.step(), 2u);
    EXPECT_NE(std::string(ex.what()).find("grab"), std::string::npos);
  }
}
