#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "canimm/codec.hpp"
#include "canimm/evaluator.hpp"
#include "canimm/recursion.hpp"
#include "oracles.hpp"
#include "random_programs.hpp"

using namespace canimm;
using namespace canimm::machine;
using namespace canimm::machine::dsl;

using testgen::random_expr;

TEST(Pairing, ChosenFormulaValues) {
  EXPECT_EQ(pair(std::uint64_t{0}, std::uint64_t{0}), 0u);
  EXPECT_EQ(pair(std::uint64_t{1}, std::uint64_t{0}), 1u);
  EXPECT_EQ(pair(std::uint64_t{0}, std::uint64_t{1}), 2u);
  EXPECT_EQ(pair(std::uint64_t{1}, std::uint64_t{1}), 4u);
  // (x + y)(x + y + 1)/2 + y = 7 forces x + y = 3, y = 1.
  EXPECT_EQ(unpair(std::uint64_t{7}), std::make_pair(std::uint64_t{2}, std::uint64_t{1}));
  EXPECT_EQ(unpair(std::uint64_t{4}), std::make_pair(std::uint64_t{1}, std::uint64_t{1}));
}

TEST(Pairing, MatchesDiagonalWalk) {
  for (std::uint64_t x = 0; x < 40; ++x) {
    for (std::uint64_t y = 0; y < 40; ++y) {
      EXPECT_EQ(pair(x, y), oracle::pair_by_walk(x, y));
    }
  }
  for (std::uint64_t p = 0; p < 2000; ++p) EXPECT_EQ(unpair(p), oracle::unpair_by_search(p));
}

TEST(Pairing, BigNaturalsRoundTrip) {
  const Natural x = pow2(100) + 12345, y = pow2(77) + 3;
  const auto [a, b] = unpair(pair(x, y));
  EXPECT_EQ(a, x);
  EXPECT_EQ(b, y);
}

TEST(Codec, EveryNaturalIsACode) {
  for (std::uint64_t c = 0; c < 3000; ++c) {
    const Tree t = decode(ProgramCode{Natural(c)});
    if (well_formed(ProgramCode{Natural(c)})) {
      EXPECT_EQ(encode(t).value, Natural(c));
    } else {
      EXPECT_TRUE(trees_equal(*t, *always_diverge()));
    }
  }
}

TEST(Codec, RandomTreesRoundTrip) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto e = random_expr(rng, 4);
    const auto code = encode(e.tree);
    EXPECT_TRUE(trees_equal(*decode(code), *e.tree));
    EXPECT_EQ(encode(decode(code)), code);
  }
}

TEST(Codec, DisassemblyHasOneLinePerNode) {
  const Tree t = add(arg(0), lit(3));
  const auto text = disassemble(t);
  EXPECT_EQ(static_cast<std::uint64_t>(std::count(text.begin(), text.end(), '\n')), t->size);
  EXPECT_NE(disassemble(ProgramCode{Natural(2)}).find("ill-formed"), std::string::npos);
}

TEST(Eval, SmallPrograms) {
  EXPECT_EQ(eval_bounded(encode(arg(0)), std::vector<Natural>{5}, 10), PartialOutcome::converged(5));
  EXPECT_EQ(eval_bounded(encode(succ(arg(0))), std::vector<Natural>{7}, 10),
            PartialOutcome::converged(8));
  const Tree never = mu(lit(1));
  EXPECT_FALSE(eval_bounded(encode(never), std::vector<Natural>{0}, 1000).is_converged());
}

TEST(Eval, OracleExamples) {
  EXPECT_EQ(eval_oracle_bounded(encode(query(lit(0))), OracleString("1"), 0, 10),
            PartialOutcome::converged(1));
  EXPECT_FALSE(eval_oracle_bounded(encode(query(lit(3))), OracleString("10"), 0, 10).is_converged());
  EXPECT_EQ(eval_oracle_bounded(encode(arg(0)), OracleString(""), 4, 10),
            PartialOutcome::converged(4));
}

TEST(Eval, WeBoundedExamples) {
  EXPECT_TRUE(we_bounded(encode(always_diverge()), 100).empty());
  EXPECT_EQ(we_bounded(encode(arg(0)), 5), FiniteSet::from_elements({0, 1, 2, 3, 4}));
  const OracleString o("101");
  EXPECT_EQ(we_bounded(encode(halt_if(query(arg(0)))), 50, &o), FiniteSet::from_elements({0, 2}));
}

TEST(Eval, RandomExpressionsMatchNativeValues) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const auto e = random_expr(rng, 3);
    const std::uint64_t x = rng() % 12, y = rng() % 12;
    EXPECT_EQ(eval_total(e.tree, std::vector<Natural>{x, y}), Natural(e.native(x, y)))
        << disassemble(e.tree);
  }
}

TEST(Eval, ChargedCostIsExact) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 60; ++k) {
    const auto e = random_expr(rng, 3);
    const std::vector<Natural> args{rng() % 10, rng() % 10};
    Evaluator ev;
    const auto full = ev.run(e.tree, args, kUnlimited);
    ASSERT_TRUE(full.outcome.is_converged());
    Evaluator a, b;
    EXPECT_TRUE(a.run(e.tree, args, full.steps).outcome.is_converged());
    EXPECT_FALSE(b.run(e.tree, args, full.steps - 1).outcome.is_converged());
    // A warm memo charges the same cost.
    EXPECT_EQ(ev.run(e.tree, args, kUnlimited).steps, full.steps);
  }
}

TEST(Eval, BudgetMonotone) {
  std::mt19937_64 rng(7);
  const Tree search = mu(monus(lit(5), add(arg(0), arg(1))));
  for (int k = 0; k < 100; ++k) {
    const auto e = random_expr(rng, 3);
    const Tree t = (k % 4 == 0) ? search : e.tree;
    const std::vector<Natural> args{rng() % 8, rng() % 8};
    std::optional<Natural> seen;
    for (StepBudget s = 0; s < 400; s += 7) {
      const auto out = eval_bounded(encode(t), args, s);
      if (seen) {
        ASSERT_TRUE(out.is_converged());
        EXPECT_EQ(out.value(), *seen);
      } else if (out.is_converged()) {
        seen = out.value();
      }
    }
  }
}

TEST(Eval, WeMonotoneInBudget) {
  const auto e = encode(halt_if(lt(mul(arg(0), arg(0)), lit(400))));
  FiniteSet prev;
  for (StepBudget s = 1; s < 200; s += 3) {
    const auto w = we_bounded(e, s);
    EXPECT_TRUE(prev.subset_of(w));
    prev = w;
  }
}

TEST(Eval, OraclePersistence) {
  const auto e = encode(halt_if(bit_or(query(arg(0)), query(succ(arg(0))))));
  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) {
    const auto bits = oracle::random_bits(rng, 6);
    const OracleString base(bits), longer(bits + oracle::random_bits(rng, 5));
    for (std::uint64_t n = 0; n < 8; ++n) {
      const auto a = eval_oracle_bounded(e, base, n, 200);
      if (a.is_converged()) EXPECT_EQ(eval_oracle_bounded(e, longer, n, 200), a);
    }
  }
}

TEST(Eval, QueryOutsideOracleDivergesWholeRun) {
  // The out-of-range query sits inside a branch whose value is discarded.
  const auto e = encode(add(mul(lit(0), query(lit(9))), arg(0)));
  EXPECT_FALSE(eval_oracle_bounded(e, OracleString("1"), 3, 1000).is_converged());
}

TEST(Eval, ClockedReportsConvergence) {
  const auto inner = encode(halt_if(query(arg(0))));
  const Tree probe = clocked(lit(inner.value), lit(OracleString("01").code()), arg(0), lit(100));
  EXPECT_EQ(eval_total(probe, std::vector<Natural>{0}), 0);
  EXPECT_EQ(eval_total(probe, std::vector<Natural>{1}), 1);
  EXPECT_EQ(eval_total(probe, std::vector<Natural>{5}), 0);
}

TEST(Eval, TotalTierChecks) {
  EXPECT_TRUE(is_total_tier(encode(add(arg(0), lit(1)))));
  EXPECT_FALSE(is_total_tier(encode(mu(arg(0)))));
  EXPECT_THROW(require_total_tier(query(lit(0)), "test"), NotTotalTier);
  EXPECT_THROW(eval_total(mu(arg(0)), std::vector<Natural>{1}), NotTotalTier);
}

TEST(Smn, FixedFirstArgument) {
  const auto addition = encode(add(arg(0), arg(1)));
  const auto first = encode(arg(0));
  for (std::uint64_t y = 0; y <= 10; ++y) {
    const std::vector<Natural> ys{y};
    EXPECT_EQ(eval_bounded(smn(addition, {0}), ys, 1000), PartialOutcome::converged(y));
    EXPECT_EQ(eval_bounded(smn(addition, {3}), ys, 1000), PartialOutcome::converged(3 + y));
    EXPECT_EQ(eval_bounded(smn(first, {9}), ys, 1000), PartialOutcome::converged(9));
  }
}

TEST(Smn, AgreesWithDirectEvaluation) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 200; ++k) {
    const auto e = random_expr(rng, 3);
    const auto code = encode(e.tree);
    const std::uint64_t a = rng() % 10, y = rng() % 10;
    const auto bound = smn(code, {a});
    EXPECT_EQ(eval_bounded(bound, std::vector<Natural>{y}, 10'000'000),
              eval_bounded(code, std::vector<Natural>{a, y}, 10'000'000));
  }
}

TEST(Smn, BindCodeProgramComputesBindCode) {
  const auto f = encode(add(arg(0), arg(1)));
  const Tree p = bind_code_program(f);
  for (std::uint64_t x : {0, 1, 2, 77, 1000000}) {
    EXPECT_EQ(eval_total(p, std::vector<Natural>{x}), bind_code(x, f).value);
  }
}

TEST(FixedPoint, IdentityTransformer) {
  const auto fp = fixed_point(arg(0));
  EXPECT_EQ(fp.image, fp.j);
}

TEST(FixedPoint, ConstantTransformerAgreesOnGrid) {
  const auto c = encode(halt_if(lt(arg(0), lit(7))));
  const auto fp = fixed_point(lit(c.value));
  EXPECT_EQ(fp.image, c);
  for (StepBudget s : {10, 100, 1000}) {
    EXPECT_EQ(we_window(fp.j, s, fp.budget_for(s)), we_bounded(c, s)) << "s=" << s;
  }
  EXPECT_EQ(we_bounded(c, 1000), FiniteSet::interval(0, 7));
}

TEST(FixedPoint, DivergingTransformer) {
  const auto fp = fixed_point(lit(encode(always_diverge()).value));
  for (StepBudget s : {10, 100, 1000}) {
    EXPECT_TRUE(we_window(fp.j, s, fp.budget_for(s)).empty());
  }
}

TEST(FixedPoint, RejectsPartialTransformer) {
  EXPECT_THROW(fixed_point(mu(arg(0))), NotTotalTier);
}
