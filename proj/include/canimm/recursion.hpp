#pragma once

// s-m-n and the recursion theorem for the two-tier machine.

#include <vector>

#include "canimm/evaluator.hpp"

namespace canimm::machine {

// e' with {e'}(y..) = {e}(fixed.., y..), built syntactically from the code of
// e (e is neither decoded nor run).
ProgramCode smn(const ProgramCode& e, const std::vector<Natural>& fixed_args);

// Fixed point j of a total-tier code transformer g, built from the diagonal
// program u(x, y) = {{x}(x)}(y):
//
//   v = code of  x -> g(code of bind(x, u))
//   j = code of  bind(v, u)
//
// so {j}(y) runs u(v, y) = {g(j)}(y) after a fixed amount of work. Budget
// correspondence: for every s,
//   we_window(j, s, s + overhead) == we_bounded(g(j), s)
// and the same holds for oracle runs.
struct FixedPoint {
  ProgramCode j;
  ProgramCode image;       // g(j)
  StepBudget overhead = 0;

  StepBudget budget_for(StepBudget s) const {
    return s > kUnlimited - overhead ? kUnlimited : s + overhead;
  }
};

// Throws NotTotalTier when g has a partial-tier node.
FixedPoint fixed_point(const Tree& g);
FixedPoint fixed_point(const ProgramCode& g);

// The diagonal program u.
const Tree& diagonal_program();

}  // namespace canimm::machine
