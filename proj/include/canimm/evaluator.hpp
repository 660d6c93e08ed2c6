#pragma once

// Step-bounded evaluation.
//
// Cost model: every node visit costs one step; arithmetic primitives cost an
// extra step per 64-bit word of their result (so a budget also bounds
// memory); PrimRec pays one step per iteration; Univ pays one step per 64
// bits of the code it decodes; Clocked pays for every step its inner run
// used, or for its whole clock when the inner run does not halt. A query
// outside the oracle string hangs: it consumes the rest of the budget. A
// run converges at budget s iff its total cost is at most s, so outcomes
// are monotone in s.
//
// Sufficient budget for total-tier programs: sufficient_budget(p, x) is the
// exact cost of p on x, obtained by running it (total-tier programs halt).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "canimm/finite_set.hpp"
#include "canimm/program.hpp"

namespace canimm::machine {

using StepBudget = std::uint64_t;
inline constexpr StepBudget kUnlimited = ~StepBudget{0};

// Finite characteristic-function prefix used as an oracle.
class OracleString {
 public:
  OracleString() = default;
  // Characters must be '0' or '1'.
  explicit OracleString(std::string_view bits);

  static OracleString of_set(const FiniteSet& s, std::uint64_t length);
  // Code with a sentinel: 2^length + sum of bit_k 2^k.
  static OracleString from_code(const Natural& code);

  std::size_t size() const { return bits_.size(); }
  bool bit(std::size_t i) const { return bits_[i] == '1'; }
  const std::string& str() const { return bits_; }
  Natural code() const;

  OracleString operator+(const OracleString& rhs) const;
  bool is_prefix_of(const OracleString& other) const;

  friend bool operator==(const OracleString&, const OracleString&) = default;

 private:
  std::string bits_;
};

class PartialOutcome {
 public:
  static PartialOutcome diverged() { return PartialOutcome(); }
  static PartialOutcome converged(Natural v) { return PartialOutcome(std::move(v)); }

  bool is_converged() const { return value_.has_value(); }
  // Throws std::logic_error on a diverged outcome.
  const Natural& value() const;

  friend bool operator==(const PartialOutcome&, const PartialOutcome&) = default;

 private:
  PartialOutcome() = default;
  explicit PartialOutcome(Natural v) : value_(std::move(v)) {}
  std::optional<Natural> value_;
};

std::string to_string(const PartialOutcome& o);

struct Run {
  PartialOutcome outcome;
  StepBudget steps;  // cost charged; equals the budget when diverged
};

// Evaluation engine with a decode cache and a memo table. Memoised entries
// store the exact cost of the sub-run, so cached and uncached evaluation
// charge identical step counts. Not thread-safe; use one per thread.
class Evaluator {
 public:
  Evaluator();
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  Run run(const Tree& program, std::span<const Natural> args, StepBudget budget,
          const OracleString* oracle = nullptr);
  Run run(const ProgramCode& code, std::span<const Natural> args, StepBudget budget,
          const OracleString* oracle = nullptr);

  Tree program(const ProgramCode& code);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Thrown when nesting exceeds the interpreter's recursion limit.
class EvaluationDepthExceeded : public std::runtime_error {
 public:
  EvaluationDepthExceeded() : std::runtime_error("evaluation nesting limit exceeded") {}
};

// Thrown when a total-tier program is required.
class NotTotalTier : public std::invalid_argument {
 public:
  explicit NotTotalTier(const std::string& what) : std::invalid_argument(what) {}
};

PartialOutcome eval_bounded(const ProgramCode& e, std::span<const Natural> args, StepBudget s);
PartialOutcome eval_oracle_bounded(const ProgramCode& e, const OracleString& oracle,
                                   const Natural& n, StepBudget s);

// W_{e,s} (or W^oracle_{e,s}): { n < s : e halts on n within s steps }.
FiniteSet we_bounded(const ProgramCode& e, StepBudget s, const OracleString* oracle = nullptr);
// Same with the input range and the step budget decoupled.
FiniteSet we_window(const ProgramCode& e, std::uint64_t input_bound, StepBudget steps,
                    const OracleString* oracle = nullptr, Evaluator* shared = nullptr);

// Members of the window in enumeration order: by halting cost, ties by n.
std::vector<std::uint64_t> enumeration_order(const ProgramCode& e, std::uint64_t input_bound,
                                             StepBudget steps, const OracleString* oracle = nullptr);

bool is_total_tier(const ProgramCode& e);
void require_total_tier(const Tree& t, std::string_view what);

StepBudget sufficient_budget(const Tree& p, std::span<const Natural> args);
StepBudget sufficient_budget(const ProgramCode& p, std::span<const Natural> args);

// Value of a total-tier program, evaluated at its sufficient budget.
Natural eval_total(const Tree& p, std::span<const Natural> args, Evaluator* shared = nullptr);
Natural eval_total(const ProgramCode& p, std::span<const Natural> args,
                   Evaluator* shared = nullptr);
Natural eval_total(const Tree& p, std::initializer_list<Natural> args,
                   Evaluator* shared = nullptr);

}  // namespace canimm::machine
