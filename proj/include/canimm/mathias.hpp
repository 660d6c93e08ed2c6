#pragma once

// Computable Mathias conditions [a, A] and transformers that move a
// condition into one of the dense families.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "canimm/computable_set.hpp"
#include "canimm/finite_set.hpp"
#include "canimm/numbering.hpp"
#include "canimm/recursion.hpp"
#include "canimm/set_prefix.hpp"

namespace canimm {

struct Condition {
  FiniteSet stem;
  ComputableSet reservoir;

  // max(stem) < min(reservoir)
  bool valid() const;
};

struct ExtendsVerdict {
  bool holds = false;
  std::uint64_t horizon = 0;  // reservoir inclusion checked on values below this
  std::string failed;         // which clause failed, empty when holds
};

// a ⊆ b, b \ a ⊆ A, and B ⊆ A on members below the horizon.
ExtendsVerdict extends(const Condition& child, const Condition& parent, std::uint64_t horizon);

// Promotes the first (n - |a|)+ reservoir members into the stem.
Condition meet_size(const Condition& c, std::uint64_t n);

// Reservoir B(m) = A(n_{|a|+1+m}) where n_i is least above n_{i-1} with
// A(n_i) outside D(|a|) ∪ .. ∪ D(i-1). The result satisfies
// "D(i) ⊆ a ∪ B implies |D(i)| <= i" for every i >= |a|. The first `count`
// members of B are materialised (and checked to increase).
Condition thin_for_numbering(const Condition& c, const Numbering& d, std::uint64_t count);

// Indices i in [first, last] where D(i) ⊆ a ∪ A but |D(i)| > i. The
// reservoir is enumerated up to max D(i).
std::vector<std::uint64_t> thinning_violations(const Condition& c, const Numbering& d,
                                               std::uint64_t first, std::uint64_t last);

struct AvoidanceResult {
  Condition condition;
  std::vector<std::uint64_t> missed;  // block indices i_0 < i_1 < .. that B misses
};

// Greedy: i_0 is the least block above max(a); then x = least member of A
// above F_{i_p}, and i_{p+1} = least block starting above x. Records
// `count` missed blocks; count = 0 returns c unchanged.
AvoidanceResult meet_avoidance(const Condition& c, std::uint64_t count);

struct MeetOutcome {
  explicit MeetOutcome(Condition input) : condition(std::move(input)) {}

  bool met = false;
  Condition condition;                  // the input when not met
  std::string clause;                   // "clause1" or "unresolved"
  std::uint64_t largest_seen = 0;       // max |W^{chi_b}_{e,t}| observed
  std::optional<machine::FixedPoint> fixed_point;
  FiniteSet added;                      // rho(j)
  std::uint64_t clock = 0;              // t: the stage W^{chi_b}_e is read at
  FiniteSet w_j;                        // W_j read at the correspondence budget
  FiniteSet w_image;                    // W_{g(j)}
  FiniteSet w_oracle;                   // W^{chi_b}_{e,t}
  std::uint64_t h_j = 0;
};

// Density argument for the family D_{e,h}: searches z = <c, t> < budget for
// b = a ∪ {A(k) : bit k of c} with |W^{chi_b}_{e,t}| > h(j), where j is the
// fixed point of i -> (code of the program enumerating the h(i)+1 smallest
// such elements). Met results carry both clause-1 conjuncts checked by
// direct enumeration.
MeetOutcome meet_D_eh(const Condition& c, const ProgramCode& e, const Tree& h,
                      std::uint64_t budget);

// Characteristic string of a finite set: length max + 1 (empty for ∅).
machine::OracleString characteristic_string(const FiniteSet& b);

// ---------------------------------------------------------------- generic chains

struct StepResult {
  Condition condition;
  std::string note;
  std::vector<std::uint64_t> missed;        // avoidance steps
  std::optional<std::uint64_t> numbering;   // thinning steps: numbering id
  std::optional<std::uint64_t> from_index;  // thinning steps: |a| at the time
};

struct Transformer {
  std::string name;
  std::function<StepResult(const Condition&)> apply;
};

Transformer size_step(std::uint64_t n);
Transformer thin_step(const Numbering& d, std::uint64_t count);
Transformer avoidance_step(std::uint64_t count);
Transformer deh_step(const ProgramCode& e, const Tree& h, std::uint64_t budget);

struct ChainLink {
  std::string name;  // "start" for the first link
  StepResult step;
};

struct GenericRun {
  std::vector<ChainLink> chain;
  SetPrefix prefix;  // final stem, decided below min of the final reservoir
};

class ExtensionViolation : public std::runtime_error {
 public:
  ExtensionViolation(std::size_t step, const std::string& name, const std::string& detail)
      : std::runtime_error("step " + std::to_string(step) + " (" + name +
                           ") does not extend its input: " + detail),
        step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

struct GenericOptions {
  std::uint64_t horizon = 1000;   // extension checks
  std::uint64_t stem_growth = 0;  // members promoted after every step
};

// Folds the schedule over the start condition. Throws ExtensionViolation,
// numbered by 1-based schedule position, when a step's output does not
// extend its input.
GenericRun build_generic(const Condition& start, const std::vector<Transformer>& schedule,
                         const GenericOptions& options = {});

}  // namespace canimm
