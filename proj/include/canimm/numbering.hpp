#pragma once

// Canonical numberings: total-tier rules i -> canonical code of D(i).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "canimm/evaluator.hpp"
#include "canimm/finite_set.hpp"

namespace canimm {

using machine::Evaluator;
using machine::ProgramCode;
using machine::StepBudget;
using machine::Tree;

struct Numbering {
  std::uint64_t id = 0;
  ProgramCode rule;
  // Evidence tag: the rule carries the standard numbering on a residue class.
  bool surjective = false;

  FiniteSet at(std::uint64_t i, Evaluator* ev = nullptr) const;
  // Evaluated through membership_program / max_program.
  bool contains(std::uint64_t i, std::uint64_t x, Evaluator* ev = nullptr) const;
  // Throws std::domain_error when D(i) is empty.
  std::uint64_t max(std::uint64_t i, Evaluator* ev = nullptr) const;
};

// (i, x) -> 1 if x in D(i) else 0.
Tree membership_program(const ProgramCode& rule);
// i -> max D(i) (0 when D(i) is empty).
Tree max_program(const ProgramCode& rule);

// Append-only list standing in for "all canonical numberings".
class Registry {
 public:
  // Throws machine::NotTotalTier for rules outside the total tier.
  const Numbering& register_numbering(const Tree& rule, bool surjective = false);
  const Numbering& register_numbering(const ProgramCode& rule, bool surjective = false);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Numbering& operator[](std::size_t id) const { return entries_.at(id); }
  const std::vector<Numbering>& entries() const { return entries_; }
  std::vector<ProgramCode> codes() const;

  // One "id<TAB>rule<TAB>flag" line per entry.
  void write(std::ostream& os) const;
  static Registry read(std::istream& is);

 private:
  std::vector<Numbering> entries_;
};

FiniteSet standard_numbering(const Natural& i);

// D_{e,s}(i): the decoded value of {e}(i) if it converges within s steps.
FiniteSet stage_approx(const ProgramCode& e, std::uint64_t i, StepBudget s,
                       Evaluator* ev = nullptr);

// Rules.
Tree standard_rule();                      // i -> i
Tree singleton_rule();                     // i -> {i}
Tree interval_rule(Tree lo, Tree count);   // i -> [lo(i), lo(i) + count(i))
Tree upper_interval_rule();                // i -> [i, 2i]
Tree lower_interval_rule();                // i -> [0, i]
Tree wide_interval_rule();                 // i -> [0, 8(i+1)^2)

// Odd indices 2m+1 are designated: D(2m+1) is an interval of length
// f(2m+1) + 1 starting at max(end of the previous designated block, 2m+2).
// Even indices carry the standard numbering, D(2m) = decode(m).
Tree adversarial_rule(const Tree& f);
bool adversarial_designated(std::uint64_t i);
// Native replay of the block layout; returns [start, start + length).
std::pair<std::uint64_t, std::uint64_t> adversarial_block(const Tree& f, std::uint64_t i,
                                                          Evaluator* ev = nullptr);

// D(2p) = H(p) for the pair code p; D(2m+1) = decode(m).
Tree witness_rule(const Tree& h);

// H given as a finite table of (pair code, set) entries; absent codes map to
// the empty set.
Tree table_rule(const std::vector<std::pair<std::uint64_t, FiniteSet>>& table);

// Default pool: standard, singleton, upper interval, lower interval, wide
// interval, adversarial(identity).
Registry default_pool();

}  // namespace canimm
