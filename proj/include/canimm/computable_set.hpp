#pragma once

// Infinite computable sets given by strictly increasing total-tier
// enumerators n -> x_n.

#include <cstdint>
#include <memory>
#include <vector>

#include "canimm/evaluator.hpp"

namespace canimm {

using machine::Evaluator;
using machine::ProgramCode;
using machine::Tree;

class ComputableSet {
 public:
  // Throws machine::NotTotalTier for partial-tier enumerators.
  explicit ComputableSet(Tree enumerator, std::shared_ptr<Evaluator> ev = nullptr);

  static ComputableSet omega();
  static ComputableSet evens();
  static ComputableSet odds();
  // Enumerator n -> A(n + offset): A with its first `offset` members removed.
  ComputableSet drop(std::uint64_t offset) const;

  // x_{n+1} = least z in (x_n, gap(x_n)] with chi(z) = 1 and x_0 the least
  // z <= gap(0) with chi(z) = 1. The gap function is the infinitude
  // witness; characteristic_witnessed checks it on a finite horizon.
  static ComputableSet from_characteristic(const Tree& chi, const Tree& gap);

  const Tree& enumerator() const { return enumerator_; }
  ProgramCode code() const;
  const std::shared_ptr<Evaluator>& evaluator() const { return ev_; }

  // x_n. Throws std::logic_error if the enumeration fails to increase
  // strictly on [0, n].
  std::uint64_t at(std::uint64_t n) const;
  // Members below `horizon`, in order.
  std::vector<std::uint64_t> below(std::uint64_t horizon) const;
  bool contains(std::uint64_t x) const;
  // Number of members below x.
  std::uint64_t rank(std::uint64_t x) const;

 private:
  Tree enumerator_;
  std::shared_ptr<Evaluator> ev_;
  mutable std::shared_ptr<std::vector<std::uint64_t>> values_;
};

// True iff chi(x_n) = 1 for every n < count.
bool characteristic_witnessed(const ComputableSet& a, const Tree& chi, std::uint64_t count);

}  // namespace canimm
