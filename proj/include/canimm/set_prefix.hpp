#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "canimm/finite_set.hpp"

namespace canimm {

// Characteristic prefix of a constructed set: which n < length are members.
class SetPrefix {
 public:
  SetPrefix() = default;
  // Throws std::invalid_argument if a member is >= length or repeats.
  static SetPrefix from_members(std::vector<std::uint64_t> members, std::uint64_t length);
  static SetPrefix from_bits(std::string_view bits);

  std::uint64_t length() const { return bits_.size(); }
  const std::string& bits() const { return bits_; }
  // Members in increasing order.
  const std::vector<std::uint64_t>& principal() const { return principal_; }
  std::vector<std::uint64_t> complement_principal() const;

  bool decided(std::uint64_t x) const { return x < bits_.size(); }
  bool contains(std::uint64_t x) const { return x < bits_.size() && bits_[x] == '1'; }
  // True iff every element of f is below length and a member.
  bool includes(const FiniteSet& f) const;

  FiniteSet members() const { return FiniteSet::from_elements(principal_); }

  friend bool operator==(const SetPrefix&, const SetPrefix&) = default;

 private:
  std::string bits_;
  std::vector<std::uint64_t> principal_;
};

}  // namespace canimm
