#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "canimm/natural.hpp"

namespace canimm {

// A finite subset of omega held both as its canonical code sum 2^n and as
// the sorted element list.
class FiniteSet {
 public:
  FiniteSet() = default;

  // Elements must be distinct; order is irrelevant.
  static FiniteSet from_elements(std::vector<std::uint64_t> elements);
  static FiniteSet from_code(Natural code);
  static FiniteSet interval(std::uint64_t first, std::uint64_t count);

  const Natural& code() const { return code_; }
  const std::vector<std::uint64_t>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  bool contains(std::uint64_t x) const;
  // Throws std::domain_error on the empty set.
  std::uint64_t min() const;
  std::uint64_t max() const;

  bool subset_of(const FiniteSet& other) const;

  // "[0,2,5]"
  std::string to_string() const;
  static FiniteSet parse(std::string_view text);

  friend bool operator==(const FiniteSet& a, const FiniteSet& b) { return a.code_ == b.code_; }

 private:
  Natural code_ = 0;
  std::vector<std::uint64_t> elements_;
};

FiniteSet encode_finite_set(std::vector<std::uint64_t> elements);
FiniteSet decode_finite_set(const Natural& code);

// Sorted bracket list, shared by every line-oriented file format.
std::string format_list(const std::vector<std::uint64_t>& xs);
std::vector<std::uint64_t> parse_list(std::string_view text);

}  // namespace canimm
