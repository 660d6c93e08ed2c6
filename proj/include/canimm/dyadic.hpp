#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "canimm/natural.hpp"

namespace canimm {

// numerator / 2^exponent, kept with an odd numerator (or 0 / 2^0).
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(Natural numerator, std::uint64_t exponent);

  static DyadicRational one() { return {1, 0}; }
  // 2^-n
  static DyadicRational inverse_power(std::uint64_t n) { return {1, n}; }

  const Natural& numerator() const { return num_; }
  std::uint64_t exponent() const { return exp_; }

  DyadicRational operator+(const DyadicRational& o) const;
  // Throws std::domain_error when the result would be negative.
  DyadicRational operator-(const DyadicRational& o) const;
  DyadicRational operator*(const DyadicRational& o) const;

  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

  // "k/2^m", or "k" when m = 0.
  std::string to_string() const;
  static DyadicRational parse(const std::string& text);

 private:
  void normalise();

  Natural num_ = 0;
  std::uint64_t exp_ = 0;
};

}  // namespace canimm
