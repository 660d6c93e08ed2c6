#include "canimm/natural.hpp"

#include <bit>
#include <stdexcept>

namespace canimm {

std::uint64_t bit_length(const Natural& n) {
  if (n.is_zero()) return 0;
  return boost::multiprecision::msb(n) + 1;
}

std::uint64_t msb_index(const Natural& n) {
  if (n.is_zero()) return 0;
  return boost::multiprecision::msb(n);
}

bool test_bit(const Natural& n, std::uint64_t position) {
  if (position >= bit_length(n)) return false;
  return boost::multiprecision::bit_test(n, static_cast<unsigned>(position));
}

Natural pow2(std::uint64_t exponent) {
  Natural r = 0;
  boost::multiprecision::bit_set(r, static_cast<unsigned>(exponent));
  return r;
}

std::string to_decimal(const Natural& n) { return n.str(); }

Natural parse_natural(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not a nonnegative decimal integer: " + std::string(text));
    }
  }
  return Natural(std::string(text));
}

bool fits_u64(const Natural& n) { return bit_length(n) <= 64; }

std::uint64_t to_u64(const Natural& n) {
  if (!fits_u64(n)) throw std::out_of_range("integer does not fit in 64 bits");
  return n.convert_to<std::uint64_t>();
}

std::size_t hash_natural(const Natural& n) noexcept {
  const auto& backend = n.backend();
  std::size_t h = 1469598103934665603ull;
  const auto* limbs = backend.limbs();
  for (std::size_t i = 0; i < backend.size(); ++i) {
    h ^= static_cast<std::size_t>(limbs[i]);
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t next_clear_bit(const Natural& n, std::uint64_t from) {
  const auto& backend = n.backend();
  const auto* limbs = backend.limbs();
  const std::size_t count = n.is_zero() ? 0 : backend.size();
  constexpr unsigned kLimbBits = sizeof(*limbs) * 8;
  std::uint64_t word = from / kLimbBits;
  if (word >= count) return from;
  std::uint64_t inverted = ~static_cast<std::uint64_t>(limbs[word]) >> (from % kLimbBits);
  if (inverted != 0) return from + std::countr_zero(inverted);
  for (++word; word < count; ++word) {
    inverted = ~static_cast<std::uint64_t>(limbs[word]);
    if (inverted != 0) return word * kLimbBits + std::countr_zero(inverted);
  }
  return count * kLimbBits;
}

Natural pair(const Natural& x, const Natural& y) {
  const Natural s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<Natural, Natural> unpair(const Natural& p) {
  // w = floor((sqrt(8p+1) - 1) / 2)
  const Natural disc = 8 * p + 1;
  Natural w = (boost::multiprecision::sqrt(disc) - 1) / 2;
  const Natural t = w * (w + 1) / 2;
  const Natural y = p - t;
  return {w - y, y};
}

std::uint64_t pair(std::uint64_t x, std::uint64_t y) {
  return to_u64(pair(Natural(x), Natural(y)));
}

std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t p) {
  auto [x, y] = unpair(Natural(p));
  return {to_u64(x), to_u64(y)};
}

}  // namespace canimm
