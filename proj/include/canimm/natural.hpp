#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace canimm {

// Arbitrary-precision nonnegative integer. Machine values, program codes and
// canonical codes of finite sets all live here; negative values never occur.
using Natural = boost::multiprecision::cpp_int;

// Number of bits needed to write n (0 for n == 0).
std::uint64_t bit_length(const Natural& n);

// floor(log2 n) for n >= 1, and 0 for n == 0.
std::uint64_t msb_index(const Natural& n);

bool test_bit(const Natural& n, std::uint64_t position);

Natural pow2(std::uint64_t exponent);

std::string to_decimal(const Natural& n);

// Parses a decimal string of digits. Throws std::invalid_argument otherwise.
Natural parse_natural(std::string_view text);

// Throws std::out_of_range when n does not fit in 64 bits.
std::uint64_t to_u64(const Natural& n);

bool fits_u64(const Natural& n);

std::size_t hash_natural(const Natural& n) noexcept;

// Least position >= from whose bit in n is 0.
std::uint64_t next_clear_bit(const Natural& n, std::uint64_t from);

// Cantor pairing <x,y> = (x+y)(x+y+1)/2 + y and its inverse.
Natural pair(const Natural& x, const Natural& y);
std::pair<Natural, Natural> unpair(const Natural& p);

std::uint64_t pair(std::uint64_t x, std::uint64_t y);
std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t p);

}  // namespace canimm
