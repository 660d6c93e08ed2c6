#pragma once

// The test U_n = { R : R misses some block F_i with i > n }, with blocks
// F_i = [i(i-1)/2, i(i+1)/2) for i >= 1.

#include <cstdint>
#include <optional>

#include "canimm/dyadic.hpp"
#include "canimm/finite_set.hpp"
#include "canimm/set_prefix.hpp"

namespace canimm {

// Throws std::invalid_argument for i = 0.
FiniteSet block(std::uint64_t i);
std::uint64_t block_start(std::uint64_t i);
std::uint64_t block_end(std::uint64_t i);  // one past the last element

struct UMembership {
  bool member = false;
  std::optional<std::uint64_t> witness;  // least i in (n, M] with prefix ∩ F_i = ∅
};

// Throws std::invalid_argument when the prefix does not cover F_M.
UMembership in_U_n(const SetPrefix& prefix, std::uint64_t n, std::uint64_t m);

// 1 - prod_{i=n+1}^{M} (1 - 2^-i). Throws std::invalid_argument unless M > n.
DyadicRational measure_U_trunc(std::uint64_t n, std::uint64_t m);

struct BoundCheck {
  DyadicRational measure;
  DyadicRational bound;        // 2^-n
  bool holds = false;          // measure <= bound
  bool monotone = false;       // measure(n, M') <= measure(n, M'+1) for n < M' < M
};

BoundCheck check_schnorr_bound(std::uint64_t n, std::uint64_t m);

}  // namespace canimm
