#include "canimm/schnorr.hpp"

#include <stdexcept>

namespace canimm {

std::uint64_t block_start(std::uint64_t i) {
  if (i == 0) throw std::invalid_argument("blocks are numbered from 1");
  return i * (i - 1) / 2;
}

std::uint64_t block_end(std::uint64_t i) { return block_start(i) + i; }

FiniteSet block(std::uint64_t i) { return FiniteSet::interval(block_start(i), i); }

UMembership in_U_n(const SetPrefix& prefix, std::uint64_t n, std::uint64_t m) {
  if (m == 0 || prefix.length() < block_end(m)) {
    throw std::invalid_argument("prefix does not cover the last block");
  }
  UMembership out;
  for (std::uint64_t i = n + 1; i <= m; ++i) {
    bool hit = false;
    for (std::uint64_t x = block_start(i); x < block_end(i) && !hit; ++x) hit = prefix.contains(x);
    if (!hit) {
      out.member = true;
      out.witness = i;
      return out;
    }
  }
  return out;
}

DyadicRational measure_U_trunc(std::uint64_t n, std::uint64_t m) {
  if (m <= n) throw std::invalid_argument("need M > n");
  // The blocks are disjoint, so "R meets F_i" are independent events of
  // probability 1 - 2^-i.
  DyadicRational meets_all = DyadicRational::one();
  for (std::uint64_t i = n + 1; i <= m; ++i) {
    meets_all = meets_all * (DyadicRational::one() - DyadicRational::inverse_power(i));
  }
  return DyadicRational::one() - meets_all;
}

BoundCheck check_schnorr_bound(std::uint64_t n, std::uint64_t m) {
  BoundCheck out;
  out.measure = measure_U_trunc(n, m);
  out.bound = DyadicRational::inverse_power(n);
  out.holds = out.measure <= out.bound;
  out.monotone = true;
  DyadicRational prev = measure_U_trunc(n, n + 1);
  for (std::uint64_t k = n + 2; k <= m; ++k) {
    const auto cur = measure_U_trunc(n, k);
    if (cur < prev) out.monotone = false;
    prev = cur;
  }
  return out;
}

}  // namespace canimm
