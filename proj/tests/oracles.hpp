#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the interpreter.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using Set = std::vector<u64>;

// Cantor pairing by walking the diagonals.
inline u64 pair_by_walk(u64 x, u64 y) {
  u64 code = 0;
  for (u64 d = 0; d < x + y; ++d) code += d + 1;
  return code + y;
}

inline std::pair<u64, u64> unpair_by_search(u64 p) {
  for (u64 d = 0;; ++d) {
    const u64 base = d * (d + 1) / 2;
    if (p < base + d + 1) return {d - (p - base), p - base};
  }
}

inline Set bits_of(u64 code) {
  Set out;
  for (u64 k = 0; k < 64; ++k) {
    if ((code >> k) & 1u) out.push_back(k);
  }
  return out;
}

inline Set interval(u64 lo, u64 count) {
  Set out;
  for (u64 x = lo; x < lo + count; ++x) out.push_back(x);
  return out;
}

// Designated blocks of the adversarial numbering for f = identity: index
// 2m+1 gets [max(end of previous block, 2m+2), +2m+2).
inline std::pair<u64, u64> adversarial_identity_block(u64 m) {
  u64 end = 0;
  u64 start = 0;
  for (u64 k = 0; k <= m; ++k) {
    start = std::max(end, 2 * k + 2);
    end = start + (2 * k + 1) + 1;
  }
  return {start, end};
}

// D(i) for the default pool entries, computed natively.
inline Set default_pool_value(u64 id, u64 i) {
  switch (id) {
    case 0: return bits_of(i);
    case 1: return {i};
    case 2: return interval(i, i + 1);
    case 3: return interval(0, i + 1);
    case 4: return interval(0, 8 * (i + 1) * (i + 1));
    case 5: {
      if (i % 2 == 0) return bits_of(i / 2);
      const auto [lo, hi] = adversarial_identity_block(i / 2);
      return interval(lo, hi - lo);
    }
  }
  return {};
}

inline bool inside(const Set& d, const std::string& bits) {
  return std::all_of(d.begin(), d.end(), [&](u64 x) { return x < bits.size() && bits[x] == '1'; });
}

// (id, i) pairs with k(id) <= i <= bound, D(i) inside the prefix and
// |D(i)| > h(i).
template <class H>
std::vector<std::pair<u64, u64>> immunity_violations(const std::string& bits, u64 pool_size,
                                                     u64 bound, H h) {
  std::vector<std::pair<u64, u64>> out;
  for (u64 id = 0; id < pool_size; ++id) {
    for (u64 i = id; i <= bound; ++i) {
      const Set d = default_pool_value(id, i);
      if (!d.empty() && d.back() >= bits.size()) continue;
      if (inside(d, bits) && d.size() > h(i)) out.emplace_back(id, i);
    }
  }
  return out;
}

// Measure of { R : R misses some F_i, n < i <= M } by counting all
// assignments of the bits of F_1 .. F_M. Returns (count, total bits).
inline std::pair<u64, u64> brute_force_u_count(u64 n, u64 m) {
  const u64 bits = m * (m + 1) / 2;
  u64 count = 0;
  for (u64 r = 0; r < (u64{1} << bits); ++r) {
    bool hit = false;
    for (u64 i = n + 1; i <= m && !hit; ++i) {
      const u64 lo = i * (i - 1) / 2;
      const u64 mask = ((u64{1} << i) - 1) << lo;
      if ((r & mask) == 0) hit = true;
    }
    if (hit) ++count;
  }
  return {count, bits};
}

inline std::string random_bits(std::mt19937_64& rng, u64 length) {
  std::string s;
  for (u64 k = 0; k < length; ++k) s.push_back((rng() & 1u) ? '1' : '0');
  return s;
}

}  // namespace oracle
