#include <algorithm>
#include <set>
#include <stdexcept>

#include "canimm/constructions.hpp"
#include "pool_cache.hpp"

namespace canimm {

namespace {

// Pair indices p not in F with D meeting I_p = {2p, 2p+1}, increasing.
std::vector<std::uint64_t> open_pairs(const FiniteSet& d, const std::set<std::uint64_t>& f) {
  std::vector<std::uint64_t> out;
  for (auto x : d.elements()) {
    const auto p = x / 2;
    if (f.count(p) == 0 && (out.empty() || out.back() != p)) out.push_back(p);
  }
  return out;
}

// Largest i with <i, i> < stages, so every stage <e, i> with e <= i ran.
std::uint64_t index_horizon(std::uint64_t stages) {
  std::uint64_t i = 0;
  while (pair_bound(i + 1) < stages) ++i;
  return i;
}

// Pairs needed so that every D_e(i) with e <= i <= horizon lies below the prefix.
std::uint64_t covering_pairs(detail::PoolCache& d, std::uint64_t horizon,
                             const std::set<std::uint64_t>& f) {
  std::uint64_t pairs = f.empty() ? 1 : *f.rbegin() + 1;
  for (std::uint64_t e = 0; e < d.size(); ++e) {
    for (std::uint64_t i = e; i <= horizon; ++i) {
      const auto& v = d.at(e, i);
      if (!v.empty()) pairs = std::max(pairs, v.max() / 2 + 1);
    }
  }
  return pairs;
}

}  // namespace

BciResult bci_run(const Registry& pool, std::uint64_t stages) {
  if (stages == 0) throw std::invalid_argument("stages must be positive");
  detail::PoolCache d(pool);
  BciResult out;
  std::set<std::uint64_t> f;
  std::vector<std::uint64_t> r, q;

  for (std::uint64_t s = 0; s < stages; ++s) {
    const auto [e, i] = unpair(s);
    const std::uint64_t threshold = 4 * pair_bound(i) + 3;
    if (e >= d.size() || i < e || d.at(e, i).size() <= threshold) {
      out.trace.emit(s, "case1").field("e", e).field("i", i);
      continue;
    }
    const FiniteSet& v = d.at(e, i);
    const auto open = open_pairs(v, f);
    if (open.size() < 2) throw std::logic_error("case 2 without two free pairs");
    const std::uint64_t p = open[0], qp = open[1];
    auto first_in = [&](std::uint64_t pair) {
      return v.contains(2 * pair) ? 2 * pair : 2 * pair + 1;
    };
    const std::uint64_t x = first_in(p), y = x ^ 1, z = first_in(qp), w = z ^ 1;
    f.insert(p);
    f.insert(qp);
    auto& rec = out.trace.emit(s, "case2");
    rec.add("R", {y, z}).add("Q", {x, w}).add("F", {p, qp});
    rec.field("e", e).field("i", i).field("p", p).field("q", qp).field("x", x).field("z", z);
    r.push_back(y);
    r.push_back(z);
    q.push_back(x);
    q.push_back(w);
  }

  out.index_horizon = index_horizon(stages);
  const std::uint64_t pairs = covering_pairs(d, out.index_horizon, f);
  std::vector<std::uint64_t> fill_r, fill_q;
  for (std::uint64_t p = 0; p < pairs; ++p) {
    if (f.count(p)) continue;
    fill_r.push_back(2 * p);
    fill_q.push_back(2 * p + 1);
  }
  out.trace.emit(stages, "fill").add("R", fill_r).add("Q", fill_q).field("pairs", pairs);
  r.insert(r.end(), fill_r.begin(), fill_r.end());
  q.insert(q.end(), fill_q.begin(), fill_q.end());
  out.r = SetPrefix::from_members(r, 2 * pairs);
  out.q = SetPrefix::from_members(q, 2 * pairs);
  out.f.assign(f.begin(), f.end());
  return out;
}

CiNotHiResult ci_not_hi_run(const Registry& pool, std::uint64_t stages) {
  if (stages == 0) throw std::invalid_argument("stages must be positive");
  detail::PoolCache d(pool);
  CiNotHiResult out;
  std::set<std::uint64_t> f;
  std::vector<std::uint64_t> r;

  for (std::uint64_t s = 0; s < stages; ++s) {
    const auto [e, i] = unpair(s);
    if (e >= d.size() || i < e || d.at(e, i).size() <= 2 * pair_bound(i)) {
      out.trace.emit(s, "case1").field("e", e).field("i", i);
      continue;
    }
    const FiniteSet& v = d.at(e, i);
    const auto open = open_pairs(v, f);
    if (open.empty()) throw std::logic_error("case 2 without a free pair");
    const std::uint64_t p = open[0];
    const std::uint64_t x = v.contains(2 * p) ? 2 * p : 2 * p + 1;
    f.insert(p);
    r.push_back(x ^ 1);
    out.trace.emit(s, "case2")
        .add("R", {x ^ 1})
        .add("F", {p})
        .field("e", e)
        .field("i", i)
        .field("p", p)
        .field("withheld", x);
  }

  out.index_horizon = index_horizon(stages);
  out.pairs = covering_pairs(d, out.index_horizon, f);
  std::vector<std::uint64_t> fill;
  for (std::uint64_t p = 0; p < out.pairs; ++p) {
    if (!f.count(p)) fill.push_back(2 * p);
  }
  out.trace.emit(stages, "fill").add("R", fill).field("pairs", out.pairs);
  r.insert(r.end(), fill.begin(), fill.end());
  out.prefix = SetPrefix::from_members(r, 2 * out.pairs);
  out.f.assign(f.begin(), f.end());
  return out;
}

CofinalResult cofinal_encode(const Registry& pool, const std::string& a_bits,
                             std::optional<std::uint64_t> count) {
  const std::uint64_t n_count = count.value_or(a_bits.size());
  if (n_count > a_bits.size()) throw std::invalid_argument("A is shorter than the pair count");
  detail::PoolCache d(pool);
  CofinalResult out;
  Natural forbidden = 0;
  std::vector<std::uint64_t> r, q;
  for (std::uint64_t n = 0; n < n_count; ++n) {
    if (a_bits[n] != '0' && a_bits[n] != '1') throw std::invalid_argument("A must be binary");
    auto admit = [&](std::uint64_t e, std::uint64_t i) {
      if (e >= d.size()) return;
      const auto& v = d.at(e, i);
      if (v.size() > i) forbidden |= v.code();
    };
    for (std::uint64_t i = 0; i <= n; ++i) admit(n, i);
    for (std::uint64_t e = 0; e < n; ++e) admit(e, n);

    std::uint64_t p = out.p.empty() ? 0 : out.p.back() + 1;
    while (test_bit(forbidden, 2 * p) || test_bit(forbidden, 2 * p + 1)) ++p;
    out.p.push_back(p);
    const std::uint64_t chosen = a_bits[n] == '1' ? 2 * p : 2 * p + 1;
    r.push_back(chosen);
    q.push_back(2 * p);
    q.push_back(2 * p + 1);
    out.trace.emit(n, "pair").add("R", {chosen}).add("Q", {2 * p, 2 * p + 1}).field("p", p);
  }
  const std::uint64_t length = out.p.empty() ? 0 : 2 * out.p.back() + 2;
  out.r = SetPrefix::from_members(r, length);
  out.q = SetPrefix::from_members(q, length);
  return out;
}

CofinalDecode cofinal_decode(const SetPrefix& r, std::uint64_t count) {
  CofinalDecode out;
  const auto& members = r.principal();
  const std::uint64_t available = std::min<std::uint64_t>(count, members.size());
  for (std::uint64_t n = 0; n < available; ++n) out.bits += members[n] % 2 == 0 ? '1' : '0';
  out.truncated = available < count;
  return out;
}

}  // namespace canimm
