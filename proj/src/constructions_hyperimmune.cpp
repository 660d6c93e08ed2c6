#include <algorithm>
#include <stdexcept>

#include "canimm/codec.hpp"
#include "canimm/constructions.hpp"

namespace canimm {

using namespace machine::dsl;

BlockFamily::BlockFamily(Tree f) : f_(std::move(f)), ev_(std::make_shared<Evaluator>()) {
  machine::require_total_tier(f_, "block size function");
}

void BlockFamily::extend(std::uint64_t n) const {
  while (starts_.size() <= n) {
    const std::uint64_t m = starts_.size();
    const std::uint64_t start =
        m == 0 ? 0 : std::max(m, starts_.back() + lengths_.back());
    starts_.push_back(start);
    lengths_.push_back(to_u64(machine::eval_total(f_, {Natural(2 * m)}, ev_.get())) + 1);
  }
}

std::uint64_t BlockFamily::start(std::uint64_t n) const {
  extend(n);
  return starts_[n];
}

std::uint64_t BlockFamily::length(std::uint64_t n) const {
  extend(n);
  return lengths_[n];
}

FiniteSet BlockFamily::block(std::uint64_t n) const { return FiniteSet::interval(start(n), length(n)); }

Tree block_family_program(const Tree& f) {
  // start(k+1) = max(k+1, start(k) + f(2k) + 1)
  const Tree step = max_of(succ(arg(0)), add(arg(1), succ(call(f, {mul(lit(2), arg(0))}))));
  const Tree start = call(machine::primrec(lit(0), step), {arg(0)});
  return interval_rule(start, succ(call(f, {mul(lit(2), arg(0))})));
}

HiNotCiResult hi_not_ci_run(const std::vector<Tree>& fns, std::uint64_t pairs) {
  if (fns.empty()) throw std::invalid_argument("at least one function is required");
  if (pairs == 0) throw std::invalid_argument("pair count must be positive");
  std::vector<BlockFamily> families;
  families.reserve(fns.size());
  for (const auto& f : fns) families.emplace_back(f);
  std::vector<std::unique_ptr<Evaluator>> evs;
  for (std::size_t k = 0; k < fns.size(); ++k) evs.push_back(std::make_unique<Evaluator>());

  HiNotCiResult out;
  std::vector<std::uint64_t> r;
  std::uint64_t members = 0;
  std::optional<std::uint64_t> top;
  for (std::uint64_t p = 0; p < pairs; ++p) {
    const auto [i, k] = unpair(p);
    if (i >= fns.size()) {
      out.skipped.push_back(p);
      out.trace.emit(p, "skip").field("i", i).field("k", k);
      continue;
    }
    const auto bound = to_u64(machine::eval_total(fns[i], {Natural(members + 1)}, evs[i].get()));
    // n_p > f_i(s+1), and the block lies above everything selected so far,
    // so it is disjoint from earlier blocks and its minimum is the (s+1)st
    // element of the final set.
    std::uint64_t n = bound + 1;
    const auto& fam = families[i];
    while (top && fam.start(n) <= *top) ++n;

    Selection sel{p, i, k, members, n, fam.block(n)};
    out.trace.emit(p, "select")
        .add("R", sel.block.elements())
        .field("i", i)
        .field("k", k)
        .field("s", members)
        .field("bound", bound)
        .field("n", n);
    r.insert(r.end(), sel.block.elements().begin(), sel.block.elements().end());
    members += sel.block.size();
    top = sel.block.max();
    out.selections.push_back(std::move(sel));
  }
  out.prefix = SetPrefix::from_members(r, top ? *top + 1 : 0);
  for (const auto& f : fns) out.witness_rules.push_back(witness_rule(block_family_program(f)));
  return out;
}

}  // namespace canimm
