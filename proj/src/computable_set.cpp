#include "canimm/computable_set.hpp"

#include <algorithm>
#include <stdexcept>

#include "canimm/codec.hpp"

namespace canimm {

using namespace machine::dsl;

ComputableSet::ComputableSet(Tree enumerator, std::shared_ptr<Evaluator> ev)
    : enumerator_(std::move(enumerator)),
      ev_(ev ? std::move(ev) : std::make_shared<Evaluator>()),
      values_(std::make_shared<std::vector<std::uint64_t>>()) {
  machine::require_total_tier(enumerator_, "reservoir enumerator");
}

ComputableSet ComputableSet::omega() { return ComputableSet(arg(0)); }
ComputableSet ComputableSet::evens() { return ComputableSet(mul(lit(2), arg(0))); }
ComputableSet ComputableSet::odds() { return ComputableSet(succ(mul(lit(2), arg(0)))); }

ComputableSet ComputableSet::drop(std::uint64_t offset) const {
  if (offset == 0) return *this;
  return ComputableSet(call(enumerator_, {add(arg(0), lit(offset))}), ev_);
}

ComputableSet ComputableSet::from_characteristic(const Tree& chi, const Tree& gap) {
  machine::require_total_tier(chi, "characteristic function");
  machine::require_total_tier(gap, "infinitude witness");
  // first member above y: y + 1 + least d < gap(y) - y with chi(y + 1 + d) = 1
  const Tree above =
      add(succ(arg(0)), machine::bounded_mu(monus(call(gap, {arg(0)}), arg(0)),
                                            is_zero(call(chi, {add(succ(arg(1)), arg(0))}))));
  const Tree first = machine::bounded_mu(succ(call(gap, {lit(0)})), is_zero(call(chi, {arg(0)})));
  const Tree step = call(above, {arg(1)});
  return ComputableSet(machine::primrec(first, step));
}

ProgramCode ComputableSet::code() const { return machine::encode(enumerator_); }

std::uint64_t ComputableSet::at(std::uint64_t n) const {
  auto& vals = *values_;
  while (vals.size() <= n) {
    const auto k = vals.size();
    const auto v = to_u64(machine::eval_total(enumerator_, {Natural(k)}, ev_.get()));
    if (k > 0 && v <= vals.back()) {
      throw std::logic_error("enumerator is not strictly increasing at " + std::to_string(k));
    }
    vals.push_back(v);
  }
  return vals[n];
}

std::vector<std::uint64_t> ComputableSet::below(std::uint64_t horizon) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 0;; ++n) {
    const auto v = at(n);
    if (v >= horizon) break;
    out.push_back(v);
  }
  return out;
}

std::uint64_t ComputableSet::rank(std::uint64_t x) const {
  std::uint64_t n = 0;
  while (at(n) < x) ++n;
  return n;
}

bool ComputableSet::contains(std::uint64_t x) const { return at(rank(x)) == x; }

bool characteristic_witnessed(const ComputableSet& a, const Tree& chi, std::uint64_t count) {
  for (std::uint64_t n = 0; n < count; ++n) {
    if (machine::eval_total(chi, {Natural(a.at(n))}) != 1) return false;
  }
  return true;
}

}  // namespace canimm
