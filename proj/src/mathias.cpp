#include "canimm/mathias.hpp"

#include <algorithm>

#include "canimm/codec.hpp"
#include "canimm/schnorr.hpp"

namespace canimm {

using namespace machine::dsl;
using machine::OracleString;

bool Condition::valid() const { return stem.empty() || stem.max() < reservoir.at(0); }

ExtendsVerdict extends(const Condition& child, const Condition& parent, std::uint64_t horizon) {
  ExtendsVerdict v;
  v.horizon = horizon;
  if (!parent.stem.subset_of(child.stem)) {
    v.failed = "stem " + child.stem.to_string() + " does not contain " + parent.stem.to_string();
    return v;
  }
  for (auto x : child.stem.elements()) {
    if (!parent.stem.contains(x) && !parent.reservoir.contains(x)) {
      v.failed = "new stem element " + std::to_string(x) + " is outside the reservoir";
      return v;
    }
  }
  for (auto x : child.reservoir.below(horizon)) {
    if (!parent.reservoir.contains(x)) {
      v.failed = "reservoir element " + std::to_string(x) + " is outside the parent reservoir";
      return v;
    }
  }
  v.holds = true;
  return v;
}

Condition meet_size(const Condition& c, std::uint64_t n) {
  if (n <= c.stem.size()) return c;
  const std::uint64_t k = n - c.stem.size();
  auto stem = c.stem.elements();
  for (std::uint64_t m = 0; m < k; ++m) stem.push_back(c.reservoir.at(m));
  return Condition{FiniteSet::from_elements(std::move(stem)), c.reservoir.drop(k)};
}

Condition thin_for_numbering(const Condition& c, const Numbering& d, std::uint64_t count) {
  const Tree a = c.reservoir.enumerator();
  const Tree rule = machine::decode(d.rule);
  const std::uint64_t k0 = c.stem.size();

  // State <lo, U>: the next index must be >= lo and A(index) must avoid U.
  // A(z) >= z, so the least admissible index is at most max(lo, msb(U) + 1).
  const Tree lo = left(arg(1));
  const Tree u = right(arg(1));
  const Tree pred = bit(u, call(a, {add(lo, arg(0))}));
  const Tree offset = machine::bounded_mu(
      succ(monus(add(msb(right(arg(0))), lit(2)), left(arg(0)))),
      pred);
  const Tree index = add(left(arg(0)), offset);

  const Tree base = pair_of(lit(0), call(rule, {lit(k0)}));
  const Tree step = pair_of(succ(call(index, {arg(1)})),
                            bit_or(right(arg(1)), call(rule, {add(arg(0), lit(k0 + 1))})));
  const Tree state = call(machine::primrec(base, step), {arg(0)});
  Condition out{c.stem, ComputableSet(call(a, {call(index, {state})}), c.reservoir.evaluator())};
  if (count > 0) out.reservoir.at(count - 1);
  return out;
}

std::vector<std::uint64_t> thinning_violations(const Condition& c, const Numbering& d,
                                               std::uint64_t first, std::uint64_t last) {
  std::vector<std::uint64_t> out;
  Evaluator ev;
  for (std::uint64_t i = first; i <= last; ++i) {
    const FiniteSet v = d.at(i, &ev);
    if (v.size() <= i) continue;
    const bool inside = std::all_of(v.elements().begin(), v.elements().end(), [&](std::uint64_t x) {
      return c.stem.contains(x) || c.reservoir.contains(x);
    });
    if (inside) out.push_back(i);
  }
  return out;
}

namespace {

Tree triangle(Tree k) { return div(mul(k, succ(k)), lit(2)); }

}  // namespace

AvoidanceResult meet_avoidance(const Condition& c, std::uint64_t count) {
  AvoidanceResult out{c, {}};
  if (count == 0) return out;
  std::uint64_t first = 1;
  if (!c.stem.empty()) {
    while (block_start(first) <= c.stem.max()) ++first;
  }

  const Tree a = c.reservoir.enumerator();
  // State <i, lo>: current block i and the least reservoir index still free.
  // pick: least n >= lo with A(n) >= end of F_i (A(n) >= n bounds the search).
  const Tree end = triangle(left(arg(1)));
  const Tree lo = right(arg(1));
  const Tree pick = add(right(arg(0)),
                        machine::bounded_mu(succ(monus(triangle(left(arg(0))), right(arg(0)))),
                                            lt(call(a, {add(lo, arg(0))}), end)));
  // next block: least i with i(i-1)/2 > x.
  const Tree next_block = machine::bounded_mu(
      add(arg(0), lit(3)), is_zero(lt(arg(1), div(mul(arg(0), monus(arg(0), lit(1))), lit(2)))));

  const Tree base = pair_of(lit(first), lit(0));
  const Tree picked = call(pick, {arg(1)});
  const Tree step = pair_of(call(next_block, {call(a, {picked})}), succ(picked));
  const Tree state = call(machine::primrec(base, step), {arg(0)});
  out.condition = Condition{c.stem, ComputableSet(call(a, {call(pick, {state})}),
                                                  c.reservoir.evaluator())};

  // Native replay of the block choices.
  std::uint64_t i = first;
  std::uint64_t n = 0;
  for (std::uint64_t p = 0; p < count; ++p) {
    out.missed.push_back(i);
    while (c.reservoir.at(n) < block_end(i)) ++n;
    const std::uint64_t x = c.reservoir.at(n);
    if (out.condition.reservoir.at(p) != x) {
      throw std::logic_error("avoidance enumerator disagrees with its replay");
    }
    ++n;
    while (block_start(i) <= x) ++i;
  }
  return out;
}

OracleString characteristic_string(const FiniteSet& b) {
  if (b.empty()) return OracleString();
  return OracleString::of_set(b, b.max() + 1);
}

namespace {

struct DehPrograms {
  Tree u;  // (i, x) -> halts iff x is among the h(i)+1 smallest of W^{chi_b}_{e,t}
};

// b(c) = a ∪ {A(k) : bit k of c}, as a canonical code.
Tree stem_union(const Natural& stem_code, const Tree& a) {
  const Tree step = bit_or(arg(1), select(bit(arg(2), arg(0)), pow2(call(a, {arg(0)})), lit(0)));
  return call(machine::primrec(lit(stem_code), step), {bit_length_of(arg(0)), arg(0)});
}

DehPrograms deh_programs(const Condition& c, const ProgramCode& e, const Tree& h) {
  const Tree b = stem_union(c.stem.code(), c.reservoir.enumerator());
  // Oracle code of chi_b: the set code plus the sentinel at max(b) + 1.
  const Tree oracle = bit_or(arg(0), pow2(select(sg(arg(0)), succ(msb(arg(0))), lit(0))));
  const Tree chi = call(oracle, {b});

  // cnt(L, c, t) = #{n < L : e halts on n with oracle chi_b(c) within t steps}
  const Tree cnt_step =
      add(arg(1), sg(clocked(lit(e.value), call(chi, {arg(2)}), arg(0), arg(3))));
  const Tree cnt = machine::primrec(lit(0), cnt_step);

  // mu z. |W^{chi_b}_{e,t}| > h(i) with z = <c, t>; args (z, i, x).
  const Tree count_z = call(cnt, {right(arg(0)), left(arg(0)), right(arg(0))});
  const Tree search = machine::mu(is_zero(lt(call(h, {arg(1)}), count_z)));

  // body args (z*, i, x)
  const Tree ct = left(arg(0));
  const Tree t = right(arg(0));
  const Tree x = arg(2);
  const Tree in_window = lt(x, t);
  const Tree halts =
      sg(clocked(lit(e.value), call(chi, {ct}), x, t));
  const Tree smaller = call(cnt, {min_of(x, t), ct, t});
  const Tree early = lt(smaller, succ(call(h, {arg(1)})));
  const Tree flag = mul(mul(in_window, halts), early);
  return {let_in(2, search, halt_if(flag))};
}

}  // namespace

MeetOutcome meet_D_eh(const Condition& c, const ProgramCode& e, const Tree& h,
                      std::uint64_t budget) {
  machine::require_total_tier(h, "effective immunity bound");
  MeetOutcome out(c);
  out.clause = "unresolved";

  const DehPrograms prog = deh_programs(c, e, h);
  const ProgramCode u = machine::encode(prog.u);
  const auto fp = machine::fixed_point(machine::bind_code_program(u));
  const Natural h_j = machine::eval_total(h, {fp.j.value});

  // Native replay of the search at i = j.
  Evaluator ev;
  std::optional<std::pair<Natural, std::uint64_t>> found;
  for (std::uint64_t z = 0; z < budget && !found; ++z) {
    const auto [code, t] = unpair(z);
    std::vector<std::uint64_t> b = c.stem.elements();
    for (std::uint64_t k = 0; (code >> k) != 0; ++k) {
      if ((code >> k) & 1u) b.push_back(c.reservoir.at(k));
    }
    const OracleString chi = characteristic_string(FiniteSet::from_elements(b));
    const auto w = machine::we_window(e, t, t, &chi, &ev);
    out.largest_seen = std::max<std::uint64_t>(out.largest_seen, w.size());
    if (w.size() > h_j) found = std::make_pair(Natural(code), t);
  }
  if (!found) return out;

  const auto& [code, t] = *found;
  std::vector<std::uint64_t> added;
  std::uint64_t top_index = 0;
  for (std::uint64_t k = 0; (code >> k) != 0; ++k) {
    if (test_bit(code, k)) {
      added.push_back(c.reservoir.at(k));
      top_index = k + 1;
    }
  }
  out.added = FiniteSet::from_elements(added);
  std::vector<std::uint64_t> stem = c.stem.elements();
  stem.insert(stem.end(), added.begin(), added.end());
  const FiniteSet b = FiniteSet::from_elements(stem);
  const OracleString chi = characteristic_string(b);
  out.clock = t;
  out.h_j = to_u64(h_j);
  out.w_oracle = machine::we_window(e, t, t, &chi);

  // Budget at which every expected member of W_{g(j)} has halted.
  StepBudget enough = 1;
  {
    Evaluator run_ev;
    const Tree image = run_ev.program(fp.image);
    std::uint64_t taken = 0;
    for (auto x : out.w_oracle.elements()) {
      if (taken++ > out.h_j) break;
      const Natural arg_x = x;
      const auto r = run_ev.run(image, std::span<const Natural>(&arg_x, 1), StepBudget{1} << 40);
      if (!r.outcome.is_converged()) return out;
      enough = std::max(enough, r.steps);
    }
  }
  out.w_image = machine::we_window(fp.image, t, enough);
  out.w_j = machine::we_window(fp.j, t, fp.budget_for(enough));
  out.fixed_point = fp;

  const bool inside = out.w_j.subset_of(out.w_oracle);
  const bool large = out.w_j.size() > out.h_j;
  if (!(inside && large && out.w_j == out.w_image)) return out;

  out.met = true;
  out.clause = "clause1";
  out.condition = Condition{b, c.reservoir.drop(top_index)};
  return out;
}

Transformer size_step(std::uint64_t n) {
  return {"size", [n](const Condition& c) {
            return StepResult{meet_size(c, n), "n=" + std::to_string(n), {}, {}, {}};
          }};
}

Transformer thin_step(const Numbering& d, std::uint64_t count) {
  return {"thin", [d, count](const Condition& c) {
            StepResult r{thin_for_numbering(c, d, count), "D=" + std::to_string(d.id), {}, d.id,
                         c.stem.size()};
            return r;
          }};
}

Transformer avoidance_step(std::uint64_t count) {
  return {"avoid", [count](const Condition& c) {
            auto a = meet_avoidance(c, count);
            return StepResult{a.condition, "missed=" + format_list(a.missed), a.missed, {}, {}};
          }};
}

Transformer deh_step(const ProgramCode& e, const Tree& h, std::uint64_t budget) {
  return {"deh", [e, h, budget](const Condition& c) {
            auto m = meet_D_eh(c, e, h, budget);
            return StepResult{m.condition,
                              m.clause + " largest=" + std::to_string(m.largest_seen),
                              {}, {}, {}};
          }};
}

GenericRun build_generic(const Condition& start, const std::vector<Transformer>& schedule,
                         const GenericOptions& options) {
  GenericRun run;
  run.chain.push_back({"start", StepResult{start, "", {}, {}, {}}});
  // Violations are reported by schedule position; growth links share the
  // position of the step they follow.
  auto advance = [&](std::size_t position, const std::string& name, StepResult r) {
    const Condition& parent = run.chain.back().step.condition;
    if (!r.condition.valid()) {
      throw ExtensionViolation(position, name, "stem is not below the reservoir");
    }
    const auto v = extends(r.condition, parent, options.horizon);
    if (!v.holds) throw ExtensionViolation(position, name, v.failed);
    run.chain.push_back({name, std::move(r)});
  };
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const auto& t = schedule[k];
    advance(k + 1, t.name, t.apply(run.chain.back().step.condition));
    if (options.stem_growth > 0) {
      const Condition& c = run.chain.back().step.condition;
      advance(k + 1, "size", StepResult{meet_size(c, c.stem.size() + options.stem_growth),
                                        "growth", {}, {}, {}});
    }
  }
  const Condition& last = run.chain.back().step.condition;
  run.prefix = SetPrefix::from_members(last.stem.elements(), last.reservoir.at(0));
  return run;
}

}  // namespace canimm
