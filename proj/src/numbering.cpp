#include "canimm/numbering.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "canimm/codec.hpp"

namespace canimm {

using namespace machine::dsl;
using machine::eval_total;

namespace {

Natural run_total(const Tree& t, std::initializer_list<Natural> args, Evaluator* ev) {
  return eval_total(t, args, ev);
}

}  // namespace

FiniteSet Numbering::at(std::uint64_t i, Evaluator* ev) const {
  Evaluator local;
  Evaluator& e = ev ? *ev : local;
  return FiniteSet::from_code(run_total(e.program(rule), {Natural(i)}, &e));
}

bool Numbering::contains(std::uint64_t i, std::uint64_t x, Evaluator* ev) const {
  return run_total(membership_program(rule), {Natural(i), Natural(x)}, ev) != 0;
}

std::uint64_t Numbering::max(std::uint64_t i, Evaluator* ev) const {
  Evaluator local;
  Evaluator& e = ev ? *ev : local;
  if (run_total(e.program(rule), {Natural(i)}, &e) == 0) {
    throw std::domain_error("max of an empty D(i)");
  }
  return to_u64(run_total(max_program(rule), {Natural(i)}, &e));
}

Tree membership_program(const ProgramCode& rule) {
  return bit(call(machine::decode(rule), {arg(0)}), arg(1));
}

Tree max_program(const ProgramCode& rule) { return msb(call(machine::decode(rule), {arg(0)})); }

const Numbering& Registry::register_numbering(const Tree& rule, bool surjective) {
  machine::require_total_tier(rule, "numbering rule");
  Numbering n;
  n.id = entries_.size();
  n.rule = machine::encode(rule);
  n.surjective = surjective;
  entries_.push_back(std::move(n));
  return entries_.back();
}

const Numbering& Registry::register_numbering(const ProgramCode& rule, bool surjective) {
  return register_numbering(machine::decode(rule), surjective);
}

std::vector<ProgramCode> Registry::codes() const {
  std::vector<ProgramCode> out;
  out.reserve(entries_.size());
  for (const auto& n : entries_) out.push_back(n.rule);
  return out;
}

void Registry::write(std::ostream& os) const {
  for (const auto& n : entries_) {
    os << n.id << '\t' << to_decimal(n.rule.value) << '\t' << (n.surjective ? 1 : 0) << '\n';
  }
}

Registry Registry::read(std::istream& is) {
  Registry r;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string id, code, flag;
    if (!std::getline(fields, id, '\t') || !std::getline(fields, code, '\t') ||
        !std::getline(fields, flag, '\t')) {
      throw std::invalid_argument("registry record needs three fields: " + line);
    }
    if (parse_natural(id) != r.size()) throw std::invalid_argument("registry ids must be 0, 1, ..");
    if (flag != "0" && flag != "1") throw std::invalid_argument("surjective flag must be 0 or 1");
    r.register_numbering(ProgramCode(parse_natural(code)), flag == "1");
  }
  return r;
}

FiniteSet standard_numbering(const Natural& i) { return FiniteSet::from_code(i); }

FiniteSet stage_approx(const ProgramCode& e, std::uint64_t i, StepBudget s, Evaluator* ev) {
  Evaluator local;
  Evaluator& engine = ev ? *ev : local;
  const Natural x = i;
  const auto run = engine.run(e, std::span<const Natural>(&x, 1), s);
  if (!run.outcome.is_converged()) return {};
  return FiniteSet::from_code(run.outcome.value());
}

Tree standard_rule() { return arg(0); }

Tree singleton_rule() { return pow2(arg(0)); }

Tree interval_rule(Tree lo, Tree count) {
  return monus(pow2(add(lo, count)), pow2(lo));
}

Tree upper_interval_rule() { return interval_rule(arg(0), succ(arg(0))); }

Tree lower_interval_rule() { return interval_rule(lit(0), succ(arg(0))); }

Tree wide_interval_rule() {
  const Tree w = succ(arg(0));
  return interval_rule(lit(0), mul(lit(8), mul(w, w)));
}

namespace {

// state(0) = 0; state(k+1) = max(state(k), 2k+2) + f(2k+1) + 1.
Tree adversarial_state(const Tree& f) {
  const Tree two_k = mul(lit(2), arg(0));
  const Tree step = add(add(max_of(arg(1), add(two_k, lit(2))), call(f, {succ(two_k)})), lit(1));
  return machine::primrec(lit(0), step);
}

}  // namespace

Tree adversarial_rule(const Tree& f) {
  machine::require_total_tier(f, "adversarial size bound");
  const Tree m = div(arg(0), lit(2));
  const Tree start = max_of(call(adversarial_state(f), {m}), add(mul(lit(2), m), lit(2)));
  const Tree count = succ(call(f, {arg(0)}));
  return select(bit(arg(0), lit(0)), interval_rule(start, count), m);
}

bool adversarial_designated(std::uint64_t i) { return i % 2 == 1; }

std::pair<std::uint64_t, std::uint64_t> adversarial_block(const Tree& f, std::uint64_t i,
                                                          Evaluator* ev) {
  const std::uint64_t m = i / 2;
  std::uint64_t state = 0;
  for (std::uint64_t k = 0; k < m; ++k) {
    const auto fk = to_u64(run_total(f, {Natural(2 * k + 1)}, ev));
    state = std::max(state, 2 * k + 2) + fk + 1;
  }
  const std::uint64_t start = std::max(state, 2 * m + 2);
  return {start, start + to_u64(run_total(f, {Natural(i)}, ev)) + 1};
}

Tree witness_rule(const Tree& h) {
  machine::require_total_tier(h, "witness table");
  const Tree half = div(arg(0), lit(2));
  return select(bit(arg(0), lit(0)), half, call(h, {half}));
}

Tree table_rule(const std::vector<std::pair<std::uint64_t, FiniteSet>>& table) {
  Tree sum = lit(0);
  for (const auto& [p, set] : table) {
    if (set.empty()) continue;
    sum = add(sum, mul(eq(arg(0), lit(p)), lit(set.code())));
  }
  return sum;
}

Registry default_pool() {
  Registry r;
  r.register_numbering(standard_rule(), true);
  r.register_numbering(singleton_rule());
  r.register_numbering(upper_interval_rule());
  r.register_numbering(lower_interval_rule());
  r.register_numbering(wide_interval_rule());
  r.register_numbering(adversarial_rule(arg(0)), true);
  return r;
}

}  // namespace canimm
