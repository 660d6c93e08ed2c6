#include "canimm/recursion.hpp"

#include "canimm/codec.hpp"

namespace canimm::machine {

ProgramCode smn(const ProgramCode& e, const std::vector<Natural>& fixed_args) {
  // bind(a_{k-1}, .. bind(a_0, e)): each outer bind supplies the next argument
  // in front of the remaining ones.
  ProgramCode out = e;
  for (const auto& a : fixed_args) out = bind_code(a, out);
  return out;
}

const Tree& diagonal_program() {
  static const Tree u = [] {
    const Tree inner = comp(primitive(Op::Univ), {proj(0), proj(0)});
    return comp(primitive(Op::Univ), {inner, proj(1)});
  }();
  return u;
}

namespace {

StepBudget words(const Natural& v) { return 1 + bit_length(v) / 64; }

}  // namespace

FixedPoint fixed_point(const Tree& g) {
  require_total_tier(g, "fixed_point transformer");
  const ProgramCode u = encode(diagonal_program());
  const Tree v_tree = comp(g, {bind_code_program(u)});
  const ProgramCode v = encode(v_tree);

  FixedPoint fp;
  fp.j = bind_code(v.value, u);
  const Natural v_arg = v.value;
  fp.image = ProgramCode(eval_total(v_tree, {v_arg}));
  // Bind, the two Comp nodes, three projections, two Univ decodes and the
  // run of v on itself.
  fp.overhead = words(v.value) + 5 + words(v.value) + words(fp.image.value) +
                sufficient_budget(v_tree, std::span<const Natural>(&v_arg, 1));
  return fp;
}

FixedPoint fixed_point(const ProgramCode& g) { return fixed_point(decode(g)); }

}  // namespace canimm::machine
