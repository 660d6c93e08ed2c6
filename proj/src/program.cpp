#include "canimm/program.hpp"

#include <stdexcept>

namespace canimm::machine {

const char* op_name(Op op) {
  switch (op) {
    case Op::Const: return "const";
    case Op::Proj: return "proj";
    case Op::Succ: return "succ";
    case Op::Comp: return "comp";
    case Op::PrimRec: return "primrec";
    case Op::Bind: return "bind";
    case Op::BoundedMu: return "bmu";
    case Op::Pair: return "pair";
    case Op::Left: return "left";
    case Op::Right: return "right";
    case Op::Add: return "add";
    case Op::Monus: return "monus";
    case Op::Mul: return "mul";
    case Op::Div: return "div";
    case Op::Pow2: return "pow2";
    case Op::Bit: return "bit";
    case Op::Msb: return "msb";
    case Op::BitOr: return "or";
    case Op::Clocked: return "clocked";
    case Op::Mu: return "mu";
    case Op::Query: return "query";
    case Op::Univ: return "univ";
  }
  return "?";
}

namespace {

bool is_leaf_primitive(Op op) {
  switch (op) {
    case Op::Succ:
    case Op::Pair:
    case Op::Left:
    case Op::Right:
    case Op::Add:
    case Op::Monus:
    case Op::Mul:
    case Op::Div:
    case Op::Pow2:
    case Op::Bit:
    case Op::Msb:
    case Op::BitOr:
    case Op::Clocked:
    case Op::Query:
    case Op::Univ:
      return true;
    default:
      return false;
  }
}

Tree make(Op op, Natural payload, std::vector<Tree> kids) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->payload = std::move(payload);
  n->kids = std::move(kids);
  n->total_tier = op != Op::Mu && op != Op::Query && op != Op::Univ;
  n->oracle_free = op != Op::Query && op != Op::Univ;
  for (const auto& k : n->kids) {
    if (!k) throw std::invalid_argument("null subtree");
    n->total_tier = n->total_tier && k->total_tier;
    n->oracle_free = n->oracle_free && k->oracle_free;
    n->size += k->size;
  }
  return n;
}

}  // namespace

Tree constant(Natural c) { return make(Op::Const, std::move(c), {}); }
Tree proj(std::uint64_t index) { return make(Op::Proj, Natural(index), {}); }

Tree primitive(Op op) {
  if (!is_leaf_primitive(op)) throw std::invalid_argument("not a primitive operation");
  return make(op, 0, {});
}

Tree comp(Tree g, std::vector<Tree> hs) {
  std::vector<Tree> kids;
  kids.reserve(hs.size() + 1);
  kids.push_back(std::move(g));
  for (auto& h : hs) kids.push_back(std::move(h));
  return make(Op::Comp, 0, std::move(kids));
}

Tree primrec(Tree base, Tree step) {
  return make(Op::PrimRec, 0, {std::move(base), std::move(step)});
}

Tree bind(Natural c, Tree f) { return make(Op::Bind, std::move(c), {std::move(f)}); }

Tree bounded_mu(Tree bound, Tree pred) {
  return make(Op::BoundedMu, 0, {std::move(bound), std::move(pred)});
}

Tree mu(Tree f) { return make(Op::Mu, 0, {std::move(f)}); }

Tree always_diverge() {
  static const Tree t = mu(constant(1));
  return t;
}

bool trees_equal(const Node& a, const Node& b) {
  if (a.op != b.op || a.payload != b.payload || a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    if (!trees_equal(*a.kids[i], *b.kids[i])) return false;
  }
  return true;
}

namespace dsl {

Tree arg(std::uint64_t i) { return proj(i); }
Tree lit(Natural c) { return constant(std::move(c)); }
Tree call(Tree f, std::vector<Tree> args) { return comp(std::move(f), std::move(args)); }

namespace {
Tree binary(Op op, Tree a, Tree b) { return comp(primitive(op), {std::move(a), std::move(b)}); }
Tree unary(Op op, Tree a) { return comp(primitive(op), {std::move(a)}); }
}  // namespace

Tree succ(Tree a) { return unary(Op::Succ, std::move(a)); }
Tree add(Tree a, Tree b) { return binary(Op::Add, std::move(a), std::move(b)); }
Tree monus(Tree a, Tree b) { return binary(Op::Monus, std::move(a), std::move(b)); }
Tree mul(Tree a, Tree b) { return binary(Op::Mul, std::move(a), std::move(b)); }
Tree div(Tree a, Tree b) { return binary(Op::Div, std::move(a), std::move(b)); }
Tree mod(Tree a, Tree b) { return monus(a, mul(div(a, b), b)); }
Tree pow2(Tree a) { return unary(Op::Pow2, std::move(a)); }
Tree bit(Tree x, Tree n) { return binary(Op::Bit, std::move(x), std::move(n)); }
Tree msb(Tree a) { return unary(Op::Msb, std::move(a)); }
Tree bit_or(Tree a, Tree b) { return binary(Op::BitOr, std::move(a), std::move(b)); }
Tree pair_of(Tree a, Tree b) { return binary(Op::Pair, std::move(a), std::move(b)); }
Tree left(Tree p) { return unary(Op::Left, std::move(p)); }
Tree right(Tree p) { return unary(Op::Right, std::move(p)); }
Tree query(Tree position) { return unary(Op::Query, std::move(position)); }

Tree univ(Tree code, std::vector<Tree> args) {
  std::vector<Tree> all;
  all.push_back(std::move(code));
  for (auto& a : args) all.push_back(std::move(a));
  return comp(primitive(Op::Univ), std::move(all));
}

Tree clocked(Tree code, Tree oracle, Tree input, Tree steps) {
  return comp(primitive(Op::Clocked),
              {std::move(code), std::move(oracle), std::move(input), std::move(steps)});
}

Tree max_of(Tree a, Tree b) { return add(a, monus(b, a)); }
Tree min_of(Tree a, Tree b) { return monus(a, monus(a, b)); }
Tree is_zero(Tree a) { return monus(lit(1), std::move(a)); }
Tree sg(Tree a) { return is_zero(is_zero(std::move(a))); }
Tree eq(Tree a, Tree b) { return is_zero(add(monus(a, b), monus(b, a))); }
Tree lt(Tree a, Tree b) { return sg(monus(std::move(b), std::move(a))); }

Tree select(Tree flag, Tree a, Tree b) {
  return add(mul(flag, std::move(a)), mul(is_zero(flag), std::move(b)));
}

Tree bit_length_of(Tree a) { return mul(sg(a), succ(msb(a))); }

Tree let_in(std::uint64_t arity, Tree value, Tree body) {
  std::vector<Tree> args;
  args.reserve(arity + 1);
  args.push_back(std::move(value));
  for (std::uint64_t i = 0; i < arity; ++i) args.push_back(proj(i));
  return comp(std::move(body), std::move(args));
}

Tree halt_if(Tree flag) {
  // mu z. (1 - v) = 0, applied to v = flag(x)
  return comp(mu(monus(lit(1), arg(1))), {std::move(flag)});
}

}  // namespace dsl

}  // namespace canimm::machine
