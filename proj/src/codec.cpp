#include "canimm/codec.hpp"

#include <optional>
#include <sstream>
#include <unordered_map>
#include <stdexcept>

namespace canimm::machine {

namespace {

class BitWriter {
 public:
  void put(bool b) {
    if (b) boost::multiprecision::bit_set(acc_, static_cast<unsigned>(pos_));
    ++pos_;
  }
  void put_bits(std::uint64_t v, unsigned count) {
    for (unsigned i = 0; i < count; ++i) put((v >> i) & 1u);
  }
  void put_number(const Natural& v) {
    const Natural w = v + 1;
    const std::uint64_t len = bit_length(w);
    for (std::uint64_t i = 0; i + 1 < len; ++i) put(false);
    put(true);
    for (std::uint64_t i = 0; i + 1 < len; ++i) put(test_bit(w, i));
  }
  Natural finish() {
    put(true);  // sentinel
    return std::move(acc_);
  }

 private:
  Natural acc_ = 0;
  std::uint64_t pos_ = 0;
};

struct Malformed {};

class BitReader {
 public:
  explicit BitReader(const Natural& code) : code_(code), end_(msb_index(code)) {}

  bool get() {
    if (pos_ >= end_) throw Malformed{};
    return test_bit(code_, pos_++);
  }
  std::uint64_t get_bits(unsigned count) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < count; ++i) v |= static_cast<std::uint64_t>(get()) << i;
    return v;
  }
  Natural get_number() {
    std::uint64_t zeros = 0;
    while (!get()) ++zeros;
    Natural w = pow2(zeros);
    for (std::uint64_t i = 0; i < zeros; ++i) {
      if (get()) boost::multiprecision::bit_set(w, static_cast<unsigned>(i));
    }
    return w - 1;
  }
  bool exhausted() const { return pos_ == end_; }

 private:
  const Natural& code_;
  std::uint64_t end_;
  std::uint64_t pos_ = 0;
};

void write_tree(BitWriter& out, const Node& n) {
  out.put_bits(static_cast<std::uint64_t>(n.op), kOpBits);
  switch (n.op) {
    case Op::Const:
    case Op::Proj:
      out.put_number(n.payload);
      break;
    case Op::Bind:
      out.put_number(n.payload);
      write_tree(out, *n.kids[0]);
      break;
    case Op::Comp:
      out.put_number(n.kids.size() - 1);
      for (const auto& k : n.kids) write_tree(out, *k);
      break;
    case Op::PrimRec:
    case Op::BoundedMu:
    case Op::Mu:
      for (const auto& k : n.kids) write_tree(out, *k);
      break;
    default:
      break;
  }
}

constexpr unsigned kMaxDecodeDepth = 20000;

// Structurally equal subtrees decode to one shared node, so the evaluator's
// memo (keyed by node) sees repeated subprograms as the same program.
class Interner {
 public:
  Tree operator()(Tree t) {
    std::string key = std::to_string(static_cast<unsigned>(t->op)) + ':' + to_decimal(t->payload);
    for (const auto& k : t->kids) {
      key += ':' + std::to_string(reinterpret_cast<std::uintptr_t>(k.get()));
    }
    auto [it, inserted] = seen_.try_emplace(std::move(key), t);
    return it->second;
  }

 private:
  std::unordered_map<std::string, Tree> seen_;
};

Tree read_node(BitReader& in, Interner& intern, unsigned depth);

Tree read_tree(BitReader& in, Interner& intern, unsigned depth) {
  return intern(read_node(in, intern, depth));
}

Tree read_node(BitReader& in, Interner& intern, unsigned depth) {
  if (depth > kMaxDecodeDepth) throw Malformed{};
  const auto raw = in.get_bits(kOpBits);
  if (raw >= kOpCount) throw Malformed{};
  const auto op = static_cast<Op>(raw);
  switch (op) {
    case Op::Const:
      return constant(in.get_number());
    case Op::Proj: {
      Natural i = in.get_number();
      if (!fits_u64(i)) throw Malformed{};
      return proj(to_u64(i));
    }
    case Op::Bind: {
      Natural c = in.get_number();
      return bind(std::move(c), read_tree(in, intern, depth + 1));
    }
    case Op::Comp: {
      const Natural count = in.get_number();
      Tree g = read_tree(in, intern, depth + 1);
      std::vector<Tree> hs;
      for (Natural i = 0; i < count; ++i) hs.push_back(read_tree(in, intern, depth + 1));
      return comp(std::move(g), std::move(hs));
    }
    case Op::PrimRec: {
      Tree base = read_tree(in, intern, depth + 1);
      return primrec(std::move(base), read_tree(in, intern, depth + 1));
    }
    case Op::BoundedMu: {
      Tree bound = read_tree(in, intern, depth + 1);
      return bounded_mu(std::move(bound), read_tree(in, intern, depth + 1));
    }
    case Op::Mu:
      return mu(read_tree(in, intern, depth + 1));
    default:
      return primitive(op);
  }
}

std::optional<Tree> try_decode(const ProgramCode& code) {
  if (code.value.is_zero()) return std::nullopt;
  try {
    BitReader in(code.value);
    Interner intern;
    Tree t = read_tree(in, intern, 0);
    if (!in.exhausted()) return std::nullopt;
    return t;
  } catch (const Malformed&) {
    return std::nullopt;
  }
}

void disassemble_into(std::ostringstream& os, const Node& n, unsigned depth) {
  os << std::string(2 * depth, ' ') << op_name(n.op);
  if (n.op == Op::Const || n.op == Op::Proj || n.op == Op::Bind) os << ' ' << n.payload;
  if (n.op == Op::Comp) os << " /" << (n.kids.size() - 1);
  os << '\n';
  for (const auto& k : n.kids) disassemble_into(os, *k, depth + 1);
}

}  // namespace

ProgramCode encode(const Node& tree) {
  BitWriter out;
  write_tree(out, tree);
  return ProgramCode(out.finish());
}

ProgramCode encode(const Tree& tree) { return encode(*tree); }

Tree decode(const ProgramCode& code) {
  if (auto t = try_decode(code)) return *t;
  return always_diverge();
}

bool well_formed(const ProgramCode& code) { return try_decode(code).has_value(); }

SelfDelimited self_delimiting(const Natural& v) {
  const Natural w = v + 1;
  const std::uint64_t len = bit_length(w);
  const Natural top = pow2(len - 1);
  return {top + (w - top) * pow2(len), 2 * len - 1};
}

ProgramCode bind_code(const Natural& c, const ProgramCode& f) {
  const auto e = self_delimiting(c);
  return ProgramCode(Natural(static_cast<unsigned>(Op::Bind)) + pow2(kOpBits) * e.value +
                     pow2(kOpBits + e.length) * f.value);
}

Tree bind_code_program(const ProgramCode& f) {
  using namespace dsl;
  // With w = x + 1 and L = msb(w) + 1:
  //   E(x)   = 2^(L-1) + (w - 2^(L-1)) * 2^L,   |E(x)| = 2L - 1
  //   code   = Bind + 2^5 * E(x) + 2^(5 + |E(x)|) * f
  const Tree w = succ(arg(0));
  const Tree len = succ(msb(w));
  const Tree top = pow2(msb(w));
  const Tree e = add(top, mul(monus(w, top), pow2(len)));
  const Tree e_len = monus(mul(lit(2), len), lit(1));
  return add(add(lit(static_cast<unsigned>(Op::Bind)), mul(lit(canimm::pow2(kOpBits)), e)),
             mul(pow2(add(lit(kOpBits), e_len)), lit(f.value)));
}

std::string disassemble(const Tree& tree) {
  std::ostringstream os;
  disassemble_into(os, *tree, 0);
  return os.str();
}

std::string disassemble(const ProgramCode& code) {
  auto t = try_decode(code);
  if (!t) return "; ill-formed code, runs as:\n" + disassemble(always_diverge());
  return disassemble(*t);
}

}  // namespace canimm::machine
