#include "canimm/evaluator.hpp"

#include <algorithm>
#include <stdexcept>

#include "canimm/codec.hpp"

namespace canimm::machine {

// ---------------------------------------------------------------- oracles

OracleString::OracleString(std::string_view bits) : bits_(bits) {
  for (char c : bits_) {
    if (c != '0' && c != '1') throw std::invalid_argument("oracle strings are binary");
  }
}

OracleString OracleString::of_set(const FiniteSet& s, std::uint64_t length) {
  std::string bits(length, '0');
  for (auto x : s.elements()) {
    if (x < length) bits[x] = '1';
  }
  return OracleString(bits);
}

OracleString OracleString::from_code(const Natural& code) {
  if (code.is_zero()) return OracleString();
  const auto len = msb_index(code);
  std::string bits(len, '0');
  for (std::uint64_t i = 0; i < len; ++i) {
    if (test_bit(code, i)) bits[i] = '1';
  }
  return OracleString(bits);
}

Natural OracleString::code() const {
  Natural c = pow2(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] == '1') boost::multiprecision::bit_set(c, static_cast<unsigned>(i));
  }
  return c;
}

OracleString OracleString::operator+(const OracleString& rhs) const {
  OracleString out;
  out.bits_ = bits_ + rhs.bits_;
  return out;
}

bool OracleString::is_prefix_of(const OracleString& other) const {
  return other.bits_.compare(0, bits_.size(), bits_) == 0 && bits_.size() <= other.bits_.size();
}

const Natural& PartialOutcome::value() const {
  if (!value_) throw std::logic_error("value of a diverged computation");
  return *value_;
}

std::string to_string(const PartialOutcome& o) {
  return o.is_converged() ? "Converged(" + to_decimal(o.value()) + ")" : "Diverged";
}

// ---------------------------------------------------------------- engine

namespace {

constexpr unsigned kMaxDepth = 6000;
constexpr std::size_t kMemoEntryLimit = 1u << 21;
constexpr std::uint64_t kMemoBitLimit = std::uint64_t{1} << 33;  // ~1 GiB of stored values
constexpr unsigned kPrimRecProbes = 16;

struct Oracle {
  Natural code;
  std::uint64_t length;
};

struct MemoKey {
  const Node* node;
  const Oracle* oracle;
  std::vector<Natural> args;

  bool operator==(const MemoKey& o) const {
    return node == o.node && oracle == o.oracle && args == o.args;
  }
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const noexcept {
    std::size_t h = std::hash<const void*>()(k.node) * 31 + std::hash<const void*>()(k.oracle);
    for (const auto& a : k.args) h = h * 1000003u ^ hash_natural(a);
    return h;
  }
};

struct MemoEntry {
  std::optional<Natural> value;  // set: converged at cost `steps`
  StepBudget steps;              // unset: did not converge within `steps`
};

struct NaturalHash {
  std::size_t operator()(const Natural& n) const noexcept { return hash_natural(n); }
};

struct Ctx {
  StepBudget remaining;
  const Oracle* oracle;
  unsigned depth;
};

const Natural& zero() {
  static const Natural z = 0;
  return z;
}

const Natural& at(std::span<const Natural> args, std::size_t i) {
  return i < args.size() ? args[i] : zero();
}

bool memoised(Op op) {
  switch (op) {
    case Op::PrimRec:
    case Op::BoundedMu:
    case Op::Mu:
    case Op::Univ:
    case Op::Clocked:
      return true;
    default:
      return false;
  }
}

StepBudget word_cost(std::uint64_t bits) { return 1 + bits / 64; }

}  // namespace

struct Evaluator::Impl {
  std::unordered_map<Natural, Tree, NaturalHash> decoded;
  std::unordered_map<Natural, std::unique_ptr<Oracle>, NaturalHash> oracles;
  std::unordered_map<MemoKey, MemoEntry, MemoKeyHash> memo;
  std::unordered_map<const Node*, Tree> pinned;  // keeps memo keys' nodes alive
  std::uint64_t memo_bits = 0;

  const Oracle* intern_oracle(const Natural& code) {
    auto it = oracles.find(code);
    if (it != oracles.end()) return it->second.get();
    auto o = std::make_unique<Oracle>();
    o->code = code;
    o->length = code.is_zero() ? 0 : msb_index(code);
    const Oracle* raw = o.get();
    oracles.emplace(code, std::move(o));
    return raw;
  }

  const Tree& decode_cached(const Natural& code) {
    auto it = decoded.find(code);
    if (it != decoded.end()) return it->second;
    return decoded.emplace(code, decode(ProgramCode(code))).first->second;
  }

  void remember(MemoKey key, MemoEntry entry) {
    if (memo.size() >= kMemoEntryLimit || memo_bits >= kMemoBitLimit) {
      memo.clear();
      memo_bits = 0;
    }
    if (entry.value) memo_bits += bit_length(*entry.value) + 64;
    for (const auto& a : key.args) memo_bits += bit_length(a);
    auto [it, inserted] = memo.try_emplace(std::move(key), entry);
    if (!inserted) {
      // A converged entry is final; a failure entry only ever grows.
      if (entry.value || (!it->second.value && entry.steps > it->second.steps)) {
        it->second = std::move(entry);
      }
    }
  }

  static bool charge(Ctx& c, StepBudget n) {
    if (n > c.remaining) {
      c.remaining = 0;
      return false;
    }
    c.remaining -= n;
    return true;
  }

  MemoKey key_for(const Node& n, const Ctx& c, std::span<const Natural> args) const {
    return MemoKey{&n, n.oracle_free ? nullptr : c.oracle,
                   std::vector<Natural>(args.begin(), args.end())};
  }

  std::optional<Natural> eval(const Node& n, std::span<const Natural> args, Ctx& c) {
    if (c.remaining == 0) return std::nullopt;
    if (c.depth > kMaxDepth) throw EvaluationDepthExceeded();
    if (!memoised(n.op)) return eval_plain(n, args, c);

    MemoKey key = key_for(n, c, args);
    if (auto it = memo.find(key); it != memo.end()) {
      const MemoEntry& e = it->second;
      if (e.value) {
        if (!charge(c, e.steps)) return std::nullopt;
        return *e.value;
      }
      if (c.remaining <= e.steps) {
        c.remaining = 0;
        return std::nullopt;
      }
    }
    const StepBudget start = c.remaining;
    ++c.depth;
    auto r = n.op == Op::PrimRec ? eval_primrec(n, args, c) : eval_plain(n, args, c);
    --c.depth;
    if (r) {
      remember(std::move(key), MemoEntry{*r, start - c.remaining});
    } else {
      remember(std::move(key), MemoEntry{std::nullopt, start});
    }
    return r;
  }

  std::optional<Natural> eval_primrec(const Node& n, std::span<const Natural> args, Ctx& c) {
    // Charged as if run from scratch: 1 + cost(base) + sum over k of (1 + cost(step_k)).
    const Natural& count = at(args, 0);
    std::vector<Natural> y(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());

    // Resume from the nearest memoised predecessor.
    Natural k = 0;
    Natural acc;
    StepBudget cost_so_far = 0;
    bool resumed = false;
    {
      MemoKey probe{&n, n.oracle_free ? nullptr : c.oracle, {}};
      probe.args.reserve(args.size());
      probe.args.push_back(0);
      probe.args.insert(probe.args.end(), y.begin(), y.end());
      Natural m = count;
      for (unsigned i = 0; i < kPrimRecProbes && m > 0; ++i) {
        --m;
        probe.args[0] = m;
        auto it = memo.find(probe);
        if (it != memo.end() && it->second.value) {
          k = m;
          acc = *it->second.value;
          cost_so_far = it->second.steps;
          resumed = true;
          break;
        }
      }
    }
    if (resumed) {
      if (!charge(c, cost_so_far)) return std::nullopt;
    } else {
      const StepBudget start = c.remaining;
      if (!charge(c, 1)) return std::nullopt;
      auto base = eval(*n.kids[0], y, c);
      if (!base) return std::nullopt;
      acc = std::move(*base);
      cost_so_far = start - c.remaining;
    }

    std::vector<Natural> step_args;
    step_args.reserve(y.size() + 2);
    while (k < count) {
      const StepBudget start = c.remaining;
      if (!charge(c, 1)) return std::nullopt;
      step_args.clear();
      step_args.push_back(k);
      step_args.push_back(std::move(acc));
      step_args.insert(step_args.end(), y.begin(), y.end());
      auto next = eval(*n.kids[1], step_args, c);
      if (!next) return std::nullopt;
      acc = std::move(*next);
      cost_so_far += start - c.remaining;
      ++k;
      if (k < count) {
        std::vector<Natural> key_args;
        key_args.reserve(y.size() + 1);
        key_args.push_back(k);
        key_args.insert(key_args.end(), y.begin(), y.end());
        remember(MemoKey{&n, n.oracle_free ? nullptr : c.oracle, std::move(key_args)},
                 MemoEntry{acc, cost_so_far});
      }
    }
    return acc;
  }

  std::optional<Natural> arith(Ctx& c, Natural r) {
    if (!charge(c, word_cost(bit_length(r)))) return std::nullopt;
    return r;
  }

  std::optional<Natural> eval_plain(const Node& n, std::span<const Natural> args, Ctx& c) {
    using boost::multiprecision::bit_test;
    switch (n.op) {
      case Op::Const:
        if (!charge(c, word_cost(bit_length(n.payload)))) return std::nullopt;
        return n.payload;
      case Op::Proj: {
        if (!charge(c, 1)) return std::nullopt;
        if (!fits_u64(n.payload)) return Natural(0);
        return at(args, to_u64(n.payload));
      }
      case Op::Succ:
        return arith(c, at(args, 0) + 1);
      case Op::Comp: {
        if (!charge(c, 1)) return std::nullopt;
        std::vector<Natural> inner;
        inner.reserve(n.kids.size() - 1);
        ++c.depth;
        for (std::size_t i = 1; i < n.kids.size(); ++i) {
          auto v = eval(*n.kids[i], args, c);
          if (!v) return std::nullopt;
          inner.push_back(std::move(*v));
        }
        auto r = eval(*n.kids[0], inner, c);
        --c.depth;
        return r;
      }
      case Op::PrimRec:
        return eval_primrec(n, args, c);
      case Op::Bind: {
        if (!charge(c, word_cost(bit_length(n.payload)))) return std::nullopt;
        std::vector<Natural> inner;
        inner.reserve(args.size() + 1);
        inner.push_back(n.payload);
        inner.insert(inner.end(), args.begin(), args.end());
        ++c.depth;
        auto r = eval(*n.kids[0], inner, c);
        --c.depth;
        return r;
      }
      case Op::BoundedMu: {
        if (!charge(c, 1)) return std::nullopt;
        auto bound = eval(*n.kids[0], args, c);
        if (!bound) return std::nullopt;
        std::vector<Natural> inner;
        inner.reserve(args.size() + 1);
        inner.push_back(0);
        inner.insert(inner.end(), args.begin(), args.end());
        for (Natural z = 0; z < *bound; ++z) {
          if (!charge(c, 1)) return std::nullopt;
          inner[0] = z;
          auto v = eval(*n.kids[1], inner, c);
          if (!v) return std::nullopt;
          if (v->is_zero()) return z;
        }
        return *bound;
      }
      case Op::Mu: {
        if (!charge(c, 1)) return std::nullopt;
        std::vector<Natural> inner;
        inner.reserve(args.size() + 1);
        inner.push_back(0);
        inner.insert(inner.end(), args.begin(), args.end());
        for (Natural z = 0;; ++z) {
          if (!charge(c, 1)) return std::nullopt;
          inner[0] = z;
          auto v = eval(*n.kids[0], inner, c);
          if (!v) return std::nullopt;
          if (v->is_zero()) return z;
        }
      }
      case Op::Pair:
        return arith(c, pair(at(args, 0), at(args, 1)));
      case Op::Left:
        return arith(c, unpair(at(args, 0)).first);
      case Op::Right:
        return arith(c, unpair(at(args, 0)).second);
      case Op::Add:
        return arith(c, at(args, 0) + at(args, 1));
      case Op::Monus: {
        const auto& a = at(args, 0);
        const auto& b = at(args, 1);
        return arith(c, a > b ? Natural(a - b) : Natural(0));
      }
      case Op::Mul: {
        const auto& a = at(args, 0);
        const auto& b = at(args, 1);
        if (!charge(c, word_cost(bit_length(a) + bit_length(b)) - 1)) return std::nullopt;
        return arith(c, a * b);
      }
      case Op::Div: {
        const auto& b = at(args, 1);
        return arith(c, b.is_zero() ? Natural(0) : Natural(at(args, 0) / b));
      }
      case Op::Pow2: {
        const auto& e = at(args, 0);
        if (!fits_u64(e) || to_u64(e) / 64 >= c.remaining) {
          c.remaining = 0;
          return std::nullopt;
        }
        if (!charge(c, word_cost(to_u64(e) + 1))) return std::nullopt;
        return pow2(to_u64(e));
      }
      case Op::Bit: {
        if (!charge(c, 1)) return std::nullopt;
        const auto& pos = at(args, 1);
        if (!fits_u64(pos)) return Natural(0);
        return Natural(test_bit(at(args, 0), to_u64(pos)) ? 1 : 0);
      }
      case Op::Msb:
        return arith(c, Natural(msb_index(at(args, 0))));
      case Op::BitOr:
        return arith(c, at(args, 0) | at(args, 1));
      case Op::Clocked:
        return eval_clocked(args, c);
      case Op::Query: {
        if (!charge(c, 1)) return std::nullopt;
        const auto& pos = at(args, 0);
        if (c.oracle == nullptr || !fits_u64(pos) || to_u64(pos) >= c.oracle->length) {
          c.remaining = 0;  // hangs
          return std::nullopt;
        }
        return Natural(test_bit(c.oracle->code, to_u64(pos)) ? 1 : 0);
      }
      case Op::Univ: {
        const Natural& code = at(args, 0);
        if (!charge(c, word_cost(bit_length(code)))) return std::nullopt;
        const Tree& t = decode_cached(code);
        ++c.depth;
        auto r = eval(*t, args.size() > 1 ? args.subspan(1) : std::span<const Natural>{}, c);
        --c.depth;
        return r;
      }
    }
    return std::nullopt;
  }

  std::optional<Natural> eval_clocked(std::span<const Natural> args, Ctx& c) {
    if (!charge(c, 1)) return std::nullopt;
    const Natural& code = at(args, 0);
    const Natural& clock = at(args, 3);
    if (!charge(c, word_cost(bit_length(code)) - 1)) return std::nullopt;
    const bool clock_fits = fits_u64(clock) && to_u64(clock) <= c.remaining;
    const StepBudget cap = clock_fits ? to_u64(clock) : c.remaining;

    const Tree& t = decode_cached(code);
    Ctx inner{cap, intern_oracle(at(args, 1)), c.depth + 1};
    const Natural input = at(args, 2);
    auto r = eval(*t, std::span<const Natural>(&input, 1), inner);
    if (r) {
      c.remaining -= cap - inner.remaining;
      return *r + 1;
    }
    if (!clock_fits) {
      c.remaining = 0;
      return std::nullopt;
    }
    c.remaining -= cap;
    return Natural(0);
  }
};

Evaluator::Evaluator() : impl_(std::make_unique<Impl>()) {}
Evaluator::~Evaluator() = default;

Run Evaluator::run(const Tree& program, std::span<const Natural> args, StepBudget budget,
                   const OracleString* oracle) {
  impl_->pinned.try_emplace(program.get(), program);
  const Oracle* o = oracle ? impl_->intern_oracle(oracle->code()) : nullptr;
  Ctx c{budget, o, 0};
  auto r = impl_->eval(*program, args, c);
  if (!r) return Run{PartialOutcome::diverged(), budget};
  return Run{PartialOutcome::converged(std::move(*r)), budget - c.remaining};
}

Run Evaluator::run(const ProgramCode& code, std::span<const Natural> args, StepBudget budget,
                   const OracleString* oracle) {
  return run(program(code), args, budget, oracle);
}

Tree Evaluator::program(const ProgramCode& code) { return impl_->decode_cached(code.value); }

// ---------------------------------------------------------------- free API

PartialOutcome eval_bounded(const ProgramCode& e, std::span<const Natural> args, StepBudget s) {
  Evaluator ev;
  return ev.run(e, args, s).outcome;
}

PartialOutcome eval_oracle_bounded(const ProgramCode& e, const OracleString& oracle,
                                   const Natural& n, StepBudget s) {
  Evaluator ev;
  return ev.run(e, std::span<const Natural>(&n, 1), s, &oracle).outcome;
}

FiniteSet we_window(const ProgramCode& e, std::uint64_t input_bound, StepBudget steps,
                    const OracleString* oracle, Evaluator* shared) {
  Evaluator local;
  Evaluator& ev = shared ? *shared : local;
  const Tree t = ev.program(e);
  std::vector<std::uint64_t> members;
  for (std::uint64_t n = 0; n < input_bound; ++n) {
    const Natural x = n;
    if (ev.run(t, std::span<const Natural>(&x, 1), steps, oracle).outcome.is_converged()) {
      members.push_back(n);
    }
  }
  return FiniteSet::from_elements(std::move(members));
}

FiniteSet we_bounded(const ProgramCode& e, StepBudget s, const OracleString* oracle) {
  return we_window(e, s, s, oracle);
}

std::vector<std::uint64_t> enumeration_order(const ProgramCode& e, std::uint64_t input_bound,
                                             StepBudget steps, const OracleString* oracle) {
  Evaluator ev;
  const Tree t = ev.program(e);
  std::vector<std::pair<StepBudget, std::uint64_t>> hits;
  for (std::uint64_t n = 0; n < input_bound; ++n) {
    const Natural x = n;
    const Run r = ev.run(t, std::span<const Natural>(&x, 1), steps, oracle);
    if (r.outcome.is_converged()) hits.emplace_back(r.steps, n);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::uint64_t> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(h.second);
  return out;
}

bool is_total_tier(const ProgramCode& e) { return decode(e)->total_tier; }

void require_total_tier(const Tree& t, std::string_view what) {
  if (!t->total_tier) throw NotTotalTier(std::string(what) + " must be a total-tier program");
}

StepBudget sufficient_budget(const Tree& p, std::span<const Natural> args) {
  require_total_tier(p, "sufficient_budget argument");
  Evaluator ev;
  return ev.run(p, args, kUnlimited).steps;
}

StepBudget sufficient_budget(const ProgramCode& p, std::span<const Natural> args) {
  return sufficient_budget(decode(p), args);
}

Natural eval_total(const Tree& p, std::span<const Natural> args, Evaluator* shared) {
  require_total_tier(p, "eval_total argument");
  Evaluator local;
  Evaluator& ev = shared ? *shared : local;
  return ev.run(p, args, kUnlimited).outcome.value();
}

Natural eval_total(const ProgramCode& p, std::span<const Natural> args, Evaluator* shared) {
  Evaluator local;
  Evaluator& ev = shared ? *shared : local;
  return eval_total(ev.program(p), args, &ev);
}

Natural eval_total(const Tree& p, std::initializer_list<Natural> args, Evaluator* shared) {
  return eval_total(p, std::span<const Natural>(args.begin(), args.size()), shared);
}

}  // namespace canimm::machine
