#include "canimm/records.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "canimm/codec.hpp"
#include "canimm/constructions.hpp"
#include "canimm/schnorr.hpp"

namespace canimm {

using namespace machine::dsl;

namespace {

std::vector<std::string> split(const std::string& line, char sep = '\t') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::uint64_t parse_u64(const std::string& s) {
  std::size_t used = 0;
  const auto v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

std::string code_of(const Tree& t) { return to_decimal(machine::encode(t).value); }

Tree tree_of(const std::string& code) { return machine::decode(ProgramCode{parse_natural(code)}); }

std::string list_of(std::uint64_t first, std::uint64_t last) {
  std::vector<std::uint64_t> xs;
  for (std::uint64_t x = first; x <= last; ++x) xs.push_back(x);
  return format_list(xs);
}

std::uint64_t or_default(std::uint64_t v, std::uint64_t fallback) { return v == 0 ? fallback : v; }

void add_prefix(RunRecord& run, const std::string& name, const SetPrefix& p) {
  run.prefixes.emplace_back(name, p);
}

void add_claim(RunRecord& run, std::string kind,
               std::vector<std::pair<std::string, std::string>> fields) {
  run.claims.push_back(Claim{std::move(kind), std::move(fields)});
}

void param(RunRecord& run, const std::string& key, const std::string& value) {
  run.params.emplace_back(key, value);
}

void param(RunRecord& run, const std::string& key, std::uint64_t value) {
  param(run, key, std::to_string(value));
}

Tree bci_bound() { return add(mul(lit(4), pair_of(arg(0), arg(0))), lit(3)); }
Tree ci_not_hi_bound() { return mul(lit(2), pair_of(arg(0), arg(0))); }

}  // namespace

std::optional<std::string> Claim::get(const std::string& key) const {
  for (const auto& [k, v] : fields) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string Claim::require(const std::string& key) const {
  auto v = get(key);
  if (!v) throw std::runtime_error("claim " + kind + " lacks " + key);
  return *v;
}

const SetPrefix& RunRecord::prefix(const std::string& name) const {
  for (const auto& [n, p] : prefixes) {
    if (n == name) return p;
  }
  throw std::runtime_error("no prefix named " + name);
}

std::optional<std::string> RunRecord::param(const std::string& key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void RunRecord::write(std::ostream& os) const {
  os << "construction\t" << construction << '\n';
  for (const auto& [k, v] : params) os << "param\t" << k << '\t' << v << '\n';
  for (const auto& d : pool.entries()) {
    os << "pool\t" << d.id << '\t' << to_decimal(d.rule.value) << '\t' << (d.surjective ? 1 : 0)
       << '\n';
  }
  for (const auto& [name, p] : prefixes) {
    os << "prefix\t" << name << '\t' << p.length() << '\t' << format_list(p.principal()) << '\n';
  }
  for (const auto& r : trace.records) os << "trace\t" << r.to_line() << '\n';
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const auto& c = chain[k];
    os << "chain\t" << k << '\t' << c.name << '\t' << c.stem.to_string() << '\t'
       << to_decimal(c.enumerator.value) << '\t' << c.note << '\n';
  }
  for (const auto& w : witnesses) {
    os << "witness\t" << w.i << '\t' << w.n << '\t' << w.index << '\t' << (w.resolved ? 1 : 0)
       << '\t' << w.rho << '\t' << w.h.to_string() << '\n';
  }
  for (const auto& c : claims) {
    os << "claim\t" << c.kind;
    for (const auto& [k, v] : c.fields) os << '\t' << k << '=' << v;
    os << '\n';
  }
}

RunRecord RunRecord::read(std::istream& is) {
  RunRecord run;
  std::string line;
  std::uint64_t number = 0;
  while (std::getline(is, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      const auto tag_end = line.find('\t');
      const std::string tag = line.substr(0, tag_end);
      const std::string rest = tag_end == std::string::npos ? "" : line.substr(tag_end + 1);
      const auto f = split(rest);
      auto need = [&](std::size_t n) {
        if (f.size() < n) throw std::runtime_error("too few fields");
      };
      if (tag == "construction") {
        need(1);
        run.construction = f[0];
      } else if (tag == "param") {
        need(2);
        run.params.emplace_back(f[0], f[1]);
      } else if (tag == "pool") {
        need(3);
        const auto& d = run.pool.register_numbering(ProgramCode{parse_natural(f[1])}, f[2] == "1");
        if (d.id != parse_u64(f[0])) throw std::runtime_error("pool ids must be consecutive");
      } else if (tag == "prefix") {
        need(3);
        run.prefixes.emplace_back(f[0], SetPrefix::from_members(parse_list(f[2]), parse_u64(f[1])));
      } else if (tag == "trace") {
        run.trace.records.push_back(TraceRecord::parse(rest));
      } else if (tag == "chain") {
        need(5);
        run.chain.push_back({f[1], FiniteSet::parse(f[2]), ProgramCode{parse_natural(f[3])},
                             f.size() > 4 ? f[4] : ""});
      } else if (tag == "witness") {
        need(6);
        run.witnesses.push_back({parse_u64(f[0]), parse_u64(f[1]), parse_u64(f[2]), f[3] == "1",
                                 f[4], FiniteSet::parse(f[5])});
      } else if (tag == "claim") {
        need(1);
        Claim c{f[0], {}};
        for (std::size_t k = 1; k < f.size(); ++k) {
          const auto eq = f[k].find('=');
          if (eq == std::string::npos) throw std::runtime_error("claim field without '='");
          c.fields.emplace_back(f[k].substr(0, eq), f[k].substr(eq + 1));
        }
        run.claims.push_back(std::move(c));
      } else {
        throw std::runtime_error("unknown record '" + tag + "'");
      }
    } catch (const std::exception& ex) {
      throw std::runtime_error("line " + std::to_string(number) + ": " + ex.what());
    }
  }
  if (run.construction.empty()) throw std::runtime_error("missing construction line");
  return run;
}

bool operator==(const RunRecord& a, const RunRecord& b) {
  std::ostringstream x, y;
  a.write(x);
  b.write(y);
  return x.str() == y.str();
}

std::vector<Tree> default_functions() { return {arg(0), lit(1), div(arg(0), lit(2))}; }

std::vector<Transformer> parse_schedule(const std::string& text, const Registry& pool) {
  std::vector<Transformer> out;
  for (const auto& token : split(text, ',')) {
    if (token.empty()) continue;
    const auto parts = split(token, ':');
    const std::string& name = parts[0];
    auto arg_at = [&](std::size_t k) {
      if (parts.size() <= k) throw std::invalid_argument("schedule token '" + token + "' needs an argument");
      return parse_u64(parts[k]);
    };
    if (name == "thin") {
      const auto id = arg_at(1);
      if (id >= pool.size()) throw std::invalid_argument("no pool entry " + std::to_string(id));
      out.push_back(thin_step(pool[id], parts.size() > 2 ? arg_at(2) : 16));
    } else if (name == "thin-all") {
      for (const auto& d : pool.entries()) out.push_back(thin_step(d, 16));
    } else if (name == "avoid") {
      out.push_back(avoidance_step(arg_at(1)));
    } else if (name == "size") {
      out.push_back(size_step(arg_at(1)));
    } else if (name == "deh") {
      if (parts.size() < 3) throw std::invalid_argument("deh needs <code>:<budget>");
      out.push_back(deh_step(ProgramCode{parse_natural(parts[1])}, lit(0), arg_at(2)));
    } else if (name == "grab") {
      const auto x = arg_at(1);
      out.push_back({"grab", [x](const Condition& c) {
                       auto stem = c.stem.elements();
                       if (!c.stem.contains(x)) stem.push_back(x);
                       return StepResult{Condition{FiniteSet::from_elements(stem),
                                                   c.reservoir.drop(c.reservoir.rank(x + 1))},
                                         "x=" + std::to_string(x), {}, {}, {}};
                     }});
    } else {
      throw std::invalid_argument("unknown schedule token '" + token + "'");
    }
  }
  return out;
}

namespace {

RunRecord build_delta2(const BuildConfig& c, const Registry& pool) {
  RunRecord run;
  const auto stages = or_default(c.stages, 10000);
  const auto bound = or_default(c.index_bound, c.markers);
  const auto res = delta2_prefix(pool.codes(), stages, c.markers);
  param(run, "stages", stages);
  param(run, "markers", c.markers);
  param(run, "pool_stabilized", res.pool_stabilized ? "1" : "0");
  run.pool = pool;
  add_prefix(run, "R", res.prefix);
  run.trace = res.trace;
  add_claim(run, "markers", {});
  add_claim(run, "immunity", {{"set", "R"}, {"h", code_of(arg(0))},
                              {"k", list_of(0, pool.size() - 1)},
                              {"index_bound", std::to_string(bound)}});
  add_claim(run, "replay", {{"set", "R"}});
  return run;
}

RunRecord build_bci(const BuildConfig& c, const Registry& pool) {
  RunRecord run;
  const auto stages = or_default(c.stages, 1000);
  const auto res = bci_run(pool, stages);
  const auto bound = or_default(c.index_bound, res.index_horizon);
  param(run, "stages", stages);
  param(run, "index_horizon", res.index_horizon);
  run.pool = pool;
  add_prefix(run, "R", res.r);
  add_prefix(run, "Q", res.q);
  run.trace = res.trace;
  add_claim(run, "pairs", {{"stages", std::to_string(stages)}});
  for (const char* set : {"R", "Q"}) {
    add_claim(run, "immunity", {{"set", set}, {"h", code_of(bci_bound())},
                                {"k", list_of(0, pool.size() - 1)},
                                {"index_bound", std::to_string(bound)}});
  }
  add_claim(run, "replay", {{"set", "R"}});
  add_claim(run, "replay", {{"set", "Q"}});
  return run;
}

RunRecord build_cofinal(const BuildConfig& c, const Registry& pool) {
  RunRecord run;
  std::string bits = c.bits;
  if (bits.empty()) {
    for (std::uint64_t n = 0; n < c.markers; ++n) bits.push_back(n % 2 == 0 ? '1' : '0');
  }
  const auto res = cofinal_encode(pool, bits);
  const auto bound = or_default(c.index_bound, bits.size() - 1);
  param(run, "bits", bits);
  run.pool = pool;
  add_prefix(run, "R", res.r);
  add_prefix(run, "Q", res.q);
  run.trace = res.trace;
  add_claim(run, "cofinal", {{"set", "R"}, {"bits", bits}});
  add_claim(run, "immunity", {{"set", "Q"}, {"h", code_of(add(mul(lit(2), arg(0)), lit(1)))},
                              {"k", list_of(0, pool.size() - 1)},
                              {"index_bound", std::to_string(bound)}});
  add_claim(run, "replay", {{"set", "R"}});
  add_claim(run, "replay", {{"set", "Q"}});
  return run;
}

RunRecord build_ci_hi(const BuildConfig& c, const Registry& pool) {
  RunRecord run;
  const auto stages = or_default(c.stages, 64);
  const auto bound = or_default(c.index_bound, stages - 1);
  const auto fns = default_functions();
  const auto res = ci_hi_run(pool, fns, stages);
  param(run, "stages", stages);
  run.pool = pool;
  add_prefix(run, "R", res.prefix);
  run.trace = res.trace;
  add_claim(run, "immunity", {{"set", "R"}, {"h", code_of(arg(0))},
                              {"k", list_of(0, pool.size() - 1)},
                              {"index_bound", std::to_string(bound)}});
  for (std::uint64_t j = 0; j < fns.size() && j < stages; ++j) {
    add_claim(run, "exceeds", {{"set", "R"}, {"f", code_of(fns[j])}, {"first", std::to_string(j)},
                               {"last", std::to_string(j)}, {"base", "0"}});
  }
  add_claim(run, "replay", {{"set", "R"}});
  return run;
}

RunRecord build_ci_not_hi(const BuildConfig& c, const Registry& pool) {
  RunRecord run;
  const auto stages = or_default(c.stages, 1000);
  const auto res = ci_not_hi_run(pool, stages);
  const auto bound = or_default(c.index_bound, res.index_horizon);
  param(run, "stages", stages);
  param(run, "pairs", res.pairs);
  run.pool = pool;
  add_prefix(run, "R", res.prefix);
  run.trace = res.trace;
  add_claim(run, "one-per-pair", {{"set", "R"}, {"pairs", std::to_string(res.pairs)}});
  const Tree twice = mul(lit(2), arg(0));
  add_claim(run, "dominated", {{"set", "R"}, {"f", code_of(twice)}, {"first", "1"},
                               {"last", std::to_string(res.prefix.principal().size())},
                               {"base", "1"}});
  add_claim(run, "dominated", {{"set", "R~"}, {"f", code_of(twice)}, {"first", "1"},
                               {"last", std::to_string(res.prefix.complement_principal().size())},
                               {"base", "1"}});
  add_claim(run, "immunity", {{"set", "R"}, {"h", code_of(ci_not_hi_bound())},
                              {"k", list_of(0, pool.size() - 1)},
                              {"index_bound", std::to_string(bound)}});
  add_claim(run, "replay", {{"set", "R"}});
  return run;
}

RunRecord build_hi_not_ci(const BuildConfig& c) {
  RunRecord run;
  const auto pairs = or_default(c.blocks, 12);
  const auto fns = default_functions();
  const auto res = hi_not_ci_run(fns, pairs);
  param(run, "blocks", pairs);
  for (const auto& rule : res.witness_rules) run.pool.register_numbering(rule);
  add_prefix(run, "R", res.prefix);
  run.trace = res.trace;
  for (std::uint64_t i = 0; i < fns.size(); ++i) {
    std::uint64_t top = 0;
    bool any = false;
    for (const auto& s : res.selections) {
      if (s.i == i) {
        top = std::max(top, 2 * s.n);
        any = true;
      }
    }
    if (!any) continue;
    const auto bound = c.index_bound == 0 ? top : c.index_bound;
    std::vector<std::uint64_t> k(fns.size(), bound + 1);
    k[i] = 0;
    add_claim(run, "immunity", {{"set", "R"}, {"h", code_of(fns[i])}, {"k", format_list(k)},
                                {"index_bound", std::to_string(bound)}});
  }
  for (const auto& s : res.selections) {
    const auto pos = std::to_string(s.before + 1);
    add_claim(run, "exceeds", {{"set", "R"}, {"f", code_of(fns[s.i])}, {"first", pos},
                               {"last", pos}, {"base", "1"}});
  }
  add_claim(run, "replay", {{"set", "R"}});
  return run;
}

RunRecord build_effectivize(const BuildConfig& c) {
  RunRecord run;
  const auto stages = or_default(c.stages, 64);
  const auto budget = or_default(c.budget, 256);
  std::vector<std::uint64_t> all;
  for (std::uint64_t x = 0; x < 2 * stages; ++x) all.push_back(x);
  const auto r = SetPrefix::from_members(all, 2 * stages);
  const auto res = effectivize_inside(r, stages, budget);
  param(run, "stages", stages);
  param(run, "budget", budget);
  param(run, "settled", res.settled);
  add_prefix(run, "R", r);
  add_prefix(run, "Q", res.q);
  run.trace = res.trace;
  if (res.settled > 0) {
    add_claim(run, "effective", {{"set", "Q"}, {"h", code_of(mul(lit(2), arg(0)))}, {"first", "0"},
                                 {"last", std::to_string(res.settled - 1)},
                                 {"budget", std::to_string(budget)}});
  }
  add_claim(run, "replay", {{"set", "Q"}});
  return run;
}

RunRecord build_2generic(const BuildConfig& c) {
  RunRecord run;
  const auto bound = or_default(c.blocks, 3);
  const auto limit = or_default(c.budget, 4096);
  const Tree f = lit(0);
  const auto e = machine::encode(halt_if(query(arg(0))));
  const OracleString sigma(c.sigma);
  const auto table = build_2generic_witness(sigma, e, f, bound, bound, limit);
  param(run, "blocks", bound);
  param(run, "budget", limit);
  param(run, "sigma", c.sigma);
  run.pool.register_numbering(table.rule);
  for (const auto& w : table.entries) {
    run.witnesses.push_back({w.i, w.n, w.index, w.resolved, w.rho.str(), w.h});
  }
  add_claim(run, "witness", {{"e", to_decimal(e.value)}, {"f", code_of(f)}, {"sigma", c.sigma}});
  return run;
}

RunRecord build_generic_run(const BuildConfig& c, const Registry& pool) {
  RunRecord run;
  const auto avoid = or_default(c.blocks, 6);
  const std::string schedule =
      c.schedule.empty() ? "thin-all,avoid:" + std::to_string(avoid) : c.schedule;
  const auto horizon = or_default(c.index_bound, 1000);
  GenericOptions options;
  options.horizon = horizon;
  options.stem_growth = 2;
  const auto transformers = parse_schedule(schedule, pool);
  const Condition start{FiniteSet(), ComputableSet::omega()};
  const auto res = build_generic(start, transformers, options);
  param(run, "schedule", schedule);
  param(run, "horizon", horizon);
  param(run, "growth", options.stem_growth);
  run.pool = pool;
  add_prefix(run, "R", res.prefix);
  std::vector<std::uint64_t> k(pool.size(), kNeverChecked);
  std::vector<std::uint64_t> missed;
  for (const auto& link : res.chain) {
    const auto& s = link.step;
    run.chain.push_back({link.name, s.condition.stem, s.condition.reservoir.code(), s.note});
    if (s.numbering && s.from_index) k[*s.numbering] = std::min(k[*s.numbering], *s.from_index);
    missed.insert(missed.end(), s.missed.begin(), s.missed.end());
  }
  add_claim(run, "chain", {{"horizon", std::to_string(horizon)}});
  add_claim(run, "immunity", {{"set", "R"}, {"h", code_of(arg(0))}, {"k", format_list(k)},
                              {"index_bound", "64"}});
  if (!missed.empty()) add_claim(run, "schnorr", {{"set", "R"}, {"missed", format_list(missed)}});
  return run;
}

}  // namespace

RunRecord build_run(const BuildConfig& config) {
  const auto& names = construction_names();
  if (std::find(names.begin(), names.end(), config.construction) == names.end()) {
    throw std::invalid_argument("unknown construction '" + config.construction + "'");
  }
  if (config.markers == 0) throw std::invalid_argument("--markers must be positive");
  const Registry pool = config.pool ? *config.pool : default_pool();
  RunRecord run;
  const auto& n = config.construction;
  if (n == "delta2") run = build_delta2(config, pool);
  else if (n == "bci") run = build_bci(config, pool);
  else if (n == "cofinal") run = build_cofinal(config, pool);
  else if (n == "ci-hi") run = build_ci_hi(config, pool);
  else if (n == "ci-not-hi") run = build_ci_not_hi(config, pool);
  else if (n == "hi-not-ci") run = build_hi_not_ci(config);
  else if (n == "effectivize") run = build_effectivize(config);
  else if (n == "2generic-witness") run = build_2generic(config);
  else run = build_generic_run(config, pool);
  run.construction = n;
  return run;
}

namespace {

bool in_suite(const std::string& kind, const std::string& suite) {
  if (suite == "all") return true;
  if (kind == "immunity") return suite == "immunity";
  if (kind == "dominated" || kind == "exceeds") return suite == "domination";
  if (kind == "effective") return suite == "effective";
  if (kind == "replay") return suite == "replay";
  return suite == "invariants";
}

std::vector<std::uint64_t> principal_of(const RunRecord& run, const std::string& set) {
  if (!set.empty() && set.back() == '~') {
    return run.prefix(set.substr(0, set.size() - 1)).complement_principal();
  }
  return run.prefix(set).principal();
}

Verdict check_chain(const RunRecord& run, std::uint64_t horizon) {
  Verdict v;
  v.check = "chain";
  v.horizon = {{"horizon", std::to_string(horizon)}, {"links", std::to_string(run.chain.size())}};
  auto ev = std::make_shared<Evaluator>();
  std::vector<Condition> conds;
  for (const auto& link : run.chain) {
    conds.push_back(Condition{link.stem, ComputableSet(machine::decode(link.enumerator), ev)});
  }
  for (std::size_t k = 1; k < conds.size(); ++k) {
    const auto e = extends(conds[k], conds[k - 1], horizon);
    if (!e.holds || !conds[k].valid()) {
      v.violations.push_back({0, k, conds[k].stem, 0, run.chain[k].name + ": " + e.failed});
    }
  }
  if (!v.violations.empty()) v.status = Status::Fail;
  return v;
}

Verdict check_schnorr_claim(const SetPrefix& prefix, const std::vector<std::uint64_t>& missed) {
  Verdict v;
  v.check = "schnorr";
  std::uint64_t m = 0;
  for (auto i : missed) {
    if (block_end(i) <= prefix.length()) m = std::max(m, i);
  }
  v.horizon = {{"M", std::to_string(m)}, {"missed", std::to_string(missed.size())}};
  if (m == 0) {
    v.status = Status::Inconclusive;
    return v;
  }
  for (std::uint64_t n = 0; n < missed.size() && n < m; ++n) {
    const auto u = in_U_n(prefix, n, m);
    if (!u.member) v.violations.push_back({0, n, {}, m, "not in U_n"});
  }
  if (!v.violations.empty()) v.status = Status::Fail;
  return v;
}

Verdict check_witness_claim(const RunRecord& run, const Claim& c) {
  Verdict v;
  v.check = "witness";
  const ProgramCode e{parse_natural(c.require("e"))};
  const Tree f = tree_of(c.require("f"));
  const std::string sigma = c.get("sigma").value_or("");
  std::uint64_t resolved = 0;
  Evaluator ev;
  for (const auto& w : run.witnesses) {
    if (!w.resolved) continue;
    ++resolved;
    const OracleString rho(w.rho);
    const Natural index = w.index;
    const Natural size = machine::eval_total(f, std::span<const Natural>(&index, 1), &ev) + 1;
    const bool extends_sigma = OracleString(sigma).is_prefix_of(rho);
    const bool inside = w.h.subset_of(pumped_domain(e, rho));
    const bool sized = Natural(w.h.size()) == size;
    const bool listed = run.pool.empty() || run.pool[0].at(w.index, &ev) == w.h;
    if (!(extends_sigma && inside && sized && listed)) {
      v.violations.push_back({w.i, w.n, w.h, size, "witness entry"});
    }
  }
  v.horizon = {{"entries", std::to_string(run.witnesses.size())},
               {"resolved", std::to_string(resolved)}};
  if (!v.violations.empty()) v.status = Status::Fail;
  return v;
}

Verdict invert(Verdict d) {
  d.check = "exceeds";
  if (d.status == Status::Fail) {
    d.status = Status::Pass;
    d.violations.clear();
  } else if (d.status == Status::Pass) {
    d.status = Status::Fail;
    d.violations.push_back({0, 0, {}, 0, "dominated on the range"});
  }
  return d;
}

}  // namespace

std::vector<Verdict> check_run(const RunRecord& run, const std::string& suite) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  std::vector<Verdict> out;
  for (const auto& c : run.claims) {
    if (!in_suite(c.kind, suite)) continue;
    Verdict v;
    if (c.kind == "immunity") {
      v = check_canonical_immunity(run.prefix(c.require("set")), tree_of(c.require("h")), run.pool,
                                   parse_list(c.require("k")), parse_u64(c.require("index_bound")));
    } else if (c.kind == "dominated" || c.kind == "exceeds") {
      v = refute_domination(principal_of(run, c.require("set")), tree_of(c.require("f")),
                            parse_u64(c.require("first")), parse_u64(c.require("last")),
                            parse_u64(c.require("base")));
      if (c.kind == "exceeds") v = invert(std::move(v));
      else v.check = "dominated";
    } else if (c.kind == "effective") {
      v = check_effective_immunity(
          run.prefix(c.require("set")), tree_of(c.require("h")),
          raw_codes(parse_u64(c.require("first")), parse_u64(c.require("last"))),
          parse_u64(c.require("budget")));
    } else if (c.kind == "replay") {
      v = check_replay(run.trace, c.require("set"), run.prefix(c.require("set")));
    } else if (c.kind == "pairs") {
      v = check_pair_invariants(run.trace, parse_u64(c.require("stages")));
    } else if (c.kind == "markers") {
      v = check_markers_increasing(run.trace);
    } else if (c.kind == "one-per-pair") {
      v = check_one_per_pair(run.prefix(c.require("set")), parse_u64(c.require("pairs")));
    } else if (c.kind == "cofinal") {
      const auto bits = c.require("bits");
      const auto d = cofinal_decode(run.prefix(c.require("set")), bits.size());
      v.check = "cofinal";
      v.horizon = {{"bits", std::to_string(bits.size())}};
      if (d.truncated || d.bits != bits) {
        v.status = Status::Fail;
        v.violations.push_back({0, 0, {}, 0, "decoded " + d.bits});
      }
    } else if (c.kind == "chain") {
      v = check_chain(run, parse_u64(c.require("horizon")));
    } else if (c.kind == "schnorr") {
      v = check_schnorr_claim(run.prefix(c.require("set")), parse_list(c.require("missed")));
    } else if (c.kind == "witness") {
      v = check_witness_claim(run, c);
    } else {
      throw std::runtime_error("unknown claim kind '" + c.kind + "'");
    }
    if (auto set = c.get("set")) v.horizon.emplace(v.horizon.begin(), "set", *set);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace canimm
