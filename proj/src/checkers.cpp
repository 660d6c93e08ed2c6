#include "canimm/checkers.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace canimm {

namespace {

Natural value_at(const Tree& f, std::uint64_t x, Evaluator& ev) {
  const Natural arg = x;
  return machine::eval_total(f, std::span<const Natural>(&arg, 1), &ev);
}

void finish(Verdict& v) {
  if (!v.violations.empty()) v.status = Status::Fail;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string Violation::to_line() const {
  std::string out = "violation\tsource=" + std::to_string(source) +
                    "\tindex=" + std::to_string(index) + "\tset=" + witness.to_string() +
                    "\tbound=" + to_decimal(bound);
  if (!note.empty()) out += "\tnote=" + note;
  return out;
}

void Verdict::write(std::ostream& os) const {
  os << "verdict\t" << check << '\t' << to_string(status);
  for (const auto& [k, val] : horizon) os << '\t' << k << '=' << val;
  os << '\n';
  for (const auto& x : violations) os << x.to_line() << '\n';
  if (!skipped.empty()) {
    os << "skipped";
    for (const auto& [src, i] : skipped) os << '\t' << src << ':' << i;
    os << '\n';
  }
}

Verdict check_canonical_immunity(const SetPrefix& prefix, const Tree& h, const Registry& pool,
                                 const std::vector<std::uint64_t>& k_map,
                                 std::uint64_t index_bound) {
  machine::require_total_tier(h, "immunity bound");
  Verdict v;
  v.check = "immunity";
  v.horizon = {{"length", std::to_string(prefix.length())},
               {"index_bound", std::to_string(index_bound)},
               {"pool", std::to_string(pool.size())}};
  Evaluator ev;
  std::vector<Natural> bounds;
  for (const auto& d : pool.entries()) {
    const std::uint64_t k = d.id < k_map.size() ? k_map[d.id] : d.id;
    for (std::uint64_t i = k; i <= index_bound; ++i) {
      const FiniteSet set = d.at(i, &ev);
      if (!set.empty() && set.max() >= prefix.length()) {
        v.skipped.emplace_back(d.id, i);
        continue;
      }
      if (!prefix.includes(set)) continue;
      while (bounds.size() <= i) bounds.push_back(value_at(h, bounds.size(), ev));
      if (Natural(set.size()) > bounds[i]) v.violations.push_back({d.id, i, set, bounds[i], {}});
    }
  }
  finish(v);
  return v;
}

Verdict refute_domination(const std::vector<std::uint64_t>& principal, const Tree& f,
                          std::uint64_t first, std::uint64_t last, std::uint64_t index_base) {
  machine::require_total_tier(f, "dominating function");
  Verdict v;
  v.check = "domination";
  v.horizon = {{"first", std::to_string(first)},
               {"last", std::to_string(last)},
               {"members", std::to_string(principal.size())},
               {"index_base", std::to_string(index_base)}};
  if (first < index_base || last - index_base >= principal.size() || last < first) {
    v.status = Status::Inconclusive;
    return v;
  }
  Evaluator ev;
  for (std::uint64_t s = first; s <= last; ++s) {
    const std::uint64_t x = principal[s - index_base];
    const Natural bound = value_at(f, s, ev);
    if (Natural(x) > bound) {
      v.violations.push_back({0, s, FiniteSet::from_elements({x}), bound, "exceeds"});
    }
  }
  finish(v);
  return v;
}

Verdict check_effective_immunity(const SetPrefix& prefix, const Tree& h,
                                 const std::vector<ProgramCode>& programs, StepBudget budget) {
  machine::require_total_tier(h, "effective immunity bound");
  Verdict v;
  v.check = "effective";
  v.horizon = {{"length", std::to_string(prefix.length())},
               {"programs", std::to_string(programs.size())},
               {"budget", std::to_string(budget)}};
  Evaluator ev;
  for (std::uint64_t e = 0; e < programs.size(); ++e) {
    const FiniteSet w = machine::we_bounded(programs[e], budget);
    if (w.empty() || !prefix.includes(w)) continue;
    const Natural bound = value_at(h, e, ev);
    if (Natural(w.size()) > bound) v.violations.push_back({e, e, w, bound, {}});
  }
  finish(v);
  return v;
}

std::vector<ProgramCode> raw_codes(std::uint64_t first, std::uint64_t last) {
  std::vector<ProgramCode> out;
  for (std::uint64_t e = first; e <= last; ++e) out.push_back(ProgramCode{Natural(e)});
  return out;
}

Verdict check_pair_invariants(const ConstructionTrace& trace, std::uint64_t stages) {
  Verdict v;
  v.check = "pair-invariants";
  v.horizon = {{"stages", std::to_string(stages)}};
  std::set<std::uint64_t> r, q, f;
  auto apply = [](std::set<std::uint64_t>& s, const TraceRecord::Delta& d) {
    for (auto x : d.removed) s.erase(x);
    for (auto x : d.added) s.insert(x);
  };
  for (const auto& rec : trace.records) {
    if (rec.stage >= stages) break;
    for (const auto& d : rec.deltas) {
      if (d.set == "R") apply(r, d);
      else if (d.set == "Q") apply(q, d);
      else if (d.set == "F") apply(f, d);
    }
    if (f.size() > 2 * (rec.stage + 1)) {
      v.violations.push_back({0, rec.stage, FiniteSet::from_elements({f.begin(), f.end()}), 2 * (rec.stage + 1), "F too large"});
    }
    std::vector<std::uint64_t> both;
    std::set_intersection(r.begin(), r.end(), q.begin(), q.end(), std::back_inserter(both));
    if (!both.empty()) {
      v.violations.push_back({0, rec.stage, FiniteSet::from_elements(both), 0, "R and Q meet"});
    }
    std::vector<std::uint64_t> joined;
    std::set_union(r.begin(), r.end(), q.begin(), q.end(), std::back_inserter(joined));
    std::vector<std::uint64_t> pairs;
    for (auto p : f) {
      pairs.push_back(2 * p);
      pairs.push_back(2 * p + 1);
    }
    if (joined != pairs) {
      v.violations.push_back({0, rec.stage, FiniteSet::from_elements(joined), 0, "R and Q do not cover F"});
    }
  }
  finish(v);
  return v;
}

Verdict check_markers_increasing(const ConstructionTrace& trace) {
  Verdict v;
  v.check = "markers";
  v.horizon = {{"records", std::to_string(trace.records.size())}};
  for (const auto& rec : trace.records) {
    const auto field = rec.get("markers");
    if (!field) continue;
    const auto xs = parse_list(*field);
    for (std::size_t n = 1; n < xs.size(); ++n) {
      if (xs[n] <= xs[n - 1]) {
        v.violations.push_back({0, rec.stage, FiniteSet::from_elements({xs[n - 1], xs[n]}), n, "not increasing"});
        break;
      }
    }
  }
  finish(v);
  return v;
}

Verdict check_one_per_pair(const SetPrefix& prefix, std::uint64_t pairs) {
  Verdict v;
  v.check = "one-per-pair";
  v.horizon = {{"pairs", std::to_string(pairs)}, {"length", std::to_string(prefix.length())}};
  if (prefix.length() < 2 * pairs) {
    v.status = Status::Inconclusive;
    return v;
  }
  for (std::uint64_t p = 0; p < pairs; ++p) {
    if (prefix.contains(2 * p) == prefix.contains(2 * p + 1)) {
      std::vector<std::uint64_t> in;
      if (prefix.contains(2 * p)) in = {2 * p, 2 * p + 1};
      v.violations.push_back({0, p, FiniteSet::from_elements(in), 1, "pair"});
    }
  }
  finish(v);
  return v;
}

Verdict check_replay(const ConstructionTrace& trace, const std::string& set,
                     const SetPrefix& prefix) {
  Verdict v;
  v.check = "replay";
  v.horizon = {{"set", set}, {"length", std::to_string(prefix.length())}};
  const auto members = trace.replay_members(set);
  std::vector<std::uint64_t> diff;
  for (auto x : members) {
    if (!prefix.contains(x)) diff.push_back(x);
  }
  for (auto x : prefix.principal()) {
    if (!std::binary_search(members.begin(), members.end(), x)) diff.push_back(x);
  }
  if (!diff.empty()) {
    v.violations.push_back({0, 0, FiniteSet::from_elements(diff), 0, "replay differs"});
  }
  finish(v);
  return v;
}

}  // namespace canimm
