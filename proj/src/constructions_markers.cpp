#include <algorithm>
#include <set>
#include <stdexcept>

#include "canimm/constructions.hpp"
#include "pool_cache.hpp"

namespace canimm {

std::uint64_t pair_bound(std::uint64_t i) { return pair(i, i); }

namespace {

struct Converged {
  StepBudget cost;
  FiniteSet value;
};

std::vector<std::uint64_t> minus(const std::vector<std::uint64_t>& a,
                                 const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Delta2Result delta2_prefix(const std::vector<ProgramCode>& pool, StepBudget stages,
                           std::uint64_t markers) {
  if (stages == 0 || markers == 0) throw std::invalid_argument("stages and markers must be positive");
  const std::uint64_t pool_rows = std::min<std::uint64_t>(pool.size(), markers);

  // Convergence time and value of every D_{e,S}(i) with e, i < N.
  std::vector<std::vector<std::optional<Converged>>> table(pool_rows);
  Delta2Result out;
  for (std::uint64_t e = 0; e < pool_rows; ++e) {
    Evaluator ev;
    const Tree program = ev.program(pool[e]);
    table[e].resize(markers);
    for (std::uint64_t i = 0; i < markers; ++i) {
      const Natural x = i;
      const auto run = ev.run(program, std::span<const Natural>(&x, 1), stages);
      EntryStatus status{e, i, std::nullopt};
      if (run.outcome.is_converged()) {
        table[e][i] = Converged{run.steps, FiniteSet::from_code(run.outcome.value())};
        status.converged_at = run.steps;
      }
      out.entries.push_back(status);
    }
  }
  out.pool_stabilized = std::all_of(out.entries.begin(), out.entries.end(),
                                    [](const EntryStatus& s) { return s.converged_at.has_value(); });

  std::set<StepBudget> events{0};
  for (const auto& row : table) {
    for (const auto& c : row) {
      if (c) events.insert(c->cost);
    }
  }

  auto markers_at = [&](StepBudget s) {
    std::vector<std::uint64_t> xs(markers);
    Natural forbidden = 0;
    for (std::uint64_t n = 0; n < markers; ++n) {
      auto admit = [&](std::uint64_t e, std::uint64_t i) {
        if (e >= pool_rows) return;
        const auto& c = table[e][i];
        if (c && c->cost <= s && c->value.size() > i) forbidden |= c->value.code();
      };
      for (std::uint64_t i = 0; i <= n; ++i) admit(n, i);
      for (std::uint64_t e = 0; e < n; ++e) admit(e, n);
      xs[n] = next_clear_bit(forbidden, n == 0 ? 0 : xs[n - 1] + 1);
    }
    return xs;
  };

  std::vector<std::uint64_t> current;
  out.last_moved.assign(markers, 0);
  for (StepBudget s : events) {
    auto next = markers_at(s);
    if (s == 0) {
      out.trace.emit(0, "init").add("R", next).field("markers", format_list(next));
    } else if (next != current) {
      auto& rec = out.trace.emit(s, "move");
      rec.remove("R", minus(current, next)).add("R", minus(next, current));
      rec.field("markers", format_list(next));
      for (std::uint64_t n = 0; n < markers; ++n) {
        if (next[n] != current[n]) out.last_moved[n] = s;
      }
    }
    current = std::move(next);
  }
  out.markers = current;
  out.prefix = SetPrefix::from_members(current, current.back() + 1);
  return out;
}

CiHiResult ci_hi_run(const Registry& pool, const std::vector<Tree>& fns, std::uint64_t stages) {
  if (stages == 0) throw std::invalid_argument("stages must be positive");
  detail::PoolCache d(pool);
  CiHiResult out;
  Natural forbidden = 0;
  for (std::uint64_t s = 0; s < stages; ++s) {
    // F_s adds the row and column with max(e, i) = s.
    auto admit = [&](std::uint64_t e, std::uint64_t i) {
      if (e >= d.size()) return;
      const auto& v = d.at(e, i);
      if (v.size() > i) forbidden |= v.code();
    };
    for (std::uint64_t i = 0; i <= s; ++i) admit(s, i);
    for (std::uint64_t e = 0; e < s; ++e) admit(e, s);

    std::uint64_t lower = s == 0 ? 0 : out.x.back() + 1;
    auto& rec = out.trace.emit(s, "pick");
    if (s < fns.size()) {
      const auto bound = to_u64(machine::eval_total(fns[s], {Natural(s)}));
      lower = std::max(lower, bound + 1);
      rec.field("bound", bound);
    }
    out.x.push_back(next_clear_bit(forbidden, lower));
    rec.add("R", {out.x.back()});
  }
  out.prefix = SetPrefix::from_members(out.x, out.x.back() + 1);
  return out;
}

}  // namespace canimm
