#include <algorithm>
#include <set>
#include <stdexcept>

#include "canimm/constructions.hpp"

namespace canimm {

EffectivizeResult effectivize_inside(const SetPrefix& r, std::uint64_t stages, StepBudget budget,
                                     const std::vector<ProgramCode>& programs) {
  const auto& members = r.principal();
  if (members.size() < 2 * stages) throw std::invalid_argument("R needs at least 2S members");

  // X_e = W_e intersected with {r_{2e}, r_{2e+1}, ..}; fixed because the
  // budget is.
  std::vector<std::optional<std::uint64_t>> least(stages);
  for (std::uint64_t e = 0; e < stages; ++e) {
    const ProgramCode code = e < programs.size() ? programs[e] : ProgramCode(e);
    const auto w = machine::we_bounded(code, budget);
    for (std::size_t j = 2 * e; j < members.size(); ++j) {
      if (w.contains(members[j])) {
        least[e] = members[j];
        break;
      }
    }
  }

  EffectivizeResult out;
  out.trace.emit(0, "start").add("Q", members);
  std::vector<bool> acted(stages, false);
  std::set<std::uint64_t> removed;
  for (std::uint64_t s = 0; s < stages; ++s) {
    for (std::uint64_t e = 0; e <= s; ++e) {
      if (acted[e] || !least[e]) continue;
      acted[e] = true;
      out.acted.push_back(e);
      auto& rec = out.trace.emit(s, "remove");
      if (removed.insert(*least[e]).second) rec.remove("Q", {*least[e]});
      rec.field("e", e).field("y", *least[e]);
      break;
    }
  }
  while (out.settled < stages && (acted[out.settled] || !least[out.settled])) ++out.settled;

  std::vector<std::uint64_t> q;
  std::set_difference(members.begin(), members.end(), removed.begin(), removed.end(),
                      std::back_inserter(q));
  out.q = SetPrefix::from_members(std::move(q), r.length());
  return out;
}

}  // namespace canimm
