#pragma once

// Finite-horizon verdicts. A verdict never claims more than its horizon:
// Pass means no violation was found on the recorded range.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "canimm/numbering.hpp"
#include "canimm/set_prefix.hpp"
#include "canimm/trace.hpp"

namespace canimm {

enum class Status { Pass, Fail, Inconclusive };

std::string to_string(Status s);

// One concrete counterexample. For immunity: (numbering id, i, D(i), h(i)).
// For domination: (0, s, {principal(s)}, f(s)). For effective immunity:
// (e, e, W_e, h(e)). For trace invariants: (0, stage, offending set, 0).
struct Violation {
  std::uint64_t source = 0;
  std::uint64_t index = 0;
  FiniteSet witness;
  Natural bound = 0;
  std::string note;

  std::string to_line() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct Verdict {
  std::string check;
  Status status = Status::Pass;
  std::vector<Violation> violations;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> skipped;  // (source, index)
  std::vector<std::pair<std::string, std::string>> horizon;

  bool passed() const { return status == Status::Pass; }
  bool failed() const { return status == Status::Fail; }
  // "verdict<TAB>check<TAB>STATUS<TAB>key=value.." then one line per
  // violation and one "skipped" line if anything was skipped.
  void write(std::ostream& os) const;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

// k_map[id] is the first index checked for pool entry id; missing entries
// default to k = id. Indices whose D(i) reaches past the prefix are skipped.
Verdict check_canonical_immunity(const SetPrefix& prefix, const Tree& h, const Registry& pool,
                                 const std::vector<std::uint64_t>& k_map,
                                 std::uint64_t index_bound);

// principal(s) for s in [first, last], where principal[0] is the member at
// position index_base. Fail: some principal(s) > f(s) (hyperimmunity
// evidence against f). Pass: f dominates on the range. Inconclusive: the
// range runs past the available members.
Verdict refute_domination(const std::vector<std::uint64_t>& principal, const Tree& f,
                          std::uint64_t first, std::uint64_t last, std::uint64_t index_base = 0);

// programs[e] for e in the vector; W_e is read as we_bounded(programs[e],
// budget). Fail iff some W_e lies inside the prefix and |W_e| > h(e).
Verdict check_effective_immunity(const SetPrefix& prefix, const Tree& h,
                                 const std::vector<ProgramCode>& programs, StepBudget budget);

// Raw codes first..last as programs.
std::vector<ProgramCode> raw_codes(std::uint64_t first, std::uint64_t last);

// Per-stage invariants of a pair construction with sets R, Q, F: after the
// record of stage s, |F| <= 2(s+1), R ∩ Q = ∅ and R ∪ Q = ⋃_{p in F} {2p, 2p+1}.
// Records with stage >= stages (the fill) are not checked.
Verdict check_pair_invariants(const ConstructionTrace& trace, std::uint64_t stages);

// Every "markers" field in the trace is strictly increasing.
Verdict check_markers_increasing(const ConstructionTrace& trace);

// Exactly one of 2p, 2p+1 is a member for every p < pairs.
Verdict check_one_per_pair(const SetPrefix& prefix, std::uint64_t pairs);

// Replaying the named set reproduces the prefix bit for bit.
Verdict check_replay(const ConstructionTrace& trace, const std::string& set,
                     const SetPrefix& prefix);

}  // namespace canimm
