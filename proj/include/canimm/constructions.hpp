#pragma once

// Finite-horizon runs of the stage constructions. Every run returns the
// prefix it built and a trace whose replay rebuilds that prefix. "Pick" in a
// construction always means the least admissible value.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "canimm/numbering.hpp"
#include "canimm/set_prefix.hpp"
#include "canimm/trace.hpp"

namespace canimm {

using machine::OracleString;

// f(i) = max over e <= i of <e, i> = <i, i>.
std::uint64_t pair_bound(std::uint64_t i);

// ---------------------------------------------------------------- markers

struct EntryStatus {
  std::uint64_t e = 0;
  std::uint64_t i = 0;
  std::optional<StepBudget> converged_at;  // empty: still diverging at the horizon
};

struct Delta2Result {
  SetPrefix prefix;                        // length max marker + 1
  ConstructionTrace trace;                 // set "R"; a record per marker change
  std::vector<std::uint64_t> markers;      // x_{n,S}
  std::vector<std::uint64_t> last_moved;   // stage at which x_n took its final value
  std::vector<EntryStatus> entries;        // every (e, i) with e, i < N
  bool pool_stabilized = false;            // all entries converged by S
};

// pool[e] is read through D_{e,s}; stages run 0..S and markers at stage S
// are returned. Throws std::invalid_argument when S or N is 0.
Delta2Result delta2_prefix(const std::vector<ProgramCode>& pool, StepBudget stages,
                           std::uint64_t markers);

// ---------------------------------------------------------------- pairs

struct BciResult {
  SetPrefix r;
  SetPrefix q;
  ConstructionTrace trace;     // sets "R", "Q", "F"; one record per stage, then a fill record
  std::vector<std::uint64_t> f;    // F_S
  std::uint64_t index_horizon = 0; // every stage <e, i> with i <= index_horizon ran
};

// Stages s = <e, i> for s < S; Case 2 when i >= e and |D_e(i)| > 4 pair_bound(i) + 3.
BciResult bci_run(const Registry& pool, std::uint64_t stages);

struct CofinalResult {
  SetPrefix r;                   // encodes A by parities
  SetPrefix q;                   // both elements of every chosen pair
  std::vector<std::uint64_t> p;  // p_0 < p_1 < ..
  ConstructionTrace trace;       // sets "R", "Q"; one record per n
};

CofinalResult cofinal_encode(const Registry& pool, const std::string& a_bits,
                             std::optional<std::uint64_t> count = {});

struct CofinalDecode {
  std::string bits;
  bool truncated = false;  // fewer than `count` members were available
};

CofinalDecode cofinal_decode(const SetPrefix& r, std::uint64_t count);

struct CiHiResult {
  SetPrefix prefix;
  ConstructionTrace trace;       // set "R"
  std::vector<std::uint64_t> x;  // x_0 < x_1 < ..
};

// fns[s] bounds x_s for s < |fns|; later stages only need x_s > x_{s-1}.
CiHiResult ci_hi_run(const Registry& pool, const std::vector<Tree>& fns, std::uint64_t stages);

struct CiNotHiResult {
  SetPrefix prefix;            // length 2 * pairs
  ConstructionTrace trace;     // sets "R", "F"
  std::vector<std::uint64_t> f;
  std::uint64_t pairs = 0;
  std::uint64_t index_horizon = 0;
};

// Case 2 when i >= e and |D_e(i)| > 2 pair_bound(i).
CiNotHiResult ci_not_hi_run(const Registry& pool, std::uint64_t stages);

// ---------------------------------------------------------------- hyperimmune, not CI

// Block family for one function: start(0) = 0,
// start(n+1) = max(n+1, start(n) + f(2n) + 1), |H_f(n)| = f(2n) + 1.
class BlockFamily {
 public:
  explicit BlockFamily(Tree f);

  const Tree& f() const { return f_; }
  std::uint64_t start(std::uint64_t n) const;
  std::uint64_t length(std::uint64_t n) const;
  FiniteSet block(std::uint64_t n) const;

 private:
  void extend(std::uint64_t n) const;

  Tree f_;
  std::shared_ptr<Evaluator> ev_;
  mutable std::vector<std::uint64_t> starts_;
  mutable std::vector<std::uint64_t> lengths_;
};

// Total-tier program n -> canonical code of H_f(n).
Tree block_family_program(const Tree& f);

struct Selection {
  std::uint64_t p = 0;
  std::uint64_t i = 0;
  std::uint64_t k = 0;
  std::uint64_t before = 0;   // s: members of R selected before this block
  std::uint64_t n = 0;        // n_p
  FiniteSet block;
};

struct HiNotCiResult {
  SetPrefix prefix;
  ConstructionTrace trace;            // set "R"
  std::vector<Selection> selections;
  std::vector<std::uint64_t> skipped; // p = <i, k> with i >= |fns|
  std::vector<Tree> witness_rules;    // per i: D(2n) = H_{f_i}(n), D(2m+1) = decode(m)
};

HiNotCiResult hi_not_ci_run(const std::vector<Tree>& fns, std::uint64_t pairs);

// ---------------------------------------------------------------- Cohen-style

// Step budget allowed to a pumping candidate of the given length.
inline constexpr StepBudget kPumpStepsPerPosition = 32;
StepBudget pump_budget(std::uint64_t length);

// W^rho_e at the pumping budget: inputs below |rho|.
FiniteSet pumped_domain(const ProgramCode& e, const OracleString& rho);

struct PumpResult {
  std::optional<OracleString> rho;  // empty: Unresolved
  std::uint64_t examined = 0;
  std::uint64_t best = 0;           // largest |W| seen
};

// Length-lex search over sigma-extensions for |W^rho_e| > target; gives up
// after `candidate_limit` candidates.
PumpResult pump_enumeration(const OracleString& sigma, const ProgramCode& e, std::uint64_t target,
                            std::uint64_t candidate_limit);

// alpha_i: the i-th binary string in length-lex order.
OracleString length_lex_string(std::uint64_t i);

struct WitnessEntry {
  std::uint64_t i = 0;
  std::uint64_t n = 0;
  std::uint64_t index = 0;          // 2<i, n>
  bool resolved = false;
  OracleString beta;
  OracleString rho;                 // sigma alpha_i beta
  FiniteSet h;                      // first f(index) + 1 elements enumerated
  std::uint64_t examined = 0;
};

struct WitnessTable {
  std::vector<WitnessEntry> entries;
  Tree rule;            // witness numbering over the resolved entries
  Numbering numbering;  // rule registered as id 0
};

WitnessTable build_2generic_witness(const OracleString& sigma, const ProgramCode& e,
                                    const Tree& f, std::uint64_t i_max, std::uint64_t n_max,
                                    std::uint64_t candidate_limit);

// Some i in [n, index_bound] has D(i) inside sigma and |D(i)| > f(i).
bool x_n_membership(const OracleString& sigma, const Numbering& d, const Tree& f,
                    std::uint64_t n, std::uint64_t index_bound);

// ---------------------------------------------------------------- effective immunity

struct EffectivizeResult {
  SetPrefix q;
  ConstructionTrace trace;         // set "Q"
  std::vector<std::uint64_t> acted;  // indices e that removed an element
  std::uint64_t settled = 0;       // every e < settled acted or had nothing to act on
};

// Runs S stages inside the members r_0 < r_1 < .. of r. W_e is read from
// programs[e] at the given budget (default: the raw code e). Each e acts at
// most once. Throws std::invalid_argument when r has fewer than 2S members.
EffectivizeResult effectivize_inside(const SetPrefix& r, std::uint64_t stages, StepBudget budget,
                                     const std::vector<ProgramCode>& programs = {});

}  // namespace canimm
