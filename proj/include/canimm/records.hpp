#pragma once

// Run files: one construction run as tab-separated lines, plus the claims
// the checkers re-verify from the file alone.
//
//   construction  <name>
//   param         <key>  <value>
//   pool          <id>   <rule code>  <surjective 0|1>
//   prefix        <set>  <length>  [members]
//   trace         <trace record line>
//   chain         <step> <name> <stem> <enumerator code> <note>
//   witness       <i> <n> <index> <resolved 0|1> <rho> <H>
//   claim         <kind> <key>=<value>..

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "canimm/checkers.hpp"
#include "canimm/mathias.hpp"
#include "canimm/numbering.hpp"
#include "canimm/set_prefix.hpp"
#include "canimm/trace.hpp"

namespace canimm {

struct Claim {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;

  std::optional<std::string> get(const std::string& key) const;
  std::string require(const std::string& key) const;
  friend bool operator==(const Claim&, const Claim&) = default;
};

struct ChainRecord {
  std::string name;
  FiniteSet stem;
  ProgramCode enumerator;
  std::string note;
  friend bool operator==(const ChainRecord&, const ChainRecord&) = default;
};

struct WitnessRecord {
  std::uint64_t i = 0;
  std::uint64_t n = 0;
  std::uint64_t index = 0;
  bool resolved = false;
  std::string rho;
  FiniteSet h;
  friend bool operator==(const WitnessRecord&, const WitnessRecord&) = default;
};

struct RunRecord {
  std::string construction;
  std::vector<std::pair<std::string, std::string>> params;
  Registry pool;
  std::vector<std::pair<std::string, SetPrefix>> prefixes;
  ConstructionTrace trace;
  std::vector<ChainRecord> chain;
  std::vector<WitnessRecord> witnesses;
  std::vector<Claim> claims;

  const SetPrefix& prefix(const std::string& name) const;
  std::optional<std::string> param(const std::string& key) const;

  void write(std::ostream& os) const;
  // Throws std::runtime_error naming the line on malformed input.
  static RunRecord read(std::istream& is);
};

bool operator==(const RunRecord& a, const RunRecord& b);

inline const std::vector<std::string>& construction_names() {
  static const std::vector<std::string> names{"delta2",    "bci",         "cofinal",
                                              "ci-hi",     "ci-not-hi",   "hi-not-ci",
                                              "effectivize", "2generic-witness", "generic"};
  return names;
}

// k_map value for pool entries a check should not look at.
inline constexpr std::uint64_t kNeverChecked = ~std::uint64_t{0};

struct BuildConfig {
  std::string construction;
  std::uint64_t stages = 0;       // 0: construction default
  std::uint64_t markers = 64;
  std::uint64_t index_bound = 0;  // 0: construction default
  StepBudget budget = 0;          // 0: construction default
  std::uint64_t blocks = 0;       // 0: construction default
  std::optional<Registry> pool;   // default_pool() when empty
  std::string bits;               // cofinal input; default alternating
  std::string schedule;           // generic transformer list
  std::string sigma;              // 2generic-witness base string
};

// Throws std::invalid_argument for unknown names, zero horizons and bad
// schedules, and ExtensionViolation from `generic`.
RunRecord build_run(const BuildConfig& config);

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"immunity", "domination", "effective",
                                              "invariants", "replay", "all"};
  return names;
}

// Verdicts for every claim of the suite, in file order.
std::vector<Verdict> check_run(const RunRecord& run, const std::string& suite);

// Default total functions f_0, f_1, f_2: x, 1, x/2.
std::vector<Tree> default_functions();

// Generic schedule tokens, comma separated: thin:<pool id>[:<count>],
// thin-all, avoid:<count>, size:<n>, deh:<code>:<budget>, grab:<x>. The
// grab token puts x into the stem and keeps the reservoir above x whether
// or not x was in it.
std::vector<Transformer> parse_schedule(const std::string& text, const Registry& pool);

}  // namespace canimm
