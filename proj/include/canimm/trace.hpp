#pragma once

// Stage records emitted by the constructions.
//
// Line format (tab separated):
//   <stage> <rule> [<set>+<list>] [<set>-<list>] [<key>=<value>]..
// e.g. "17  case2  R+[5,6]  Q+[4,7]  p=2  q=3". Replaying the additions and
// removals of one named set from the empty set rebuilds its members.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "canimm/set_prefix.hpp"

namespace canimm {

struct TraceRecord {
  struct Delta {
    std::string set;
    std::vector<std::uint64_t> added;
    std::vector<std::uint64_t> removed;
  };

  std::uint64_t stage = 0;
  std::string rule;
  std::vector<Delta> deltas;
  std::vector<std::pair<std::string, std::string>> fields;

  TraceRecord& add(const std::string& set, std::vector<std::uint64_t> xs);
  TraceRecord& remove(const std::string& set, std::vector<std::uint64_t> xs);
  TraceRecord& field(const std::string& key, std::string value);
  TraceRecord& field(const std::string& key, std::uint64_t value);

  std::optional<std::string> get(const std::string& key) const;

  std::string to_line() const;
  static TraceRecord parse(const std::string& line);

  friend bool operator==(const TraceRecord& a, const TraceRecord& b);
};

struct ConstructionTrace {
  std::vector<TraceRecord> records;

  TraceRecord& emit(std::uint64_t stage, std::string rule);

  // Members of the named set after replaying every record, as a prefix of
  // the given length.
  SetPrefix replay(const std::string& set, std::uint64_t length) const;
  // Members after records with stage < upto (in order) have been applied.
  std::vector<std::uint64_t> replay_members(const std::string& set,
                                            std::optional<std::uint64_t> upto = {}) const;

  void write(std::ostream& os) const;
  friend bool operator==(const ConstructionTrace&, const ConstructionTrace&) = default;
};

}  // namespace canimm
