#include "canimm/trace.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "canimm/natural.hpp"

namespace canimm {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, '\t')) out.push_back(cell);
  return out;
}

TraceRecord::Delta& delta_for(TraceRecord& r, const std::string& set) {
  for (auto& d : r.deltas) {
    if (d.set == set) return d;
  }
  r.deltas.push_back({set, {}, {}});
  return r.deltas.back();
}

}  // namespace

TraceRecord& TraceRecord::add(const std::string& set, std::vector<std::uint64_t> xs) {
  auto& d = delta_for(*this, set);
  d.added.insert(d.added.end(), xs.begin(), xs.end());
  std::sort(d.added.begin(), d.added.end());
  return *this;
}

TraceRecord& TraceRecord::remove(const std::string& set, std::vector<std::uint64_t> xs) {
  auto& d = delta_for(*this, set);
  d.removed.insert(d.removed.end(), xs.begin(), xs.end());
  std::sort(d.removed.begin(), d.removed.end());
  return *this;
}

TraceRecord& TraceRecord::field(const std::string& key, std::string value) {
  fields.emplace_back(key, std::move(value));
  return *this;
}

TraceRecord& TraceRecord::field(const std::string& key, std::uint64_t value) {
  return field(key, std::to_string(value));
}

std::optional<std::string> TraceRecord::get(const std::string& key) const {
  for (const auto& [k, v] : fields) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string TraceRecord::to_line() const {
  std::string out = std::to_string(stage) + '\t' + rule;
  for (const auto& d : deltas) {
    if (!d.added.empty()) out += '\t' + d.set + '+' + format_list(d.added);
    if (!d.removed.empty()) out += '\t' + d.set + '-' + format_list(d.removed);
  }
  for (const auto& [k, v] : fields) out += '\t' + k + '=' + v;
  return out;
}

TraceRecord TraceRecord::parse(const std::string& line) {
  const auto cells = split_tabs(line);
  if (cells.size() < 2) throw std::invalid_argument("trace record needs a stage and a rule");
  TraceRecord r;
  r.stage = to_u64(parse_natural(cells[0]));
  r.rule = cells[1];
  for (std::size_t k = 2; k < cells.size(); ++k) {
    const auto& c = cells[k];
    const auto eq = c.find('=');
    const auto bracket = c.find('[');
    if (bracket != std::string::npos && bracket >= 1 && (eq == std::string::npos || eq > bracket) &&
        (c[bracket - 1] == '+' || c[bracket - 1] == '-')) {
      const std::string set = c.substr(0, bracket - 1);
      auto xs = parse_list(c.substr(bracket));
      if (c[bracket - 1] == '+') {
        r.add(set, std::move(xs));
      } else {
        r.remove(set, std::move(xs));
      }
    } else if (eq != std::string::npos) {
      r.field(c.substr(0, eq), c.substr(eq + 1));
    } else {
      throw std::invalid_argument("unrecognised trace cell: " + c);
    }
  }
  return r;
}

bool operator==(const TraceRecord& a, const TraceRecord& b) { return a.to_line() == b.to_line(); }

TraceRecord& ConstructionTrace::emit(std::uint64_t stage, std::string rule) {
  records.push_back({});
  records.back().stage = stage;
  records.back().rule = std::move(rule);
  return records.back();
}

std::vector<std::uint64_t> ConstructionTrace::replay_members(
    const std::string& set, std::optional<std::uint64_t> upto) const {
  std::set<std::uint64_t> members;
  for (const auto& r : records) {
    if (upto && r.stage >= *upto) break;
    for (const auto& d : r.deltas) {
      if (d.set != set) continue;
      for (auto x : d.removed) members.erase(x);
      for (auto x : d.added) members.insert(x);
    }
  }
  return {members.begin(), members.end()};
}

SetPrefix ConstructionTrace::replay(const std::string& set, std::uint64_t length) const {
  return SetPrefix::from_members(replay_members(set), length);
}

void ConstructionTrace::write(std::ostream& os) const {
  for (const auto& r : records) os << r.to_line() << '\n';
}

}  // namespace canimm
