#include "canimm/set_prefix.hpp"

#include <algorithm>
#include <stdexcept>

namespace canimm {

SetPrefix SetPrefix::from_members(std::vector<std::uint64_t> members, std::uint64_t length) {
  std::sort(members.begin(), members.end());
  SetPrefix p;
  p.bits_.assign(length, '0');
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (members[k] >= length) throw std::invalid_argument("member beyond prefix length");
    if (k && members[k] == members[k - 1]) throw std::invalid_argument("repeated member");
    p.bits_[members[k]] = '1';
  }
  p.principal_ = std::move(members);
  return p;
}

SetPrefix SetPrefix::from_bits(std::string_view bits) {
  SetPrefix p;
  p.bits_ = std::string(bits);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      p.principal_.push_back(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("prefix bits must be 0 or 1");
    }
  }
  return p;
}

std::vector<std::uint64_t> SetPrefix::complement_principal() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] == '0') out.push_back(i);
  }
  return out;
}

bool SetPrefix::includes(const FiniteSet& f) const {
  return std::all_of(f.elements().begin(), f.elements().end(),
                     [this](std::uint64_t x) { return contains(x); });
}

}  // namespace canimm
