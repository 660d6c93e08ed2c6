#include "canimm/finite_set.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

namespace canimm {

namespace {

Natural code_of_sorted(const std::vector<std::uint64_t>& sorted) {
  Natural code = 0;
  // Setting the top bit first sizes the backing store once.
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    boost::multiprecision::bit_set(code, static_cast<unsigned>(*it));
  }
  return code;
}

std::vector<std::uint64_t> elements_of_code(const Natural& code) {
  std::vector<std::uint64_t> out;
  const auto& backend = code.backend();
  const auto* limbs = backend.limbs();
  constexpr unsigned kLimbBits = sizeof(*limbs) * 8;
  for (std::size_t i = 0; i < backend.size(); ++i) {
    auto limb = static_cast<std::uint64_t>(limbs[i]);
    while (limb != 0) {
      const unsigned tz = static_cast<unsigned>(std::countr_zero(limb));
      out.push_back(static_cast<std::uint64_t>(i) * kLimbBits + tz);
      limb &= limb - 1;
    }
  }
  return out;
}

}  // namespace

FiniteSet FiniteSet::from_elements(std::vector<std::uint64_t> elements) {
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    throw std::invalid_argument("finite set elements must be distinct");
  }
  FiniteSet s;
  s.code_ = code_of_sorted(elements);
  s.elements_ = std::move(elements);
  return s;
}

FiniteSet FiniteSet::from_code(Natural code) {
  if (code < 0) throw std::invalid_argument("negative canonical code");
  FiniteSet s;
  s.elements_ = elements_of_code(code);
  s.code_ = std::move(code);
  return s;
}

FiniteSet FiniteSet::interval(std::uint64_t first, std::uint64_t count) {
  std::vector<std::uint64_t> xs(count);
  for (std::uint64_t k = 0; k < count; ++k) xs[k] = first + k;
  FiniteSet s;
  s.code_ = count == 0 ? Natural(0) : pow2(first + count) - pow2(first);
  s.elements_ = std::move(xs);
  return s;
}

bool FiniteSet::contains(std::uint64_t x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

std::uint64_t FiniteSet::min() const {
  if (empty()) throw std::domain_error("min of the empty set");
  return elements_.front();
}

std::uint64_t FiniteSet::max() const {
  if (empty()) throw std::domain_error("max of the empty set");
  return elements_.back();
}

bool FiniteSet::subset_of(const FiniteSet& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

std::string FiniteSet::to_string() const { return format_list(elements_); }

FiniteSet FiniteSet::parse(std::string_view text) {
  return from_elements(parse_list(text));
}

FiniteSet encode_finite_set(std::vector<std::uint64_t> elements) {
  return FiniteSet::from_elements(std::move(elements));
}

FiniteSet decode_finite_set(const Natural& code) { return FiniteSet::from_code(code); }

std::string format_list(const std::vector<std::uint64_t>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  out += ']';
  return out;
}

std::vector<std::uint64_t> parse_list(std::string_view text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw std::invalid_argument("expected a bracket list: " + std::string(text));
  }
  text = text.substr(1, text.size() - 2);
  std::vector<std::uint64_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || p != item.data() + item.size()) {
      throw std::invalid_argument("bad list element: " + std::string(item));
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
    if (text.empty()) throw std::invalid_argument("trailing comma in list");
  }
  return out;
}

}  // namespace canimm
