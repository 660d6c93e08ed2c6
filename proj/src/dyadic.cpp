#include "canimm/dyadic.hpp"

#include <algorithm>
#include <stdexcept>

namespace canimm {

DyadicRational::DyadicRational(Natural numerator, std::uint64_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  normalise();
}

void DyadicRational::normalise() {
  if (num_.is_zero()) {
    exp_ = 0;
    return;
  }
  const std::uint64_t shift = std::min<std::uint64_t>(boost::multiprecision::lsb(num_), exp_);
  num_ >>= shift;
  exp_ -= shift;
}

namespace {

// Numerators of a and b over the common denominator 2^max(exponents).
std::pair<Natural, Natural> aligned(const Natural& an, std::uint64_t ae, const Natural& bn,
                                    std::uint64_t be) {
  const std::uint64_t e = std::max(ae, be);
  return {an << (e - ae), bn << (e - be)};
}

}  // namespace

DyadicRational DyadicRational::operator+(const DyadicRational& o) const {
  auto [a, b] = aligned(num_, exp_, o.num_, o.exp_);
  return {a + b, std::max(exp_, o.exp_)};
}

DyadicRational DyadicRational::operator-(const DyadicRational& o) const {
  auto [a, b] = aligned(num_, exp_, o.num_, o.exp_);
  if (a < b) throw std::domain_error("negative dyadic rational");
  return {a - b, std::max(exp_, o.exp_)};
}

DyadicRational DyadicRational::operator*(const DyadicRational& o) const {
  return {num_ * o.num_, exp_ + o.exp_};
}

std::strong_ordering operator<=>(const DyadicRational& x, const DyadicRational& y) {
  auto [a, b] = aligned(x.num_, x.exp_, y.num_, y.exp_);
  const int c = a.compare(b);
  return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string DyadicRational::to_string() const {
  if (exp_ == 0) return to_decimal(num_);
  return to_decimal(num_) + "/2^" + std::to_string(exp_);
}

DyadicRational DyadicRational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return {parse_natural(text), 0};
  if (text.compare(slash, 3, "/2^") != 0) throw std::invalid_argument("expected k/2^m: " + text);
  return {parse_natural(text.substr(0, slash)), to_u64(parse_natural(text.substr(slash + 3)))};
}

}  // namespace canimm
