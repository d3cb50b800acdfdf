#include "kempner/digit_spec.hpp"

#include <limits>
#include <stdexcept>

namespace kempner {

DigitSpec DigitSpec::make(std::int64_t base, std::int64_t digit, std::int64_t count) {
  if (base < 2) throw std::invalid_argument("base must be at least 2, got " + std::to_string(base));
  if (base > std::numeric_limits<int>::max() / 2)
    throw std::invalid_argument("base too large: " + std::to_string(base));
  if (digit < 0 || digit >= base)
    throw std::invalid_argument("digit must satisfy 0 <= d < b, got d=" + std::to_string(digit) +
                                " b=" + std::to_string(base));
  if (count < 0) throw std::invalid_argument("count must be non-negative, got " + std::to_string(count));
  if (count > std::numeric_limits<int>::max())
    throw std::invalid_argument("count too large: " + std::to_string(count));
  return DigitSpec(static_cast<int>(base), static_cast<int>(digit), static_cast<int>(count));
}

DigitSpec DigitSpec::with_count(int count) const { return make(base_, digit_, count); }

std::string DigitSpec::to_string() const {
  return "(b=" + std::to_string(base_) + ", d=" + std::to_string(digit_) + ", k=" + std::to_string(count_) + ")";
}

}  // namespace kempner
