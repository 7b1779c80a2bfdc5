#include "phoneagent/eval/ratio.hpp"

#include <numeric>
#include <stdexcept>

namespace phoneagent {
namespace {
__extension__ using Wide = __int128;
}

Ratio::Ratio(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) throw std::invalid_argument("ratio needs num >= 0 and den > 0");
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Ratio::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Ratio Ratio::operator+(const Ratio& other) const {
  const std::int64_t l = std::lcm(den_, other.den_);
  return {num_ * (l / den_) + other.num_ * (l / other.den_), l};
}

Ratio Ratio::operator/(std::int64_t divisor) const {
  if (divisor <= 0) throw std::invalid_argument("ratio divisor must be positive");
  const std::int64_t g = std::gcd(num_, divisor);
  return {num_ / g, den_ * (divisor / g)};
}

bool Ratio::operator<(const Ratio& other) const {
  return static_cast<Wide>(num_) * other.den_ < static_cast<Wide>(other.num_) * den_;
}

}  // namespace phoneagent
