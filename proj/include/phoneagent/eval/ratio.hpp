#pragma once

#include <cstdint>
#include <string>

namespace phoneagent {

/// Exact non-negative fraction kept in lowest terms. Metrics are ratios of
/// counts, so they are compared exactly rather than as doubles.
class Ratio {
 public:
  Ratio() = default;
  /// Throws std::invalid_argument for a zero denominator or negative parts.
  Ratio(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;  // "3/4"

  Ratio operator+(const Ratio& other) const;
  Ratio operator/(std::int64_t divisor) const;
  bool operator==(const Ratio&) const = default;
  bool operator<(const Ratio& other) const;
  bool operator<=(const Ratio& other) const { return !(other < *this); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace phoneagent
