#pragma once

#include <cassert>
#include <compare>
#include <limits>
#include <string>

namespace dft {

// Failure instant of an event on the extended nonnegative real line.
// 0 is the always-occurring identity, +infinity the never-occurring one.
class FailureTime {
 public:
  constexpr FailureTime() : value_(kInf) {}
  constexpr explicit FailureTime(double t) : value_(t) { assert(t >= 0.0); }

  static constexpr FailureTime always() { return FailureTime(0.0); }
  static constexpr FailureTime never() { return FailureTime(kInf); }

  constexpr double value() const { return value_; }
  constexpr bool is_never() const { return value_ == kInf; }
  constexpr bool is_always() const { return value_ == 0.0; }
  constexpr bool is_finite() const { return value_ != kInf; }

  friend constexpr auto operator<=>(FailureTime a, FailureTime b) = default;

  friend constexpr FailureTime max(FailureTime a, FailureTime b) { return a < b ? b : a; }
  friend constexpr FailureTime min(FailureTime a, FailureTime b) { return a < b ? a : b; }

  std::string str() const {
    if (is_never()) return "never";
    if (is_always()) return "0";
    return std::to_string(value_);
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  double value_;
};

}  // namespace dft
