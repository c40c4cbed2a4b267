#pragma once

#include <charconv>
#include <cstddef>
#include <span>
#include <string>
#include <system_error>

namespace partition_stats {

/// Kahan compensated accumulator. Keeps long reductions reproducible to
/// roughly one ulp of the final sum instead of accumulating O(n) rounding.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }

  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

inline double kahan_sum(std::span<const double> xs) {
  KahanSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace partition_stats
