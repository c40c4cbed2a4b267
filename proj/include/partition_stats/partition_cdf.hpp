#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "partition_stats/errors.hpp"
#include "partition_stats/rng.hpp"
#include "partition_stats/sorted_sample.hpp"
#include "partition_stats/tail_policy.hpp"

namespace partition_stats {

/// Piecewise-linear CDF anchored at (x_(i), i/(n+1)), the antiderivative of
/// the equal-mass piecewise-uniform density. Interiors interpolate linearly
/// between anchors; the tails follow the TailPolicy:
///   Truncated        linear from (lower, 0) and to (upper, 1)
///   ExponentialMatched  exponential approach to 0 and 1 at the matched rate
///   Excluded         clamped to 1/(n+1) below and n/(n+1) above the sample
/// A value repeated m times produces a jump of (m-1)/(n+1); the function
/// stays right-continuous and evaluates to (count <= x)/(n+1) at boundaries.
class PartitionCdf {
 public:
  PartitionCdf(SortedSample boundaries, TailPolicy policy)
      : boundaries_(std::move(boundaries)), policy_(std::move(policy)) {
    if (const auto* t = std::get_if<tail::Truncated>(&policy_)) {
      if (!std::isfinite(t->lower) || !std::isfinite(t->upper) ||
          t->lower >= boundaries_.min() || t->upper <= boundaries_.max()) {
        throw Error(errc::invalid_truncation_bounds,
                    "truncation bounds must be finite and strictly contain the sample");
      }
    } else if (std::holds_alternative<tail::ExponentialMatched>(policy_)) {
      rate_ = exponential_tail_rate(boundaries_);
    }
  }

  const SortedSample& boundaries() const { return boundaries_; }
  const TailPolicy& policy() const { return policy_; }
  std::size_t sample_size() const { return boundaries_.size(); }

  /// Matched tail rate; only meaningful under ExponentialMatched.
  double tail_rate() const { return rate_; }

  /// Cumulative probability at the i-th order statistic (1-based), i/(n+1).
  double anchor(std::size_t i) const {
    return static_cast<double>(i) / static_cast<double>(boundaries_.size() + 1);
  }

  double operator()(double x) const {
    if (!std::isfinite(x)) {
      throw Error(errc::non_finite_value, "CDF argument must be finite");
    }
    const auto& v = boundaries_.values();
    const double np1 = static_cast<double>(v.size() + 1);
    const auto it = std::upper_bound(v.begin(), v.end(), x);
    const std::size_t c = static_cast<std::size_t>(it - v.begin());

    if (c == 0) return lower_tail(x, np1);
    if (x == v[c - 1]) return static_cast<double>(c) / np1;  // exact anchor
    if (c == v.size()) return upper_tail(x, np1);
    const double t = (x - v[c - 1]) / (v[c] - v[c - 1]);
    return (static_cast<double>(c) + t) / np1;
  }

  /// Inverse CDF by closed-form per-piece inversion. Requires an invertible
  /// tail policy; Excluded has no inverse outside [1/(n+1), n/(n+1)].
  double quantile(double q) const {
    if (!(q > 0.0 && q < 1.0)) {
      throw Error(errc::out_of_range_quantile, "quantile argument must lie in (0,1)");
    }
    if (std::holds_alternative<tail::Excluded>(policy_)) {
      throw Error(errc::uninvertible_policy,
                  "excluded tails leave quantiles undefined outside the sample range");
    }
    const auto& v = boundaries_.values();
    const std::size_t n = v.size();
    const double np1 = static_cast<double>(n + 1);
    const double lo_anchor = 1.0 / np1;
    const double hi_anchor = static_cast<double>(n) / np1;

    if (q < lo_anchor) {
      if (const auto* t = std::get_if<tail::Truncated>(&policy_)) {
        return t->lower + q * np1 * (v.front() - t->lower);
      }
      return v.front() + std::log(q * np1) / rate_;
    }
    if (q >= hi_anchor) {
      if (const auto* t = std::get_if<tail::Truncated>(&policy_)) {
        return v.back() + (q - hi_anchor) * np1 * (t->upper - v.back());
      }
      return v.back() - std::log((1.0 - q) * np1) / rate_;
    }
    const double h = q * np1;
    std::size_t i = static_cast<std::size_t>(h);
    i = std::clamp<std::size_t>(i, 1, n - 1);
    const double t = std::clamp(h - static_cast<double>(i), 0.0, 1.0);
    return v[i - 1] + t * (v[i] - v[i - 1]);
  }

  /// Inverse-transform draws. Deterministic given the seed.
  std::vector<double> sample(std::uint64_t seed, std::size_t m) const {
    if (m == 0) {
      throw Error(errc::empty_input, "sample count must be at least 1");
    }
    if (std::holds_alternative<tail::Excluded>(policy_)) {
      throw Error(errc::uninvertible_policy,
                  "cannot sample from a CDF with excluded tails");
    }
    UniformStream stream(seed, 0);
    std::vector<double> out(m);
    for (double& x : out) x = quantile(stream.next());
    return out;
  }

 private:
  double lower_tail(double x, double np1) const {
    const double mass = 1.0 / np1;
    if (const auto* t = std::get_if<tail::Truncated>(&policy_)) {
      if (x <= t->lower) return 0.0;
      return mass * (x - t->lower) / (boundaries_.min() - t->lower);
    }
    if (std::holds_alternative<tail::ExponentialMatched>(policy_)) {
      return mass * std::exp(-rate_ * (boundaries_.min() - x));
    }
    return mass;
  }

  double upper_tail(double x, double np1) const {
    const double n_over = static_cast<double>(boundaries_.size()) / np1;
    if (const auto* t = std::get_if<tail::Truncated>(&policy_)) {
      if (x >= t->upper) return 1.0;
      return n_over + (1.0 - n_over) * (x - boundaries_.max()) / (t->upper - boundaries_.max());
    }
    if (std::holds_alternative<tail::ExponentialMatched>(policy_)) {
      return 1.0 - (1.0 / np1) * std::exp(-rate_ * (x - boundaries_.max()));
    }
    return n_over;
  }

  SortedSample boundaries_;
  TailPolicy policy_;
  double rate_ = 0.0;
};

}  // namespace partition_stats
