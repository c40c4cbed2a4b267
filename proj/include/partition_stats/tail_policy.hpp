#pragma once

#include <variant>

#include "partition_stats/errors.hpp"
#include "partition_stats/sorted_sample.hpp"

namespace partition_stats {

/// Resolutions for the two semi-infinite tail segments, each of which
/// carries expected mass 1/(n+1) that a uniform density cannot represent.
namespace tail {

/// Spread each tail's mass uniformly over a finite bracket: [lower, x_(1))
/// below the sample and [x_(n), upper) above it. Bounds must strictly
/// contain the sample.
struct Truncated {
  double lower;
  double upper;
  bool operator==(const Truncated&) const = default;
};

/// Exponential tail decaying away from each extreme at rate 1/w, where w is
/// the mean interior gap. Tail mass stays exactly 1/(n+1).
struct ExponentialMatched {
  bool operator==(const ExponentialMatched&) const = default;
};

/// No tail model at all: density support is [x_(1), x_(n)] and the reserved
/// tail mass 2/(n+1) is surfaced as a total integral of (n-1)/(n+1).
struct Excluded {
  bool operator==(const Excluded&) const = default;
};

}  // namespace tail

using TailPolicy = std::variant<tail::Truncated, tail::ExponentialMatched, tail::Excluded>;

/// Decay rate for ExponentialMatched tails: the reciprocal of the mean
/// interior gap (x_(n) - x_(1))/(n - 1). Needs at least two distinct values.
inline double exponential_tail_rate(const SortedSample& s) {
  if (s.size() < 2) {
    throw Error(errc::too_few_points,
                "exponential tails need n >= 2 to derive a rate");
  }
  const double range = s.max() - s.min();
  if (range <= 0.0) {
    throw Error(errc::tied_boundaries,
                "exponential tails need a positive data range");
  }
  return static_cast<double>(s.size() - 1) / range;
}

}  // namespace partition_stats
