#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "partition_stats/errors.hpp"
#include "partition_stats/sorted_sample.hpp"

namespace partition_stats {

/// Index of one of the n+1 segments cut out by n sorted observations:
/// segment 0 is the lower tail, segment n the upper tail.
struct SegmentIndex {
  std::size_t index;
  bool operator==(const SegmentIndex&) const = default;
  auto operator<=>(const SegmentIndex&) const = default;
};

/// The n+1 segments induced by a sorted sample. Segments are half-open
/// [x_(i), x_(i+1)), so a query equal to a boundary lands in the segment
/// to its right and membership is total and monotone.
class Partition {
 public:
  explicit Partition(SortedSample boundaries) : boundaries_(std::move(boundaries)) {}

  const SortedSample& boundaries() const { return boundaries_; }
  std::size_t sample_size() const { return boundaries_.size(); }
  std::size_t segment_count() const { return boundaries_.size() + 1; }

  /// Expected probability mass of every segment, 1/(n+1). The same for all
  /// segments regardless of the generating distribution.
  double expected_segment_mass() const {
    return 1.0 / static_cast<double>(segment_count());
  }

  SegmentIndex locate(double x) const {
    if (!std::isfinite(x)) {
      throw Error(errc::non_finite_value, "segment query must be finite");
    }
    const auto& v = boundaries_.values();
    const auto it = std::upper_bound(v.begin(), v.end(), x);
    return SegmentIndex{static_cast<std::size_t>(it - v.begin())};
  }

  /// Lower edge of segment i (-inf for the lower tail).
  double lower_edge(std::size_t i) const {
    return i == 0 ? -std::numeric_limits<double>::infinity() : boundaries_[i - 1];
  }

  /// Upper edge of segment i (+inf for the upper tail).
  double upper_edge(std::size_t i) const {
    return i == boundaries_.size() ? std::numeric_limits<double>::infinity()
                                   : boundaries_[i];
  }

 private:
  SortedSample boundaries_;
};

inline Partition build_partition(SortedSample s) { return Partition(std::move(s)); }

}  // namespace partition_stats
