#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "partition_stats/errors.hpp"
#include "partition_stats/sorted_sample.hpp"

namespace partition_stats {

/// Classical empirical CDF: right-continuous step function, (#values <= x)/n.
inline double ecdf_eval(const SortedSample& s, double x) {
  if (!std::isfinite(x)) {
    throw Error(errc::non_finite_value, "ECDF argument must be finite");
  }
  const auto& v = s.values();
  const auto it = std::upper_bound(v.begin(), v.end(), x);
  return static_cast<double>(it - v.begin()) / static_cast<double>(v.size());
}

/// Side-by-side values of the ECDF and the partition CDF at each order
/// statistic, plus the mass each estimator leaves above the sample maximum.
/// On a tie-free sample the pairs are exactly (i/n, i/(n+1)).
struct ComparisonReport {
  struct Row {
    std::size_t rank;        // 1-based
    double value;            // x_(rank)
    double ecdf;             // ECDF at x_(rank)
    double partition_cdf;    // i/(n+1) anchor
  };
  std::vector<Row> rows;
  double sup_difference;           // max_i |ecdf - partition_cdf|
  double ecdf_tail_mass;           // mass above x_(n) under the ECDF, always 0
  double partition_tail_mass;      // mass above x_(n) under the partition, 1/(n+1)
};

inline ComparisonReport compare_cdfs(const SortedSample& s) {
  const std::size_t n = s.size();
  const double np1 = static_cast<double>(n + 1);
  ComparisonReport report;
  report.rows.reserve(n);
  double sup = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double anchor = static_cast<double>(i) / np1;
    const double step = ecdf_eval(s, s[i - 1]);
    report.rows.push_back({i, s[i - 1], step, anchor});
    sup = std::max(sup, std::abs(step - anchor));
  }
  report.sup_difference = sup;
  report.ecdf_tail_mass = 0.0;
  report.partition_tail_mass = 1.0 / np1;
  return report;
}

}  // namespace partition_stats
