#pragma once

#include <cstddef>
#include <vector>

#include "partition_stats/errors.hpp"

namespace partition_stats {

/// Cumulative-probability estimate assigned to each order statistic.
/// MeanBeta is i/(n+1); MedianApprox is the median-based (i-0.3)/(n+0.4).
enum class PlottingFormula { MeanBeta, MedianApprox };

inline std::vector<double> plotting_positions(std::size_t n, PlottingFormula formula) {
  if (n == 0) {
    throw Error(errc::zero_sample, "plotting positions need at least one observation");
  }
  std::vector<double> out(n);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double id = static_cast<double>(i);
    out[i - 1] = formula == PlottingFormula::MeanBeta ? id / (nd + 1.0)
                                                      : (id - 0.3) / (nd + 0.4);
  }
  return out;
}

}  // namespace partition_stats
