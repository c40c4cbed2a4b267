#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "partition_stats/errors.hpp"
#include "partition_stats/numeric.hpp"

namespace partition_stats {

enum class LogBase { bits, nats };

struct EntropyValue {
  double value;
  LogBase base;
};

namespace detail {
inline double log_in_base(double x, LogBase base) {
  return base == LogBase::bits ? std::log2(x) : std::log(x);
}
}  // namespace detail

/// Entropy of the uniform distribution over the n+1 segments a sample of
/// size n induces: log(n+1). This is the uncertainty about which segment
/// the next observation falls into.
inline EntropyValue partition_entropy(std::size_t n, LogBase base = LogBase::bits) {
  return {detail::log_in_base(static_cast<double>(n + 1), base), base};
}

/// Shannon entropy -sum p log p of a discrete distribution, with 0 log 0
/// taken as 0. The vector must be non-negative and sum to 1 within 1e-9;
/// the slack absorbs rounding from upstream Monte Carlo estimates.
inline EntropyValue discrete_entropy(std::span<const double> probs,
                                     LogBase base = LogBase::bits) {
  KahanSum total;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0)) {
      throw Error(errc::negative_probability,
                  "probability at index " + std::to_string(i) + " is negative",
                  static_cast<long>(i));
    }
    total.add(probs[i]);
  }
  if (std::abs(total.value() - 1.0) > 1e-9) {
    throw Error(errc::not_normalized,
                "probabilities sum to " + std::to_string(total.value()));
  }
  KahanSum entropy;
  for (double p : probs) {
    if (p > 0.0) entropy.add(-p * detail::log_in_base(p, base));
  }
  return {entropy.value(), base};
}

/// Entropy gained by the (n+1)-th observation: log2(n+2) - log2(n+1).
/// Strictly decreasing in n; each extra point is worth less than the last.
inline double marginal_information(std::size_t n) {
  return std::log2((static_cast<double>(n) + 2.0) / (static_cast<double>(n) + 1.0));
}

}  // namespace partition_stats
