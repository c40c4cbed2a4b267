#pragma once

#include <stdexcept>
#include <string>

namespace partition_stats {

/// Error categories shared across the library. Each maps to one failure
/// mode of a public operation; the message carries the specifics.
enum class errc {
  empty_input,
  non_finite_value,
  zero_sample,
  tied_boundaries,
  invalid_truncation_bounds,
  too_few_points,
  out_of_range_quantile,
  uninvertible_policy,
  not_normalized,
  negative_probability,
  insufficient_replications,
  index_out_of_range,
  quadrature_failure,
  malformed_distribution,
  io_error,
  parse_error,
};

inline const char* errc_name(errc code) {
  switch (code) {
    case errc::empty_input: return "empty_input";
    case errc::non_finite_value: return "non_finite_value";
    case errc::zero_sample: return "zero_sample";
    case errc::tied_boundaries: return "tied_boundaries";
    case errc::invalid_truncation_bounds: return "invalid_truncation_bounds";
    case errc::too_few_points: return "too_few_points";
    case errc::out_of_range_quantile: return "out_of_range_quantile";
    case errc::uninvertible_policy: return "uninvertible_policy";
    case errc::not_normalized: return "not_normalized";
    case errc::negative_probability: return "negative_probability";
    case errc::insufficient_replications: return "insufficient_replications";
    case errc::index_out_of_range: return "index_out_of_range";
    case errc::quadrature_failure: return "quadrature_failure";
    case errc::malformed_distribution: return "malformed_distribution";
    case errc::io_error: return "io_error";
    case errc::parse_error: return "parse_error";
  }
  return "unknown";
}

/// Exception thrown by every operation in this library. `where()` is an
/// input position when one is meaningful (element index, input line),
/// otherwise -1.
class Error : public std::runtime_error {
 public:
  Error(errc code, std::string message, long where = -1)
      : std::runtime_error(std::string(errc_name(code)) + ": " + std::move(message)),
        code_(code),
        where_(where) {}

  errc code() const noexcept { return code_; }
  long where() const noexcept { return where_; }

 private:
  errc code_;
  long where_;
};

}  // namespace partition_stats
