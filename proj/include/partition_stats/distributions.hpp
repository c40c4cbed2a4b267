#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "partition_stats/detail/normal.hpp"
#include "partition_stats/errors.hpp"
#include "partition_stats/numeric.hpp"
#include "partition_stats/rng.hpp"

namespace partition_stats {

/// Reference distributions with known closed-form CDF/PDF/quantile. They
/// serve as ground truth for the Monte Carlo verification engine; the three
/// families cover bounded, semi-infinite and unbounded symmetric supports.
namespace dist {

struct Uniform {
  Uniform(double a_, double b_) : a(a_), b(b_) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b)) {
      throw Error(errc::malformed_distribution, "uniform needs finite a < b");
    }
  }
  double a;
  double b;
};

struct Exponential {
  explicit Exponential(double rate_) : rate(rate_) {
    if (!(std::isfinite(rate) && rate > 0.0)) {
      throw Error(errc::malformed_distribution, "exponential needs rate > 0");
    }
  }
  double rate;
};

struct Normal {
  Normal(double mean_, double stddev_) : mean(mean_), stddev(stddev_) {
    if (!(std::isfinite(mean) && std::isfinite(stddev) && stddev > 0.0)) {
      throw Error(errc::malformed_distribution, "normal needs finite mean and stddev > 0");
    }
  }
  double mean;
  double stddev;
};

}  // namespace dist

using DistributionSpec = std::variant<dist::Uniform, dist::Exponential, dist::Normal>;

inline double cdf(const DistributionSpec& spec, double x) {
  if (!std::isfinite(x)) {
    throw Error(errc::non_finite_value, "CDF argument must be finite");
  }
  return std::visit(
      [x](const auto& d) -> double {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, dist::Uniform>) {
          if (x <= d.a) return 0.0;
          if (x >= d.b) return 1.0;
          return (x - d.a) / (d.b - d.a);
        } else if constexpr (std::is_same_v<D, dist::Exponential>) {
          return x <= 0.0 ? 0.0 : -std::expm1(-d.rate * x);
        } else {
          return detail::standard_normal_cdf((x - d.mean) / d.stddev);
        }
      },
      spec);
}

inline double pdf(const DistributionSpec& spec, double x) {
  if (!std::isfinite(x)) {
    throw Error(errc::non_finite_value, "PDF argument must be finite");
  }
  return std::visit(
      [x](const auto& d) -> double {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, dist::Uniform>) {
          return x < d.a || x > d.b ? 0.0 : 1.0 / (d.b - d.a);
        } else if constexpr (std::is_same_v<D, dist::Exponential>) {
          return x < 0.0 ? 0.0 : d.rate * std::exp(-d.rate * x);
        } else {
          return detail::standard_normal_pdf((x - d.mean) / d.stddev) / d.stddev;
        }
      },
      spec);
}

inline double quantile(const DistributionSpec& spec, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(errc::out_of_range_quantile, "quantile argument must lie in (0,1)");
  }
  return std::visit(
      [q](const auto& d) -> double {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, dist::Uniform>) {
          return d.a + q * (d.b - d.a);
        } else if constexpr (std::is_same_v<D, dist::Exponential>) {
          return -std::log1p(-q) / d.rate;
        } else {
          return d.mean + d.stddev * detail::standard_normal_quantile(q);
        }
      },
      spec);
}

/// Inverse-transform draws from a deterministic uniform stream keyed by
/// the seed. The same seed always reproduces the same sequence.
inline std::vector<double> sample(const DistributionSpec& spec, std::uint64_t seed,
                                  std::size_t m) {
  if (m == 0) {
    throw Error(errc::empty_input, "sample count must be at least 1");
  }
  UniformStream stream(seed, 0);
  std::vector<double> out(m);
  for (double& x : out) x = quantile(spec, stream.next());
  return out;
}

namespace detail {

inline double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(errc::malformed_distribution,
                "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

/// Parse the canonical text form: `uniform:a,b`, `exp:lambda`, `normal:mu,sigma`.
inline DistributionSpec parse_distribution(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(errc::malformed_distribution,
                "expected family:params, got '" + std::string(text) + "'");
  }
  const auto family = text.substr(0, colon);
  const auto params = text.substr(colon + 1);
  const auto comma = params.find(',');
  if (family == "exp") {
    if (comma != std::string_view::npos) {
      throw Error(errc::malformed_distribution, "exp takes a single rate parameter");
    }
    return dist::Exponential(detail::parse_number(params, "rate"));
  }
  if (comma == std::string_view::npos) {
    throw Error(errc::malformed_distribution,
                "family '" + std::string(family) + "' takes two parameters a,b");
  }
  const double p0 = detail::parse_number(params.substr(0, comma), "first parameter");
  const double p1 = detail::parse_number(params.substr(comma + 1), "second parameter");
  if (family == "uniform") return dist::Uniform(p0, p1);
  if (family == "normal") return dist::Normal(p0, p1);
  throw Error(errc::malformed_distribution,
              "unknown family '" + std::string(family) + "'");
}

inline std::string to_string(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& d) -> std::string {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, dist::Uniform>) {
          return "uniform:" + format_double(d.a) + "," + format_double(d.b);
        } else if constexpr (std::is_same_v<D, dist::Exponential>) {
          return "exp:" + format_double(d.rate);
        } else {
          return "normal:" + format_double(d.mean) + "," + format_double(d.stddev);
        }
      },
      spec);
}

}  // namespace partition_stats
