#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "partition_stats/distributions.hpp"
#include "partition_stats/errors.hpp"
#include "partition_stats/numeric.hpp"
#include "partition_stats/quadrature.hpp"
#include "partition_stats/rng.hpp"
#include "partition_stats/sorted_sample.hpp"

namespace partition_stats {

/// True-distribution mass in each of the n+1 segments cut out by a sample.
/// The entries telescope, so they sum to 1 up to rounding.
struct SegmentProbabilities {
  std::vector<double> p;
};

inline SegmentProbabilities segment_probabilities(const DistributionSpec& dist,
                                                  const SortedSample& s) {
  const auto& v = s.values();
  SegmentProbabilities out;
  out.p.resize(v.size() + 1);
  double prev = cdf(dist, v.front());
  out.p.front() = prev;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double cur = cdf(dist, v[i]);
    out.p[i] = cur - prev;
    prev = cur;
  }
  out.p.back() = 1.0 - prev;
  return out;
}

/// Controls for the replication engine. `threads = 0` means one worker per
/// hardware thread. Estimates are bit-identical for any thread count.
struct McOptions {
  std::size_t reps = 100000;
  std::uint64_t seed = 0;
  double z_max = 4.0;
  unsigned threads = 0;
};

struct SegmentStat {
  double mean;
  double variance;
  double se;
  double z;
};

/// Per-segment Monte Carlo means checked against the common target 1/(n+1).
struct VerificationReport {
  std::size_t n;
  std::size_t reps;
  std::uint64_t seed;
  double target;
  double z_max;
  std::vector<SegmentStat> segments;
  double mean_sum;
  bool pass;
};

struct SpacingStat {
  double mean;
  double variance;
  double q025;
  double q50;
  double q975;
};

/// Summary of simulated uniform spacings, one entry per spacing index.
/// The quantile triple doubles as a Dirichlet(1,...,1) credible interval.
struct SpacingsSummary {
  std::size_t n;
  std::size_t reps;
  std::uint64_t seed;
  std::vector<SpacingStat> spacings;
};

/// Scalar Monte Carlo estimate with its standard error and target.
struct McEstimate {
  double value;
  double se;
  double target;
  double z;
  std::size_t reps;
};

namespace detail {

// Replications are grouped into fixed-size blocks. The block layout depends
// only on the replication count, and every block's partial result lands in a
// slot indexed by block id, so the reduction order is independent of how
// blocks were scheduled across workers.
inline constexpr std::size_t kBlockSize = 4096;

inline unsigned resolve_threads(unsigned requested, std::size_t blocks) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned t = requested == 0 ? hw : requested;
  return static_cast<unsigned>(std::min<std::size_t>(t, blocks));
}

template <typename BlockFn>
void parallel_blocks(std::size_t reps, unsigned requested_threads, BlockFn&& fn) {
  const std::size_t blocks = (reps + kBlockSize - 1) / kBlockSize;
  const unsigned threads = resolve_threads(requested_threads, blocks);
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) {
      fn(b, b * kBlockSize, std::min(reps, (b + 1) * kBlockSize));
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= blocks) break;
        fn(b, b * kBlockSize, std::min(reps, (b + 1) * kBlockSize));
      }
    });
  }
  for (auto& th : pool) th.join();
}

struct Moments {
  double mean;
  double variance;
  double se;
};

// Combine per-block sums in block order with compensated summation, then
// form mean, unbiased variance and the standard error of the mean.
inline Moments reduce_moments(const std::vector<double>& block_sums,
                              const std::vector<double>& block_sumsqs,
                              std::size_t reps) {
  const double sum = kahan_sum(block_sums);
  const double sumsq = kahan_sum(block_sumsqs);
  const double mean = sum / static_cast<double>(reps);
  double variance = 0.0;
  if (reps > 1) {
    variance = (sumsq - static_cast<double>(reps) * mean * mean) /
               (static_cast<double>(reps) - 1.0);
    variance = std::max(variance, 0.0);
  }
  return {mean, variance, std::sqrt(variance / static_cast<double>(reps))};
}

inline double z_score(double mean, double target, double se) {
  if (se > 0.0) return (mean - target) / se;
  return mean == target ? 0.0 : std::numeric_limits<double>::infinity();
}

inline void require_reps(std::size_t reps) {
  if (reps < 1000) {
    throw Error(errc::insufficient_replications,
                "need at least 1000 replications, got " + std::to_string(reps));
  }
}

inline void require_sample_size(std::size_t n) {
  if (n == 0) {
    throw Error(errc::zero_sample, "sample size must be at least 1");
  }
}

// Draw n values from dist into xs and sort them.
inline void draw_sorted(const DistributionSpec& dist, std::size_t n,
                        UniformStream& stream, std::vector<double>& xs) {
  xs.resize(n);
  for (double& x : xs) x = quantile(dist, stream.next());
  std::sort(xs.begin(), xs.end());
}

}  // namespace detail

/// Estimate E[P_i] for every segment by repeated sampling and compare each
/// mean against 1/(n+1). Replication r always uses the generator derived
/// from (seed, r), so the report does not depend on the worker count.
inline VerificationReport verify_expected_masses(const DistributionSpec& dist,
                                                 std::size_t n,
                                                 const McOptions& opts) {
  detail::require_sample_size(n);
  detail::require_reps(opts.reps);

  const std::size_t dims = n + 1;
  const std::size_t blocks = (opts.reps + detail::kBlockSize - 1) / detail::kBlockSize;
  std::vector<std::vector<double>> sums(dims, std::vector<double>(blocks, 0.0));
  std::vector<std::vector<double>> sumsqs(dims, std::vector<double>(blocks, 0.0));

  detail::parallel_blocks(opts.reps, opts.threads, [&](std::size_t b, std::size_t lo,
                                                       std::size_t hi) {
    std::vector<double> xs;
    std::vector<double> local_sum(dims, 0.0);
    std::vector<double> local_sumsq(dims, 0.0);
    for (std::size_t r = lo; r < hi; ++r) {
      UniformStream stream(opts.seed, r);
      detail::draw_sorted(dist, n, stream, xs);
      double prev = cdf(dist, xs.front());
      double p = prev;
      local_sum[0] += p;
      local_sumsq[0] += p * p;
      for (std::size_t j = 1; j < n; ++j) {
        const double cur = cdf(dist, xs[j]);
        p = cur - prev;
        prev = cur;
        local_sum[j] += p;
        local_sumsq[j] += p * p;
      }
      p = 1.0 - prev;
      local_sum[n] += p;
      local_sumsq[n] += p * p;
    }
    for (std::size_t j = 0; j < dims; ++j) {
      sums[j][b] = local_sum[j];
      sumsqs[j][b] = local_sumsq[j];
    }
  });

  VerificationReport report;
  report.n = n;
  report.reps = opts.reps;
  report.seed = opts.seed;
  report.target = 1.0 / static_cast<double>(dims);
  report.z_max = opts.z_max;
  report.segments.reserve(dims);
  KahanSum mean_sum;
  bool pass = true;
  for (std::size_t j = 0; j < dims; ++j) {
    const auto m = detail::reduce_moments(sums[j], sumsqs[j], opts.reps);
    const double z = detail::z_score(m.mean, report.target, m.se);
    report.segments.push_back({m.mean, m.variance, m.se, z});
    mean_sum.add(m.mean);
    pass = pass && std::abs(z) <= opts.z_max;
  }
  report.mean_sum = mean_sum.value();
  report.pass = pass;
  return report;
}

/// Simulate the n+1 spacings of n sorted Uniform(0,1) draws. This is the
/// segment-mass experiment after the probability integral transform, and
/// also a direct sampler of the flat Dirichlet over the simplex.
inline SpacingsSummary simulate_spacings(std::size_t n, const McOptions& opts) {
  detail::require_sample_size(n);
  detail::require_reps(opts.reps);

  const std::size_t dims = n + 1;
  std::vector<double> table(opts.reps * dims);

  detail::parallel_blocks(opts.reps, opts.threads, [&](std::size_t, std::size_t lo,
                                                       std::size_t hi) {
    std::vector<double> us;
    for (std::size_t r = lo; r < hi; ++r) {
      UniformStream stream(opts.seed, r);
      us.resize(n);
      for (double& u : us) u = stream.next();
      std::sort(us.begin(), us.end());
      double* row = table.data() + r * dims;
      double prev = us.front();
      row[0] = prev;
      for (std::size_t j = 1; j < n; ++j) {
        row[j] = us[j] - prev;
        prev = us[j];
      }
      row[n] = 1.0 - prev;
    }
  });

  SpacingsSummary summary;
  summary.n = n;
  summary.reps = opts.reps;
  summary.seed = opts.seed;
  summary.spacings.reserve(dims);
  std::vector<double> column(opts.reps);
  for (std::size_t j = 0; j < dims; ++j) {
    for (std::size_t r = 0; r < opts.reps; ++r) column[r] = table[r * dims + j];
    KahanSum sum;
    KahanSum sumsq;
    for (double x : column) {
      sum.add(x);
      sumsq.add(x * x);
    }
    const double mean = sum.value() / static_cast<double>(opts.reps);
    double variance = 0.0;
    if (opts.reps > 1) {
      variance = (sumsq.value() - static_cast<double>(opts.reps) * mean * mean) /
                 (static_cast<double>(opts.reps) - 1.0);
      variance = std::max(variance, 0.0);
    }
    std::sort(column.begin(), column.end());
    auto quantile_of = [&](double q) {
      const double h = q * (static_cast<double>(opts.reps) - 1.0);
      const std::size_t k = static_cast<std::size_t>(h);
      if (k + 1 >= opts.reps) return column.back();
      return column[k] + (h - static_cast<double>(k)) * (column[k + 1] - column[k]);
    };
    summary.spacings.push_back(
        {mean, variance, quantile_of(0.025), quantile_of(0.5), quantile_of(0.975)});
  }
  return summary;
}

/// Apply the probability integral transform U = F(X) element-wise.
inline std::vector<double> pit_transform(const DistributionSpec& dist,
                                         std::span<const double> data) {
  std::vector<double> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) {
      throw Error(errc::non_finite_value,
                  "non-finite value at index " + std::to_string(i),
                  static_cast<long>(i));
    }
    out.push_back(cdf(dist, data[i]));
  }
  return out;
}

/// CDF of the sample minimum of n i.i.d. draws: 1 - (1 - F(x))^n.
inline double first_order_stat_cdf(const DistributionSpec& dist, std::size_t n,
                                   double x) {
  detail::require_sample_size(n);
  const double F = cdf(dist, x);
  return -std::expm1(static_cast<double>(n) * std::log1p(-F));
}

/// Density of the sample minimum: n (1 - F(x))^(n-1) f(x).
inline double first_order_stat_pdf(const DistributionSpec& dist, std::size_t n,
                                   double x) {
  detail::require_sample_size(n);
  const double F = cdf(dist, x);
  return static_cast<double>(n) *
         std::pow(1.0 - F, static_cast<double>(n - 1)) * pdf(dist, x);
}

/// E[F(x_(1))] by quadrature. The substitution u = F(x) turns the integral
/// over the support into N * integral of u (1-u)^(N-1) on [0,1], which no
/// longer involves the distribution; the parameter is kept for symmetry
/// with the Monte Carlo checks. The rule order grows with n so the
/// polynomial integrand is integrated exactly.
inline double expected_p0_numeric([[maybe_unused]] const DistributionSpec& dist,
                                  std::size_t n) {
  detail::require_sample_size(n);
  const double nd = static_cast<double>(n);
  const auto integrand = [nd](double u) {
    return nd * u * std::pow(1.0 - u, nd - 1.0);
  };
  const std::size_t order = n / 2 + 8;
  const double coarse = GaussLegendre(order).integrate(integrand, 0.0, 1.0);
  const double fine = GaussLegendre(order + 8).integrate(integrand, 0.0, 1.0);
  if (std::abs(fine - coarse) > 1e-10) {
    throw Error(errc::quadrature_failure,
                "rule refinement changed the result by " +
                    std::to_string(std::abs(fine - coarse)));
  }
  return fine;
}

/// Monte Carlo estimate of E[F(x_(i))], whose exact value is the Beta(i, n-i+1)
/// mean i/(n+1).
inline McEstimate verify_beta_mean(const DistributionSpec& dist, std::size_t n,
                                   std::size_t i, const McOptions& opts) {
  detail::require_sample_size(n);
  detail::require_reps(opts.reps);
  if (i < 1 || i > n) {
    throw Error(errc::index_out_of_range,
                "order statistic index must lie in [1, n]");
  }

  const std::size_t blocks = (opts.reps + detail::kBlockSize - 1) / detail::kBlockSize;
  std::vector<double> sums(blocks, 0.0);
  std::vector<double> sumsqs(blocks, 0.0);
  detail::parallel_blocks(opts.reps, opts.threads, [&](std::size_t b, std::size_t lo,
                                                       std::size_t hi) {
    std::vector<double> xs;
    double s = 0.0;
    double ss = 0.0;
    for (std::size_t r = lo; r < hi; ++r) {
      UniformStream stream(opts.seed, r);
      detail::draw_sorted(dist, n, stream, xs);
      const double u = cdf(dist, xs[i - 1]);
      s += u;
      ss += u * u;
    }
    sums[b] = s;
    sumsqs[b] = ss;
  });

  const auto m = detail::reduce_moments(sums, sumsqs, opts.reps);
  const double target = static_cast<double>(i) / static_cast<double>(n + 1);
  return {m.mean, m.se, target, detail::z_score(m.mean, target, m.se), opts.reps};
}

/// Monte Carlo estimate of the conditional share E[P_i / (1 - sum_{k<i} P_k)].
/// Conditioning away the first i segments leaves n-i points, so the share
/// of the remaining mass taken by segment i has expectation 1/(n-i+1).
inline McEstimate conditional_share_check(const DistributionSpec& dist, std::size_t n,
                                          std::size_t i, const McOptions& opts) {
  detail::require_sample_size(n);
  detail::require_reps(opts.reps);
  if (i >= n) {
    throw Error(errc::index_out_of_range,
                "conditional share index must lie in [0, n-1]");
  }

  const std::size_t blocks = (opts.reps + detail::kBlockSize - 1) / detail::kBlockSize;
  std::vector<double> sums(blocks, 0.0);
  std::vector<double> sumsqs(blocks, 0.0);
  detail::parallel_blocks(opts.reps, opts.threads, [&](std::size_t b, std::size_t lo,
                                                       std::size_t hi) {
    std::vector<double> xs;
    double s = 0.0;
    double ss = 0.0;
    for (std::size_t r = lo; r < hi; ++r) {
      UniformStream stream(opts.seed, r);
      detail::draw_sorted(dist, n, stream, xs);
      double share;
      if (i == 0) {
        share = cdf(dist, xs.front());
      } else {
        const double below = cdf(dist, xs[i - 1]);
        share = (cdf(dist, xs[i]) - below) / (1.0 - below);
      }
      s += share;
      ss += share * share;
    }
    sums[b] = s;
    sumsqs[b] = ss;
  });

  const auto m = detail::reduce_moments(sums, sumsqs, opts.reps);
  const double target = 1.0 / static_cast<double>(n - i + 1);
  return {m.mean, m.se, target, detail::z_score(m.mean, target, m.se), opts.reps};
}

/// Two-sided Kolmogorov-Smirnov distance between a sample of probabilities
/// and the Uniform(0,1) CDF.
inline double ks_statistic_uniform(std::span<const double> values) {
  if (values.empty()) {
    throw Error(errc::empty_input, "KS statistic needs at least one value");
  }
  std::vector<double> u(values.begin(), values.end());
  std::sort(u.begin(), u.end());
  const double m = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double hi = (static_cast<double>(k) + 1.0) / m - u[k];
    const double lo = u[k] - static_cast<double>(k) / m;
    d = std::max({d, hi, lo});
  }
  return d;
}

}  // namespace partition_stats
