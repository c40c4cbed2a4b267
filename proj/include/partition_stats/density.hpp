#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "partition_stats/errors.hpp"
#include "partition_stats/numeric.hpp"
#include "partition_stats/partition.hpp"
#include "partition_stats/sorted_sample.hpp"
#include "partition_stats/tail_policy.hpp"

namespace partition_stats {

/// Equal-mass variable-width histogram: every segment carries mass 1/(n+1),
/// so interior heights are (1/(n+1)) divided by the gap width. Narrow gaps
/// give tall bars, wide gaps short ones. Tie runs would create zero-width
/// segments and are rejected. Segment membership follows the partition's
/// half-open [x_(i), x_(i+1)) rule.
class PiecewiseUniformDensity {
 public:
  struct Piece {
    enum class Kind { uniform, exponential };
    double lower;   // -inf for an unbounded exponential lower tail
    double upper;   // +inf for an unbounded exponential upper tail
    double mass;
    double height;  // peak height at the sample-side edge for exponential pieces
    Kind kind;
  };

  PiecewiseUniformDensity(SortedSample boundaries, TailPolicy policy)
      : boundaries_(std::move(boundaries)), policy_(std::move(policy)) {
    if (boundaries_.has_ties()) {
      const auto& run = boundaries_.ties().front();
      throw Error(errc::tied_boundaries,
                  "tied observations give a zero-width segment at sorted index " +
                      std::to_string(run.first));
    }
    const std::size_t n = boundaries_.size();
    segment_mass_ = 1.0 / static_cast<double>(n + 1);

    if (const auto* t = std::get_if<tail::Truncated>(&policy_)) {
      if (!std::isfinite(t->lower) || !std::isfinite(t->upper) ||
          t->lower >= boundaries_.min() || t->upper <= boundaries_.max()) {
        throw Error(errc::invalid_truncation_bounds,
                    "truncation bounds must be finite and strictly contain the sample");
      }
    } else if (std::holds_alternative<tail::ExponentialMatched>(policy_)) {
      rate_ = exponential_tail_rate(boundaries_);
    } else if (n < 2) {
      throw Error(errc::too_few_points,
                  "excluded tails with n < 2 leave the density with empty support");
    }

    const auto& v = boundaries_.values();
    interior_heights_.reserve(n >= 1 ? n - 1 : 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      interior_heights_.push_back(segment_mass_ / (v[i + 1] - v[i]));
    }
  }

  const SortedSample& boundaries() const { return boundaries_; }
  const TailPolicy& policy() const { return policy_; }
  double segment_mass() const { return segment_mass_; }
  double tail_rate() const { return rate_; }

  /// Heights of the n-1 interior segments, left to right.
  const std::vector<double>& interior_heights() const { return interior_heights_; }

  double operator()(double x) const {
    if (!std::isfinite(x)) {
      throw Error(errc::non_finite_value, "density argument must be finite");
    }
    const auto& v = boundaries_.values();
    const auto it = std::upper_bound(v.begin(), v.end(), x);
    const std::size_t c = static_cast<std::size_t>(it - v.begin());
    if (c == 0) return lower_tail(x);
    if (c == v.size()) return upper_tail(x);
    return interior_heights_[c - 1];
  }

  /// Exact integral over the support: sum of per-piece masses. Equals 1 for
  /// Truncated and ExponentialMatched, (n-1)/(n+1) for Excluded.
  double total_mass() const {
    KahanSum acc;
    for (const Piece& p : pieces()) acc.add(p.mass);
    return acc.value();
  }

  /// Finite description of the density, tails included, left to right.
  /// Excluded tails contribute no pieces.
  std::vector<Piece> pieces() const {
    const auto& v = boundaries_.values();
    std::vector<Piece> out;
    const double inf = std::numeric_limits<double>::infinity();
    if (const auto* t = std::get_if<tail::Truncated>(&policy_)) {
      out.push_back({t->lower, v.front(), segment_mass_,
                     segment_mass_ / (v.front() - t->lower), Piece::Kind::uniform});
    } else if (std::holds_alternative<tail::ExponentialMatched>(policy_)) {
      out.push_back({-inf, v.front(), segment_mass_, segment_mass_ * rate_,
                     Piece::Kind::exponential});
    }
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      out.push_back({v[i], v[i + 1], segment_mass_, interior_heights_[i],
                     Piece::Kind::uniform});
    }
    if (const auto* t = std::get_if<tail::Truncated>(&policy_)) {
      out.push_back({v.back(), t->upper, segment_mass_,
                     segment_mass_ / (t->upper - v.back()), Piece::Kind::uniform});
    } else if (std::holds_alternative<tail::ExponentialMatched>(policy_)) {
      out.push_back({v.back(), inf, segment_mass_, segment_mass_ * rate_,
                     Piece::Kind::exponential});
    }
    return out;
  }

 private:
  double lower_tail(double x) const {
    if (const auto* t = std::get_if<tail::Truncated>(&policy_)) {
      if (x < t->lower) return 0.0;
      return segment_mass_ / (boundaries_.min() - t->lower);
    }
    if (std::holds_alternative<tail::ExponentialMatched>(policy_)) {
      return segment_mass_ * rate_ * std::exp(-rate_ * (boundaries_.min() - x));
    }
    return 0.0;
  }

  double upper_tail(double x) const {
    if (const auto* t = std::get_if<tail::Truncated>(&policy_)) {
      if (x >= t->upper) return 0.0;
      return segment_mass_ / (t->upper - boundaries_.max());
    }
    if (std::holds_alternative<tail::ExponentialMatched>(policy_)) {
      return segment_mass_ * rate_ * std::exp(-rate_ * (x - boundaries_.max()));
    }
    return 0.0;
  }

  SortedSample boundaries_;
  TailPolicy policy_;
  double segment_mass_;
  double rate_ = 0.0;
  std::vector<double> interior_heights_;
};

inline PiecewiseUniformDensity build_density(const Partition& p, TailPolicy policy) {
  return PiecewiseUniformDensity(p.boundaries(), std::move(policy));
}

}  // namespace partition_stats
