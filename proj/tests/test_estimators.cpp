#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "partition_stats/density.hpp"
#include "partition_stats/ecdf.hpp"
#include "partition_stats/partition_cdf.hpp"
#include "partition_stats/tail_policy.hpp"

#include "helpers.hpp"

namespace ps = partition_stats;
using Catch::Matchers::WithinAbs;

namespace {
const ps::SortedSample kOneTwoThree{1.0, 2.0, 3.0};
}

TEST_CASE("partition CDF hits the anchors i/(n+1) at every order statistic") {
  for (const ps::TailPolicy policy :
       {ps::TailPolicy(ps::tail::Truncated{0.0, 4.0}),
        ps::TailPolicy(ps::tail::ExponentialMatched{}), ps::TailPolicy(ps::tail::Excluded{})}) {
    const ps::PartitionCdf cdf(kOneTwoThree, policy);
    REQUIRE(cdf(1.0) == 0.25);
    REQUIRE(cdf(2.0) == 0.5);
    REQUIRE(cdf(3.0) == 0.75);
    REQUIRE(cdf.anchor(1) == 0.25);
    REQUIRE(cdf.anchor(3) == 0.75);
  }
}

TEST_CASE("partition CDF interpolates linearly between order statistics") {
  const ps::PartitionCdf cdf(kOneTwoThree, ps::tail::Truncated{0.0, 4.0});
  REQUIRE(cdf(1.5) == 0.375);
  REQUIRE_THAT(cdf(2.25), WithinAbs(0.5625, 1e-15));
}

TEST_CASE("truncated tails ramp linearly from and to the bounds") {
  const ps::PartitionCdf cdf(kOneTwoThree, ps::tail::Truncated{0.0, 4.0});
  REQUIRE(cdf(0.0) == 0.0);
  REQUIRE(cdf(-1.0) == 0.0);
  REQUIRE(cdf(0.5) == 0.125);
  REQUIRE(cdf(3.5) == 0.875);
  REQUIRE(cdf(4.0) == 1.0);
  REQUIRE(cdf(9.0) == 1.0);
}

TEST_CASE("matched exponential tails decay at rate (n-1)/range") {
  const ps::PartitionCdf cdf(kOneTwoThree, ps::tail::ExponentialMatched{});
  REQUIRE(cdf.tail_rate() == 1.0);
  REQUIRE_THAT(cdf(0.0), WithinAbs(0.09196986029286058, 1e-15));   // e^-1 / 4
  REQUIRE_THAT(cdf(4.0), WithinAbs(0.9080301397071394, 1e-15));    // 1 - e^-1 / 4
}

TEST_CASE("excluded tails clamp the CDF outside the sample") {
  const ps::PartitionCdf cdf(kOneTwoThree, ps::tail::Excluded{});
  REQUIRE(cdf(-10.0) == 0.25);
  REQUIRE(cdf(0.9) == 0.25);
  REQUIRE(cdf(1.5) == 0.375);
  REQUIRE(cdf(3.5) == 0.75);
  REQUIRE(cdf(100.0) == 0.75);
}

TEST_CASE("a value repeated m times jumps the CDF by (m-1)/(n+1) extra") {
  const ps::PartitionCdf cdf(ps::SortedSample{1.0, 2.0, 2.0, 3.0}, ps::tail::Excluded{});
  REQUIRE(cdf(1.0) == 0.2);
  REQUIRE(cdf(2.0) == 0.6);  // two coincident points share one anchor step
  REQUIRE(cdf(3.0) == 0.8);
  REQUIRE_THAT(cdf(1.999), WithinAbs(0.2 + 0.999 / 5.0, 1e-12));
}

TEST_CASE("quantile inverts the truncated CDF in closed form") {
  const ps::PartitionCdf cdf(kOneTwoThree, ps::tail::Truncated{0.0, 4.0});
  REQUIRE(cdf.quantile(0.125) == 0.5);
  REQUIRE(cdf.quantile(0.25) == 1.0);
  REQUIRE(cdf.quantile(0.375) == 1.5);
  REQUIRE(cdf.quantile(0.75) == 3.0);
  REQUIRE(cdf.quantile(0.875) == 3.5);
}

TEST_CASE("quantile inverts the exponential tails in closed form") {
  const ps::PartitionCdf cdf(kOneTwoThree, ps::tail::ExponentialMatched{});
  REQUIRE_THAT(cdf.quantile(0.09196986029286058), WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(cdf.quantile(0.9080301397071394), WithinAbs(4.0, 1e-12));
  REQUIRE(cdf.quantile(0.5) == 2.0);
}

TEST_CASE("quantile and CDF round-trip within 1e-9") {
  const ps::SortedSample sample{0.5, 1.7, 2.0, 10.0};
  for (const ps::TailPolicy policy :
       {ps::TailPolicy(ps::tail::Truncated{-2.0, 30.0}),
        ps::TailPolicy(ps::tail::ExponentialMatched{})}) {
    const ps::PartitionCdf cdf(sample, policy);
    for (double q = 0.01; q < 1.0; q += 0.007) {
      const double x = cdf.quantile(q);
      REQUIRE_THAT(cdf(x), WithinAbs(q, 1e-9));
    }
  }
}

TEST_CASE("quantile rejects arguments outside (0,1)") {
  const ps::PartitionCdf cdf(kOneTwoThree, ps::tail::Truncated{0.0, 4.0});
  for (double q : {0.0, 1.0, -0.5, 2.0}) {
    const auto e = helpers::capture_error([&] { cdf.quantile(q); });
    REQUIRE(e.code() == ps::errc::out_of_range_quantile);
  }
}

TEST_CASE("excluded tails cannot be inverted or sampled") {
  const ps::PartitionCdf cdf(kOneTwoThree, ps::tail::Excluded{});
  REQUIRE(helpers::capture_error([&] { cdf.quantile(0.5); }).code() ==
          ps::errc::uninvertible_policy);
  REQUIRE(helpers::capture_error([&] { cdf.sample(0, 10); }).code() ==
          ps::errc::uninvertible_policy);
}

TEST_CASE("truncation bounds must strictly contain the sample") {
  for (const auto& bounds : {ps::tail::Truncated{1.0, 4.0}, ps::tail::Truncated{0.0, 3.0},
                             ps::tail::Truncated{2.0, 2.5}}) {
    const auto e = helpers::capture_error([&] { ps::PartitionCdf(kOneTwoThree, bounds); });
    REQUIRE(e.code() == ps::errc::invalid_truncation_bounds);
  }
  const double inf = std::numeric_limits<double>::infinity();
  const auto e = helpers::capture_error(
      [&] { ps::PartitionCdf(kOneTwoThree, ps::tail::Truncated{-inf, 4.0}); });
  REQUIRE(e.code() == ps::errc::invalid_truncation_bounds);
}

TEST_CASE("exponential matching needs two distinct observations") {
  REQUIRE(helpers::capture_error([] {
            ps::PartitionCdf(ps::SortedSample{5.0}, ps::tail::ExponentialMatched{});
          }).code() == ps::errc::too_few_points);
  REQUIRE(helpers::capture_error([] {
            ps::PartitionCdf(ps::SortedSample{5.0, 5.0}, ps::tail::ExponentialMatched{});
          }).code() == ps::errc::tied_boundaries);
}

TEST_CASE("CDF rejects non-finite arguments") {
  const ps::PartitionCdf cdf(kOneTwoThree, ps::tail::Excluded{});
  const auto e = helpers::capture_error(
      [&] { cdf(std::numeric_limits<double>::quiet_NaN()); });
  REQUIRE(e.code() == ps::errc::non_finite_value);
}

TEST_CASE("inverse-transform draws follow the deterministic stream") {
  const ps::PartitionCdf cdf(kOneTwoThree, ps::tail::Truncated{0.0, 4.0});
  const auto draws = cdf.sample(0, 3);
  // First three deviates of stream (0,0), pinned by the engine's standard.
  REQUIRE(draws[0] == cdf.quantile(0.8923741647765622));
  REQUIRE(draws[1] == cdf.quantile(0.9241077559368445));
  REQUIRE(draws[2] == cdf.quantile(0.77430114340078));
  REQUIRE(cdf.sample(0, 3) == draws);
  REQUIRE(cdf.sample(1, 3) != draws);

  for (double x : cdf.sample(7, 200)) {
    REQUIRE(x > 0.0);
    REQUIRE(x < 4.0);
  }
  REQUIRE(helpers::capture_error([&] { cdf.sample(0, 0); }).code() == ps::errc::empty_input);
}

TEST_CASE("density gives every segment the same mass") {
  const ps::PiecewiseUniformDensity d(ps::SortedSample{0.0, 1.0, 3.0}, ps::tail::Excluded{});
  REQUIRE(d.segment_mass() == 0.25);
  REQUIRE(d.interior_heights() == std::vector<double>{0.25, 0.125});
  REQUIRE(d(-0.5) == 0.0);
  REQUIRE(d(0.0) == 0.25);   // boundary belongs to the segment on its right
  REQUIRE(d(0.5) == 0.25);
  REQUIRE(d(1.0) == 0.125);
  REQUIRE(d(2.0) == 0.125);
  REQUIRE(d(3.0) == 0.0);    // at the maximum the excluded upper tail begins
  REQUIRE(d(5.0) == 0.0);
  REQUIRE_THAT(d.total_mass(), WithinAbs(0.5, 1e-15));  // (n-1)/(n+1) for n=3
  REQUIRE(d.pieces().size() == 2);
}

TEST_CASE("narrow gaps give tall bars, wide gaps short ones") {
  const ps::PiecewiseUniformDensity d(ps::SortedSample{1.0, 3.0}, ps::tail::Truncated{0.0, 5.0});
  REQUIRE(d(0.5) == 1.0 / 3.0);
  REQUIRE(d(2.0) == 1.0 / 6.0);
  REQUIRE(d(4.0) == 1.0 / 6.0);
  REQUIRE_THAT(d.total_mass(), WithinAbs(1.0, 1e-12));
  const auto pieces = d.pieces();
  REQUIRE(pieces.size() == 3);
  REQUIRE(pieces.front().lower == 0.0);
  REQUIRE(pieces.back().upper == 5.0);
  for (const auto& p : pieces) {
    REQUIRE(p.mass == 1.0 / 3.0);
    REQUIRE(p.kind == ps::PiecewiseUniformDensity::Piece::Kind::uniform);
  }
}

TEST_CASE("truncated tails spread one segment mass over each margin") {
  const ps::PiecewiseUniformDensity d(ps::SortedSample{0.0, 1.0, 3.0},
                                      ps::tail::Truncated{-1.0, 5.0});
  REQUIRE(d(-0.5) == 0.25);
  REQUIRE(d(-1.5) == 0.0);
  REQUIRE(d(4.0) == 0.125);
  REQUIRE(d(6.0) == 0.0);
  REQUIRE_THAT(d.total_mass(), WithinAbs(1.0, 1e-12));
  REQUIRE(d.pieces().size() == 4);
}

TEST_CASE("exponential tail density decays from the matched peak") {
  const ps::PiecewiseUniformDensity d(kOneTwoThree, ps::tail::ExponentialMatched{});
  REQUIRE(d.tail_rate() == 1.0);
  REQUIRE(d(3.0) == 0.25);  // peak mass * rate at the sample edge
  REQUIRE_THAT(d(0.5), WithinAbs(0.15163266492815836, 1e-15));  // 0.25 e^-0.5
  REQUIRE_THAT(d(4.0), WithinAbs(0.09196986029286058, 1e-15));  // 0.25 e^-1
  REQUIRE(d.total_mass() == 1.0);

  const auto pieces = d.pieces();
  REQUIRE(pieces.size() == 4);
  REQUIRE(std::isinf(pieces.front().lower));
  REQUIRE(pieces.front().kind == ps::PiecewiseUniformDensity::Piece::Kind::exponential);
  REQUIRE(pieces.front().height == 0.25);
  REQUIRE(std::isinf(pieces.back().upper));
}

TEST_CASE("density construction rejects degenerate configurations") {
  REQUIRE(helpers::capture_error([] {
            ps::PiecewiseUniformDensity(ps::SortedSample{1.0, 2.0, 2.0}, ps::tail::Excluded{});
          }).code() == ps::errc::tied_boundaries);
  REQUIRE(helpers::capture_error([] {
            ps::PiecewiseUniformDensity(ps::SortedSample{5.0}, ps::tail::Excluded{});
          }).code() == ps::errc::too_few_points);
  REQUIRE(helpers::capture_error([] {
            ps::PiecewiseUniformDensity(kOneTwoThree, ps::tail::Truncated{1.5, 5.0});
          }).code() == ps::errc::invalid_truncation_bounds);
}

TEST_CASE("build_density matches direct construction") {
  const auto p = ps::build_partition(ps::SortedSample{0.0, 1.0, 3.0});
  const auto d = ps::build_density(p, ps::tail::Excluded{});
  REQUIRE(d.interior_heights() == std::vector<double>{0.25, 0.125});
}

TEST_CASE("density and CDF agree through differences") {
  const ps::SortedSample sample{0.5, 1.7, 2.0, 10.0};
  const ps::TailPolicy policy = ps::tail::Truncated{-2.0, 30.0};
  const ps::PartitionCdf cdf(sample, policy);
  const ps::PiecewiseUniformDensity density(sample, policy);
  for (double x = -1.9; x < 29.0; x += 0.37) {
    const double h = 1e-6;
    const double slope = (cdf(x + h) - cdf(x - h)) / (2.0 * h);
    REQUIRE_THAT(slope, WithinAbs(density(x), 1e-4));
  }
}

TEST_CASE("ECDF steps by 1/n at each observation") {
  const ps::SortedSample s{1.0, 2.0, 3.0};
  REQUIRE(ps::ecdf_eval(s, 0.5) == 0.0);
  REQUIRE(ps::ecdf_eval(s, 1.0) == 1.0 / 3.0);
  REQUIRE(ps::ecdf_eval(s, 2.5) == 2.0 / 3.0);
  REQUIRE(ps::ecdf_eval(s, 3.0) == 1.0);
  REQUIRE(ps::ecdf_eval(s, 4.0) == 1.0);

  const ps::SortedSample tied{1.0, 2.0, 2.0, 3.0};
  REQUIRE(ps::ecdf_eval(tied, 2.0) == 0.75);
}

TEST_CASE("comparison report contrasts i/n steps with i/(n+1) anchors") {
  std::vector<double> values(9);
  for (std::size_t i = 0; i < 9; ++i) values[i] = static_cast<double>(i + 1);
  const auto report = ps::compare_cdfs(ps::SortedSample(values));

  REQUIRE(report.rows.size() == 9);
  for (std::size_t i = 1; i <= 9; ++i) {
    const auto& row = report.rows[i - 1];
    REQUIRE(row.rank == i);
    REQUIRE(row.ecdf == static_cast<double>(i) / 9.0);
    REQUIRE(row.partition_cdf == static_cast<double>(i) / 10.0);
  }
  REQUIRE_THAT(report.sup_difference, WithinAbs(0.1, 1e-12));
  REQUIRE(report.ecdf_tail_mass == 0.0);
  REQUIRE(report.partition_tail_mass == 0.1);
}

TEST_CASE("even a single observation reserves tail mass above the maximum") {
  const auto report = ps::compare_cdfs(ps::SortedSample{5.0});
  REQUIRE(report.rows.size() == 1);
  REQUIRE(report.rows[0].ecdf == 1.0);
  REQUIRE(report.rows[0].partition_cdf == 0.5);
  REQUIRE(report.sup_difference == 0.5);
  REQUIRE(report.partition_tail_mass == 0.5);
}
