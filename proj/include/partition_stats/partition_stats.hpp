#pragma once

// Umbrella header for the equal-probability partition toolkit.

#include "partition_stats/density.hpp"
#include "partition_stats/distributions.hpp"
#include "partition_stats/ecdf.hpp"
#include "partition_stats/errors.hpp"
#include "partition_stats/information.hpp"
#include "partition_stats/io.hpp"
#include "partition_stats/montecarlo.hpp"
#include "partition_stats/numeric.hpp"
#include "partition_stats/partition.hpp"
#include "partition_stats/partition_cdf.hpp"
#include "partition_stats/plotting.hpp"
#include "partition_stats/quadrature.hpp"
#include "partition_stats/rng.hpp"
#include "partition_stats/sorted_sample.hpp"
#include "partition_stats/tail_policy.hpp"
