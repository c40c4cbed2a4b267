#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>
#include <utility>

#include "partition_stats/errors.hpp"

namespace helpers {

/// Run fn, which must throw partition_stats::Error, and hand the error back
/// so the test can inspect its code and location.
template <typename Fn>
partition_stats::Error capture_error(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
  } catch (const partition_stats::Error& e) {
    return e;
  }
  FAIL("expected partition_stats::Error");
  throw std::logic_error("unreachable");
}

}  // namespace helpers
