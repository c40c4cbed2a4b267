#pragma once

#include <cstdint>
#include <random>

namespace partition_stats {

namespace detail {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Used only to spread a
// (seed, stream) pair over 64 bits before seeding the engine proper.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Seed for the engine of logical stream `stream` under master seed `seed`.
/// Pure function of its arguments, so replication r of a Monte Carlo run
/// gets the same generator no matter which worker executes it.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return detail::mix64(seed + stream * 0x9e3779b97f4a7c15ULL);
}

/// Deterministic uniform deviate stream. The engine is std::mt19937_64,
/// whose output sequence is pinned down by the standard, and the mapping
/// to doubles is done here rather than through std::uniform_real_distribution
/// (which the standard leaves implementation-defined). Identical seeds give
/// bit-identical sequences on every platform.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t stream_seed) : engine_(stream_seed) {}

  UniformStream(std::uint64_t seed, std::uint64_t stream)
      : engine_(derive_stream_seed(seed, stream)) {}

  /// Next deviate, strictly inside (0,1): the 53-bit mantissa is offset by
  /// half a step so 0 and 1 are never produced.
  double next() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t next_bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace partition_stats
