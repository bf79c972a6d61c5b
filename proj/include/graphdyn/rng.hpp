#pragma once

#include <cstdint>

namespace graphdyn {

/// SplitMix64 finalizer: bijective 64-bit avalanche mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// Counter-based stream for a keyed pair: the value depends only on
/// (seed, i, j), never on draw order, so per-pair Bernoulli sampling is
/// independent of iteration order and thread schedule.
constexpr std::uint64_t pair_stream(std::uint64_t seed, std::uint64_t i,
                                    std::uint64_t j) {
  std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ULL);
  h = mix64(h ^ (i + 0xD1B54A32D192ED03ULL));
  h = mix64(h ^ (j + 0x8CB92BA72F3D8DD7ULL));
  return h;
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double uniform01(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Stable per-record seed derived from (master seed, n, replicate index).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n,
                                    std::uint64_t replicate) {
  return pair_stream(master, n, replicate);
}

}  // namespace graphdyn
