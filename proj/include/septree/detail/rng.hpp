#pragma once

#include <cstdint>
#include <random>

namespace septree::detail {

// Uniform draws derived directly from mt19937_64 output words. The engine's
// bit stream is fixed by the standard, so these helpers are bit-reproducible
// across platforms and standard libraries (std::uniform_real_distribution is
// not).

/// Uniform double in [0, 1) with 53 random bits.
inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * u01(rng);
}

/// Uniform index in [0, n). n must be positive.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  auto i = static_cast<std::size_t>(u01(rng) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

/// splitmix64 step; used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace septree::detail
