#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace seisgrid {

using Rng = std::mt19937_64;

/// Folds the parts through splitmix64; used to derive independent substreams
/// (e.g. master seed, magnitude, sample index, purpose tag).
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts);

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Stable integer key for a magnitude value (micro-magnitude units).
std::uint64_t magnitude_key(double magnitude);

}  // namespace seisgrid
