#pragma once

#include <cstdint>

namespace sscl::rng {

/// SplitMix64 finalizer.
std::uint64_t mix(std::uint64_t x) noexcept;

/// Counter-based key: every (seed, a, b, c) tuple maps to an independent stream position.
std::uint64_t key(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept;

/// Uniform in (0, 1], 53 bits.
double uniform(std::uint64_t key) noexcept;

/// Standard normal drawn by Box-Muller from the counter tuple.
double normal(std::uint64_t seed, std::uint64_t level, std::uint64_t index,
              std::uint64_t component) noexcept;

/// Seed for replica `index` of an ensemble started from `base`.
std::uint64_t derive(std::uint64_t base, std::uint64_t index) noexcept;

}  // namespace sscl::rng
