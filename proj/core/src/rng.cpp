#include "sscl/rng.hpp"

#include <cmath>
#include <numbers>

namespace sscl::rng {

std::uint64_t mix(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t key(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept {
    std::uint64_t h = mix(seed);
    h = mix(h ^ a);
    h = mix(h ^ (b * 0xd6e8feb86659fd93ULL));
    h = mix(h ^ (c * 0xa0761d6478bd642fULL));
    return h;
}

double uniform(std::uint64_t k) noexcept {
    return (static_cast<double>(k >> 11) + 1.0) * 0x1.0p-53;
}

double normal(std::uint64_t seed, std::uint64_t level, std::uint64_t index,
              std::uint64_t component) noexcept {
    const std::uint64_t k = key(seed, level, index, component);
    const double u1 = uniform(k);
    const double u2 = uniform(mix(k ^ 0x5851f42d4c957f2dULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive(std::uint64_t base, std::uint64_t index) noexcept {
    return key(base, 0x7265706cULL, index, 0);
}

}  // namespace sscl::rng
