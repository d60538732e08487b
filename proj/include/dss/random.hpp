#pragma once

#include <cstdint>
#include <random>

namespace dss {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent per-PE seed derived from a run seed.
constexpr std::uint64_t pe_seed(std::uint64_t seed, std::uint64_t rank) {
    return splitmix64(splitmix64(seed) + rank);
}

using Rng = std::mt19937_64;

/// Uniform draw from [0, bound) that does not depend on the standard
/// library's distribution implementation, so streams replay identically
/// everywhere. bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    while (true) {
        const std::uint64_t x = rng();
        if (x < limit) return x % bound;
    }
}

/// Uniform double in [0, 1).
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace dss
