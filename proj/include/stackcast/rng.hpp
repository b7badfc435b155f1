// Seed-deterministic random helpers. Draws are made from raw mt19937_64 output
// so results do not depend on the standard library's distribution internals.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace stackcast {

inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

// Box-Muller; one value per call, second half discarded to keep the stream simple.
inline double normal(std::mt19937_64& g, double mean = 0.0, double sigma = 1.0) {
    double u1 = uniform01(g);
    double u2 = uniform01(g);
    while (u1 <= 0.0) u1 = uniform01(g);
    return mean + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

// splitmix64-style mixing for deriving per-task seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::size_t uniform_index(std::mt19937_64& g, std::size_t n) {
    return static_cast<std::size_t>(uniform01(g) * static_cast<double>(n)) % n;
}

}  // namespace stackcast
