#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace tdcim {

using Bit = std::uint8_t;
using BitVec = std::vector<Bit>;

// All stochastic code draws from a shared engine type so that a fixed seed
// reproduces the exact same sample sequence run after run.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent substream for (seed, index). Trials seeded this way do not
// depend on evaluation order, so sweeps can be restructured freely without
// changing any sampled value.
inline Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(index + 1)));
}

inline std::size_t popcount(const BitVec& bits) {
    std::size_t n = 0;
    for (Bit b : bits) n += (b != 0);
    return n;
}

} // namespace tdcim
