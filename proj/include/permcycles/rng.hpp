#pragma once

#include <cstdint>
#include <random>

namespace permcycles {

using Rng = std::mt19937_64;

// Stream `index` of the family rooted at `seed`. Streams are seeded through
// std::seed_seq from the four 32-bit halves of (seed, index).
inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

// Uniform double in [0,1) with a 53-bit mantissa.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace permcycles
