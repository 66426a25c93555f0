#pragma once

#include <cstdint>
#include <random>

namespace seqsem {

/// The generator behind every sampling routine: 64-bit Mersenne Twister.
///
/// Draw k of an ensemble with seed s owns the substream seeded by
/// std::seed_seq{lo32(s), hi32(s), lo32(k), hi32(k)}. Both the engine and
/// seed_seq are fully specified by the C++ standard, and the helpers below
/// avoid the implementation-defined std:: distributions, so streams are
/// reproducible across platforms.
using Rng = std::mt19937_64;

inline Rng substream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, k) for small k, by rejection on the top bits.
inline unsigned uniform_below(Rng& rng, unsigned k) {
    if (k == 4) return static_cast<unsigned>(rng() >> 62);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % k;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit) return static_cast<unsigned>(x % k);
    }
}

}  // namespace seqsem
