#pragma once

#include <cstdint>

#include "percolab/rng.hpp"

namespace percolab::kernels::detail {

// One output word: bits [0, nbits) of the word whose first counter is base.
inline std::uint64_t threshold_word(std::uint64_t key, std::uint64_t threshold,
                                    std::uint64_t base, unsigned nbits) {
    std::uint64_t bits = 0;
    for (unsigned b = 0; b < nbits; ++b) {
        const std::uint64_t v = stream_value(key, base + b) >> 11;
        bits |= static_cast<std::uint64_t>(v < threshold) << b;
    }
    return bits;
}

}  // namespace percolab::kernels::detail
