// Small shared internals.
#pragma once

#include <cstdint>
#include <random>

namespace betadyn::detail {

// Unbiased uniform draw from [0, n) with rejection; deterministic across
// platforms (uniform_int_distribution is not).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1)
        return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
        std::uint64_t v = rng();
        if (v < limit)
            return v % n;
    }
}

} // namespace betadyn::detail
