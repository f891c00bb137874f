#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace dgafd::rng {

// std::mt19937_64 output is pinned by the standard; the helpers below avoid
// std distributions, whose sequences vary across standard libraries.

inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline std::uint64_t below(std::mt19937_64& gen, std::uint64_t n) {
    // unbiased bounded draw (rejection sampling)
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return x % n;
}

template <typename T>
void shuffle(std::vector<T>& values, std::mt19937_64& gen) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::swap(values[i - 1], values[below(gen, i)]);
    }
}

}  // namespace dgafd::rng
