#pragma once

#include "tspsplit/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace tspsplit {

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit Mersenne
/// Twister draw. Unlike std::uniform_real_distribution the mapping is
/// fixed, so a seed names the same points on every standard library.
inline double uniform_unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// n points uniform in the unit square.
inline std::vector<Point> uniform_points(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = uniform_unit(rng);
        const double y = uniform_unit(rng);
        pts.push_back({x, y});
    }
    return pts;
}

} // namespace tspsplit
