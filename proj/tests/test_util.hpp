#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

#include "cbpenta/system.hpp"

namespace cbpenta::test {

inline Block rand_block(int m, std::mt19937_64& eng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Block b(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) b(i, j) = dist(eng);
    return b;
}

/// Diagonally dominant random block; safe to invert.
inline Block rand_spd_block(int m, std::mt19937_64& eng) {
    Block b = rand_block(m, eng, -1.0, 1.0);
    for (int i = 0; i < m; ++i) b(i, i) += 2.0 * m;
    return b;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
    return best;
}

inline double max_abs_diff(const Block& a, const Block& b) {
    return max_abs_diff(a.entries(), b.entries());
}

}  // namespace cbpenta::test
