#pragma once

#include <random>
#include <vector>

#include "maxmin/poly.hpp"
#include "oracles.hpp"

namespace testing_support {

inline oracle::Vec to_vec(const maxmin::MaxMinPoly& f) { return oracle::Vec(f.coeffs().begin(), f.coeffs().end()); }

inline maxmin::MaxMinPoly from_vec(unsigned b, const oracle::Vec& v) {
    return maxmin::MaxMinPoly(maxmin::Base(b), std::span<const int>(v));
}

/// Uniform digits of length 0..max_len (may be zero or non-canonical before trimming).
inline maxmin::MaxMinPoly random_poly(std::mt19937_64& rng, unsigned b, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> digit(0, static_cast<int>(b) - 1);
    std::vector<int> v(len(rng));
    for (auto& c : v) c = digit(rng);
    return from_vec(b, v);
}

inline maxmin::MaxMinPoly random_nonzero(std::mt19937_64& rng, unsigned b, std::size_t max_len) {
    for (;;) {
        auto f = random_poly(rng, b, max_len);
        if (!f.is_zero()) return f;
    }
}

}  // namespace testing_support
