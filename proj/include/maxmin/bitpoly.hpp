#pragma once

/**
 * @file bitpoly.hpp
 * @brief Packed boolean polynomials (degree <= 63) in a single 64-bit word.
 *
 * Bit k holds the coefficient of x^k. Over B_2 the product is
 * OR_{j in g} (f << j) and the residual quotient of h by g is
 * AND_{j in g} (h >> j).
 */

#include <bit>
#include <cstdint>
#include <optional>

#include "maxmin/poly.hpp"

namespace maxmin::bits {

using Word = std::uint64_t;

inline constexpr unsigned kMaxDegree = 63;

constexpr unsigned degree(Word w) noexcept { return 63u - static_cast<unsigned>(std::countl_zero(w)); }
constexpr unsigned popcount(Word w) noexcept { return static_cast<unsigned>(std::popcount(w)); }
constexpr Word low_mask(unsigned n_bits) noexcept { return n_bits >= 64 ? ~Word{0} : (Word{1} << n_bits) - 1; }

/// Product of two boolean polynomials; the caller keeps deg f + deg g <= 63.
constexpr Word mul(Word f, Word g) noexcept {
    Word out = 0;
    while (g) {
        unsigned j = static_cast<unsigned>(std::countr_zero(g));
        out |= f << j;
        g &= g - 1;
    }
    return out;
}

/// Largest q with mul(q, g) <= h, restricted to degree <= deg h - deg g.
constexpr Word residual(Word h, Word g) noexcept {
    Word q = ~Word{0};
    Word rest = g;
    while (rest) {
        unsigned j = static_cast<unsigned>(std::countr_zero(rest));
        q &= h >> j;
        rest &= rest - 1;
    }
    return q;
}

/// Boolean divisibility test: some q satisfies mul(q, g) == h.
constexpr bool divides(Word g, Word h) noexcept {
    if (g == 0 || h == 0) return false;
    if (degree(g) > degree(h)) return false;
    return mul(residual(h, g), g) == h;
}

/// Reverses the lowest `width` bits.
constexpr Word reverse(Word w, unsigned width) noexcept {
    Word out = 0;
    for (unsigned i = 0; i < width; ++i)
        if (w >> i & 1) out |= Word{1} << (width - 1 - i);
    return out;
}

inline Word to_word(const MaxMinPoly& f) {
    if (f.size() > 64) fail(ErrorCode::DegreeTooLarge, "packed boolean form holds degree <= 63");
    Word w = 0;
    for (std::size_t k = 0; k < f.size(); ++k)
        if (f[k] != 0) w |= Word{1} << k;
    return w;
}

inline MaxMinPoly from_word(Word w) {
    std::vector<Digit> d;
    while (w) {
        d.push_back(static_cast<Digit>(w & 1));
        w >>= 1;
    }
    return MaxMinPoly::from_digits(Base(2), std::move(d));
}

/// Result of the packed irreducibility search.
struct Split {
    Word g = 0;
    Word f = 0;
};

/**
 * First factorization h = g * f with both factors non-monomial, g minimal in
 * (degree, lexicographic) order; f is the residual cofactor.
 *
 * The minimal g always has g_0 = 1: if g = x^a g' then g' (of smaller degree)
 * divides h with cofactor x^a f. After stripping the valuation of h both
 * constant terms are 1, so supp g and supp(x^{D-k} g) lie inside supp h,
 * which confines the free middle bits of g to a small mask.
 */
inline std::optional<Split> find_split(Word h) noexcept {
    if (popcount(h) < 3) {
        // A product of two non-monomials has at least three terms.
        return std::nullopt;
    }
    const unsigned shift = static_cast<unsigned>(std::countr_zero(h));
    const Word hs = h >> shift;
    const unsigned D = degree(hs);
    for (unsigned k = 1; k <= D / 2; ++k) {
        const unsigned fdeg = D - k;
        if (!(hs >> k & 1) || !(hs >> fdeg & 1)) continue;
        const Word mid = hs & (hs >> fdeg) & (low_mask(k) & ~Word{1});
        const Word ends = Word{1} | (Word{1} << k);
        // Lex order on (c_1, ..., c_{k-1}) is ascending order of the reversed bit pattern.
        const Word rmask = reverse(mid >> 1, k - 1);
        Word sub = 0;
        for (;;) {
            const Word g = ends | (reverse(sub, k - 1) << 1);
            const Word q = residual(hs, g);
            if ((q & 1) && (q >> fdeg & 1) && mul(q, g) == hs) return Split{g, q << shift};
            if (sub == rmask) break;
            sub = (sub - rmask) & rmask;
        }
    }
    return std::nullopt;
}

}  // namespace maxmin::bits
