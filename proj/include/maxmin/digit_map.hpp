#pragma once

/**
 * @file digit_map.hpp
 * @brief Nondecreasing digit maps and the i-level supports f_i.
 *
 * A nondecreasing map on digits commutes with max and min, so applying it
 * coefficientwise is a semiring homomorphism. The maps here fix 0, which
 * keeps images of polynomials finite.
 */

#include <string>
#include <vector>

#include "maxmin/poly.hpp"

namespace maxmin {

class DigitMap {
public:
    /// `table[j]` is the image of digit j; validated against both bases.
    DigitMap(Base domain, Base codomain, std::vector<unsigned> table) : domain_(domain), codomain_(codomain) {
        if (table.size() != domain.value())
            fail(ErrorCode::InvalidDigitMap, "table must have one entry per digit of the domain base");
        if (table[0] != 0) fail(ErrorCode::InvalidDigitMap, "digit maps must send 0 to 0");
        table_.reserve(table.size());
        for (std::size_t j = 0; j < table.size(); ++j) {
            if (table[j] >= codomain.value())
                fail(ErrorCode::DigitOutOfRange, "image of digit " + std::to_string(j) + " exceeds codomain base");
            if (j > 0 && table[j] < table[j - 1])
                fail(ErrorCode::InvalidDigitMap, "digit map must be nondecreasing");
            table_.push_back(static_cast<Digit>(table[j]));
        }
    }

    static DigitMap identity(Base b) {
        std::vector<unsigned> t(b.value());
        for (unsigned j = 0; j < b.value(); ++j) t[j] = j;
        return DigitMap(b, b, std::move(t));
    }

    /// s_i: digits below i go to 0, the rest to i.
    static DigitMap level(Base b, unsigned i) {
        if (i < 1 || i > b.value() - 1)
            fail(ErrorCode::LevelOutOfRange, "level " + std::to_string(i) + " outside [1, b-1]");
        std::vector<unsigned> t(b.value());
        for (unsigned j = 0; j < b.value(); ++j) t[j] = j < i ? 0 : i;
        return DigitMap(b, b, std::move(t));
    }

    Base domain() const noexcept { return domain_; }
    Base codomain() const noexcept { return codomain_; }
    Digit operator()(Digit d) const noexcept { return table_[d]; }

    /// (other o this): apply this map first.
    DigitMap then(const DigitMap& other) const {
        require_same_base(codomain_, other.domain_, "DigitMap::then");
        std::vector<unsigned> t(table_.size());
        for (std::size_t j = 0; j < t.size(); ++j) t[j] = other(table_[j]);
        return DigitMap(domain_, other.codomain_, std::move(t));
    }

private:
    Base domain_;
    Base codomain_;
    std::vector<Digit> table_;
};

inline MaxMinPoly apply_digit_map(const DigitMap& d, const MaxMinPoly& f) {
    require_same_base(d.domain(), f.base(), "apply_digit_map");
    std::vector<Digit> out(f.coeffs().begin(), f.coeffs().end());
    for (auto& c : out) c = d(c);
    return MaxMinPoly::from_digits(d.codomain(), std::move(out));
}

/// f_i = s_1(s_i(f)) as a base-2 polynomial: indicator of coefficients >= i.
inline MaxMinPoly support_level(const MaxMinPoly& f, unsigned i) {
    if (i < 1 || i > f.base().value() - 1)
        fail(ErrorCode::LevelOutOfRange, "level " + std::to_string(i) + " outside [1, b-1]");
    std::vector<Digit> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k] >= i ? 1 : 0;
    return MaxMinPoly::from_digits(Base(2), std::move(out));
}

/// |f_i|: number of coefficients >= i.
inline std::size_t support_size(const MaxMinPoly& f, unsigned i) {
    std::size_t n = 0;
    for (auto c : f.coeffs()) n += c >= i;
    return n;
}

}  // namespace maxmin
