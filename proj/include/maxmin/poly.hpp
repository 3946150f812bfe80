#pragma once

/**
 * @file poly.hpp
 * @brief Polynomials over the finite max-min semiring B_b = {0, ..., b-1}.
 *
 * Addition is coefficientwise max and multiplication is the max-min
 * convolution
 *
 *     (f*g)_n = max_k min(f_k, g_{n-k}).
 *
 * Values are immutable and canonical: trailing zero coefficients are trimmed
 * and the zero polynomial is the empty coefficient sequence.
 */

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "maxmin/error.hpp"

namespace maxmin {

using Digit = std::uint8_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Alphabet size b of B_b, 2 <= b <= 256.
class Base {
public:
    constexpr explicit Base(unsigned b) : b_(b) {
        if (b < 2 || b > 256) fail(ErrorCode::InvalidBase, "base must lie in [2, 256], got " + std::to_string(b));
    }

    constexpr unsigned value() const noexcept { return b_; }
    /// Largest digit b-1, the multiplicative identity.
    constexpr Digit top() const noexcept { return static_cast<Digit>(b_ - 1); }

    constexpr bool operator==(const Base&) const = default;
    constexpr auto operator<=>(const Base&) const = default;

private:
    unsigned b_;
};

inline void require_same_base(Base a, Base b, const char* what) {
    if (a != b) {
        fail(ErrorCode::BaseMismatch, std::string(what) + ": base " + std::to_string(a.value()) + " vs " +
                                          std::to_string(b.value()));
    }
}

class MaxMinPoly {
public:
    /// Zero polynomial over `base`.
    explicit MaxMinPoly(Base base) : base_(base) {}

    /// Validates every digit against the base and trims trailing zeros.
    template <class Int>
    MaxMinPoly(Base base, std::span<const Int> coeffs) : base_(base) {
        coeffs_.reserve(coeffs.size());
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            auto c = coeffs[k];
            bool negative = false;
            if constexpr (std::is_signed_v<Int>) negative = c < 0;
            if (negative || static_cast<unsigned long long>(c) >= base.value()) {
                fail(ErrorCode::DigitOutOfRange, "coefficient " + std::to_string(k) + " = " + std::to_string(c) +
                                                     " is outside [0, " + std::to_string(base.value() - 1) + "]");
            }
            coeffs_.push_back(static_cast<Digit>(c));
        }
        trim();
    }

    MaxMinPoly(Base base, std::initializer_list<int> coeffs)
        : MaxMinPoly(base, std::span<const int>(coeffs.begin(), coeffs.size())) {}

    MaxMinPoly(Base base, const std::vector<unsigned>& coeffs)
        : MaxMinPoly(base, std::span<const unsigned>(coeffs)) {}

    /// Internal fast constructor: digits are already known to be < b.
    static MaxMinPoly from_digits(Base base, std::vector<Digit> digits) {
        MaxMinPoly p(base);
        p.coeffs_ = std::move(digits);
        p.trim();
        return p;
    }

    Base base() const noexcept { return base_; }
    std::span<const Digit> coeffs() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// Coefficient of x^k; zero beyond the stored range.
    Digit operator[](std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : Digit{0}; }

    bool operator==(const MaxMinPoly&) const = default;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    Base base_;
    std::vector<Digit> coeffs_;
};

inline MaxMinPoly poly_new(Base b, std::span<const unsigned> coeffs) { return MaxMinPoly(b, coeffs); }

inline MaxMinPoly constant(Base b, unsigned c) { return MaxMinPoly(b, std::vector<unsigned>{c}); }

/// c * x^j.
inline MaxMinPoly monomial(Base b, unsigned c, std::size_t j) {
    std::vector<unsigned> v(j + 1, 0);
    v[j] = c;
    return MaxMinPoly(b, v);
}

inline MaxMinPoly add(const MaxMinPoly& f, const MaxMinPoly& g) {
    require_same_base(f.base(), g.base(), "add");
    std::vector<Digit> out(std::max(f.size(), g.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::max(f[k], g[k]);
    return MaxMinPoly::from_digits(f.base(), std::move(out));
}

inline MaxMinPoly mul(const MaxMinPoly& f, const MaxMinPoly& g) {
    require_same_base(f.base(), g.base(), "mul");
    if (f.is_zero() || g.is_zero()) return MaxMinPoly(f.base());
    auto a = f.coeffs();
    auto c = g.coeffs();
    std::vector<Digit> out(a.size() + c.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < c.size(); ++j) {
            Digit m = std::min(a[i], c[j]);
            if (m > out[i + j]) out[i + j] = m;
        }
    }
    return MaxMinPoly::from_digits(f.base(), std::move(out));
}

inline MaxMinPoly operator+(const MaxMinPoly& f, const MaxMinPoly& g) { return add(f, g); }
inline MaxMinPoly operator*(const MaxMinPoly& f, const MaxMinPoly& g) { return mul(f, g); }

inline std::size_t degree(const MaxMinPoly& f) {
    if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "degree of the zero polynomial is undefined");
    return f.size() - 1;
}

/// Number of nonzero coefficients, |f|.
inline std::size_t nnz(const MaxMinPoly& f) {
    return static_cast<std::size_t>(std::count_if(f.coeffs().begin(), f.coeffs().end(), [](Digit c) { return c != 0; }));
}

/// Exactly one nonzero coefficient; nonzero constants count as monomials.
inline bool is_monomial(const MaxMinPoly& f) { return nnz(f) == 1; }

inline Digit max_coeff(const MaxMinPoly& f) {
    return f.is_zero() ? Digit{0} : *std::max_element(f.coeffs().begin(), f.coeffs().end());
}

/// Index of the lowest nonzero coefficient (0 for the zero polynomial).
inline std::size_t valuation(const MaxMinPoly& f) {
    for (std::size_t k = 0; k < f.size(); ++k)
        if (f[k] != 0) return k;
    return 0;
}

/// f(n): coefficients 0..n.
inline MaxMinPoly truncate(const MaxMinPoly& f, std::size_t n) {
    auto c = f.coeffs();
    std::vector<Digit> out(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(std::min(c.size(), n + 1)));
    return MaxMinPoly::from_digits(f.base(), std::move(out));
}

/// Pointwise order: f <= g iff every coefficient of f is <= that of g.
inline bool pointwise_le(const MaxMinPoly& f, const MaxMinPoly& g) {
    require_same_base(f.base(), g.base(), "pointwise_le");
    if (f.size() > g.size()) return false;
    for (std::size_t k = 0; k < f.size(); ++k)
        if (f[k] > g[k]) return false;
    return true;
}

/// Lexicographic order on coefficient sequences, index 0 compared first.
inline bool lex_less(const MaxMinPoly& f, const MaxMinPoly& g) {
    return std::lexicographical_compare(f.coeffs().begin(), f.coeffs().end(), g.coeffs().begin(), g.coeffs().end());
}

/// (degree, lexicographic) order used for witness determinism.
inline bool degree_lex_less(const MaxMinPoly& f, const MaxMinPoly& g) {
    if (f.size() != g.size()) return f.size() < g.size();
    return lex_less(f, g);
}

/// rho_b(f) = sum_k f_k b^{-k}, exact. Lies in [0, b).
inline Rational rho(const MaxMinPoly& f) {
    if (f.is_zero()) return Rational(0);
    const BigInt b = f.base().value();
    BigInt num = 0;
    for (auto c : f.coeffs()) num = num * b + c;
    BigInt den = boost::multiprecision::pow(b, static_cast<unsigned>(f.size() - 1));
    return Rational(num, den);
}

}  // namespace maxmin
