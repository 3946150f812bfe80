#pragma once

/**
 * @file factor.hpp
 * @brief Residuation, factorization search and irreducible/prime classification.
 *
 * Division uses residuation: for g != 0 the coefficientwise-largest q with
 * q * g <= h is
 *
 *     q_i = min_j { h_{i+j}  if g_j > h_{i+j},  b-1 otherwise },
 *
 * and any f with f * g = h satisfies f <= q, so g divides h iff q * g = h.
 *
 * A polynomial is irreducible when every factorization has a monomial
 * factor. The search enumerates candidate divisors g with
 * 1 <= deg g <= deg h / 2 in (degree, lexicographic) order and returns the
 * first hit with its residual cofactor, so witnesses are deterministic.
 */

#include <algorithm>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "maxmin/bitpoly.hpp"
#include "maxmin/digit_map.hpp"
#include "maxmin/poly.hpp"

namespace maxmin {

/// h = g * f with neither factor a monomial; deg g <= deg f, ties broken lexicographically.
struct FactorWitness {
    MaxMinPoly g;
    MaxMinPoly h;

    bool operator==(const FactorWitness&) const = default;
};

enum class ClassKind { Monomial, Irreducible, Reducible };

struct Classification {
    ClassKind kind;
    std::optional<FactorWitness> witness;  // set iff kind == Reducible
};

enum class PrimeKind { Prime, CompositeCandidate, NotCandidate, Unit };

enum class NotCandidateReason { None, ZeroConstantTerm, MaxCoefficientBelowTop, ZeroPolynomial };

struct PrimeStatus {
    PrimeKind kind;
    NotCandidateReason reason = NotCandidateReason::None;
    std::optional<FactorWitness> witness;  // set iff kind == CompositeCandidate
};

constexpr std::string_view to_string(ClassKind k) noexcept {
    switch (k) {
        case ClassKind::Monomial: return "Monomial";
        case ClassKind::Irreducible: return "Irreducible";
        case ClassKind::Reducible: return "Reducible";
    }
    return "?";
}

constexpr std::string_view to_string(PrimeKind k) noexcept {
    switch (k) {
        case PrimeKind::Prime: return "Prime";
        case PrimeKind::CompositeCandidate: return "CompositeCandidate";
        case PrimeKind::NotCandidate: return "NotCandidate";
        case PrimeKind::Unit: return "Unit";
    }
    return "?";
}

constexpr std::string_view to_string(NotCandidateReason r) noexcept {
    switch (r) {
        case NotCandidateReason::None: return "none";
        case NotCandidateReason::ZeroConstantTerm: return "zero-constant-term";
        case NotCandidateReason::MaxCoefficientBelowTop: return "max-coefficient-below-b-1";
        case NotCandidateReason::ZeroPolynomial: return "zero-polynomial";
    }
    return "?";
}

/// Coefficientwise-largest q with mul(q, g) <= h. Requires deg g <= deg h.
inline MaxMinPoly residual_quotient(const MaxMinPoly& h, const MaxMinPoly& g) {
    const std::size_t D = h.size() - 1;
    const std::size_t k = g.size() - 1;
    const Digit top = h.base().top();
    std::vector<Digit> q(D - k + 1, top);
    auto hc = h.coeffs();
    auto gc = g.coeffs();
    for (std::size_t i = 0; i <= D - k; ++i) {
        Digit a = top;
        for (std::size_t j = 0; j <= k; ++j)
            if (gc[j] > hc[i + j] && hc[i + j] < a) a = hc[i + j];
        q[i] = a;
    }
    return MaxMinPoly::from_digits(h.base(), std::move(q));
}

inline std::optional<MaxMinPoly> residual_divide(const MaxMinPoly& h, const MaxMinPoly& g) {
    require_same_base(h.base(), g.base(), "residual_divide");
    if (g.is_zero()) fail(ErrorCode::ZeroDivisor, "division by the zero polynomial");
    if (h.is_zero()) fail(ErrorCode::ZeroPolynomial, "dividend is the zero polynomial");
    if (g.size() > h.size()) fail(ErrorCode::DegreeTooLarge, "divisor degree exceeds dividend degree");
    auto q = residual_quotient(h, g);
    if (mul(q, g) == h) return q;
    return std::nullopt;
}

inline bool divides(const MaxMinPoly& g, const MaxMinPoly& h) { return residual_divide(h, g).has_value(); }

inline bool is_prime_candidate(const MaxMinPoly& h) {
    return !h.is_zero() && h[0] != 0 && max_coeff(h) == h.base().top();
}

inline NotCandidateReason candidate_failure(const MaxMinPoly& h) {
    if (h.is_zero()) return NotCandidateReason::ZeroPolynomial;
    if (h[0] == 0) return NotCandidateReason::ZeroConstantTerm;
    if (max_coeff(h) != h.base().top()) return NotCandidateReason::MaxCoefficientBelowTop;
    return NotCandidateReason::None;
}

namespace detail {

/// Boolean level supports of h as packed words, index i = level.
inline std::vector<bits::Word> level_words(const MaxMinPoly& h, unsigned top_level) {
    std::vector<bits::Word> w(top_level + 1, 0);
    for (unsigned i = 1; i <= top_level; ++i)
        for (std::size_t k = 0; k < h.size(); ++k)
            if (h[k] >= i) w[i] |= bits::Word{1} << k;
    return w;
}

inline bits::Word level_word(std::span<const Digit> g, unsigned i) {
    bits::Word w = 0;
    for (std::size_t k = 0; k < g.size(); ++k)
        if (g[k] >= i) w |= bits::Word{1} << k;
    return w;
}

/**
 * Candidate divisor filter for one (h, deg g) pair.
 *
 * Level supports are homomorphic images, and max(h) = min(max g, max f), so
 * for every level i <= max(h) the boolean support g_i divides h_i. Level 1 is
 * also used as a prefix filter while digits of g are chosen.
 */
class DivisorFilter {
public:
    DivisorFilter(const MaxMinPoly& h, std::size_t k, bool require_unit_constant)
        : packed_(h.size() <= 64), top_level_(max_coeff(h)) {
        if (!packed_) return;
        levels_ = level_words(h, top_level_);
        const bits::Word h1 = levels_[1];
        const std::size_t D = h.size() - 1;
        // Every g with g * f = h satisfies supp(g) << i  inside supp(h) for i in supp(f),
        // in particular for i = deg f = D - k.
        bits::Word reach = h1 >> (D - k);
        // With g_0 != 0 the valuations of f and h agree, giving a second shift.
        if (require_unit_constant) reach &= h1 >> valuation(h);
        const bits::Word free = reach & bits::low_mask(static_cast<unsigned>(k + 1));
        if (!(free >> k & 1)) return;
        if (require_unit_constant && !(free & 1)) return;
        // Enumerate subsets of the free positions, ends fixed as required.
        bits::Word fixed = bits::Word{1} << k;
        if (require_unit_constant) fixed |= 1;
        const bits::Word vary = free & ~fixed;
        bits::Word sub = 0;
        for (;;) {
            const bits::Word g1 = fixed | sub;
            if (bits::popcount(g1) >= 2 && bits::divides(g1, h1)) valid_.push_back(g1);
            if (sub == vary) break;
            sub = (sub - vary) & vary;
        }
    }

    bool packed() const noexcept { return packed_; }
    bool empty() const noexcept { return packed_ && valid_.empty(); }

    /// Some admissible level-1 support agrees with `prefix` on bits [0, len).
    bool prefix_ok(bits::Word prefix, std::size_t len) const {
        if (!packed_) return true;
        const bits::Word m = bits::low_mask(static_cast<unsigned>(len));
        return std::any_of(valid_.begin(), valid_.end(), [&](bits::Word w) { return (w & m) == prefix; });
    }

    /// Full check on a complete candidate g (digits 0..k).
    bool admits(std::span<const Digit> g) const {
        Digit gmax = *std::max_element(g.begin(), g.end());
        if (gmax < top_level_) return false;
        if (!packed_) return true;
        for (unsigned i = 2; i <= top_level_; ++i)
            if (!bits::divides(level_word(g, i), levels_[i])) return false;
        return true;
    }

private:
    bool packed_;
    unsigned top_level_;
    std::vector<bits::Word> levels_;
    std::vector<bits::Word> valid_;
};

/**
 * Depth-first enumeration of digit vectors g_0..g_k in lexicographic order.
 * Position 0 ranges over 1..b-1 when `unit_constant`, position k over 1..b-1.
 * The visitor returns true to stop.
 */
inline bool for_each_divisor_candidate(const MaxMinPoly& h, std::size_t k, bool unit_constant,
                                       const std::function<bool(std::span<const Digit>)>& visit) {
    DivisorFilter filter(h, k, unit_constant);
    if (filter.empty()) return false;
    const unsigned top = h.base().top();
    std::vector<Digit> g(k + 1, 0);
    std::function<bool(std::size_t, bits::Word)> rec = [&](std::size_t pos, bits::Word prefix) -> bool {
        if (pos > k) {
            if (!filter.admits(g)) return false;
            return visit(g);
        }
        unsigned lo = (pos == k || (pos == 0 && unit_constant)) ? 1u : 0u;
        for (unsigned d = lo; d <= top; ++d) {
            g[pos] = static_cast<Digit>(d);
            bits::Word next = prefix;
            if (d != 0 && pos < 64) next |= bits::Word{1} << pos;
            // All nonzero digits share the same level-1 bit.
            if (!filter.prefix_ok(next, pos + 1)) {
                if (d == 0) continue;
                break;
            }
            if (rec(pos + 1, next)) return true;
        }
        g[pos] = 0;
        return false;
    };
    return rec(0, 0);
}

inline FactorWitness order_witness(MaxMinPoly g, MaxMinPoly f) {
    if (degree_lex_less(f, g)) std::swap(g, f);
    return FactorWitness{std::move(g), std::move(f)};
}

inline std::optional<FactorWitness> find_witness_generic(const MaxMinPoly& h) {
    const std::size_t D = degree(h);
    std::optional<FactorWitness> found;
    for (std::size_t k = 1; k <= D / 2 && !found; ++k) {
        for_each_divisor_candidate(h, k, true, [&](std::span<const Digit> gd) {
            auto g = MaxMinPoly::from_digits(h.base(), std::vector<Digit>(gd.begin(), gd.end()));
            if (is_monomial(g)) return false;
            auto q = residual_quotient(h, g);
            if (q.size() != D - k + 1 || is_monomial(q) || mul(q, g) != h) return false;
            found = order_witness(std::move(g), std::move(q));
            return true;
        });
    }
    return found;
}

}  // namespace detail

/// First witness in (degree, lexicographic) order, or nothing when h has none.
inline std::optional<FactorWitness> find_witness(const MaxMinPoly& h) {
    if (h.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
    if (nnz(h) < 3) return std::nullopt;
    if (h.base().value() == 2 && h.size() <= 64) {
        auto split = bits::find_split(bits::to_word(h));
        if (!split) return std::nullopt;
        return FactorWitness{bits::from_word(split->g), bits::from_word(split->f)};
    }
    return detail::find_witness_generic(h);
}

inline Classification classify_irreducible(const MaxMinPoly& h) {
    if (h.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot classify the zero polynomial");
    if (is_monomial(h)) return {ClassKind::Monomial, std::nullopt};
    auto w = find_witness(h);
    if (!w) return {ClassKind::Irreducible, std::nullopt};
    return {ClassKind::Reducible, std::move(w)};
}

/// Classification computed without the packed boolean shortcut (used to cross-check it).
inline Classification classify_irreducible_generic(const MaxMinPoly& h) {
    if (h.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot classify the zero polynomial");
    if (is_monomial(h)) return {ClassKind::Monomial, std::nullopt};
    if (nnz(h) < 3) return {ClassKind::Irreducible, std::nullopt};
    auto w = detail::find_witness_generic(h);
    if (!w) return {ClassKind::Irreducible, std::nullopt};
    return {ClassKind::Reducible, std::move(w)};
}

/**
 * Prime iff every factorization has a factor equal to the constant b-1.
 *
 * Non-candidates are reported with their disqualifying reason. For a
 * candidate the nonzero constant term rules out x^j factors and the maximum
 * coefficient b-1 rules out constants c < b-1, so a candidate is prime
 * exactly when it is irreducible. The constant b-1 itself is the unit.
 */
inline PrimeStatus classify_prime(const MaxMinPoly& h) {
    if (h.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot classify the zero polynomial");
    if (auto r = candidate_failure(h); r != NotCandidateReason::None) return {PrimeKind::NotCandidate, r, std::nullopt};
    auto c = classify_irreducible(h);
    switch (c.kind) {
        case ClassKind::Monomial: return {PrimeKind::Unit, NotCandidateReason::None, std::nullopt};
        case ClassKind::Irreducible: return {PrimeKind::Prime, NotCandidateReason::None, std::nullopt};
        case ClassKind::Reducible: break;
    }
    return {PrimeKind::CompositeCandidate, NotCandidateReason::None, std::move(c.witness)};
}

/**
 * Every factorization h = g * f into two non-monomials, listed once per
 * unordered pair with deg g <= deg f (lexicographic tie-break), ordered by
 * g in (degree, lexicographic) order and then f lexicographically.
 * Stops after `max_results` entries.
 */
inline std::vector<FactorWitness> all_factorizations(const MaxMinPoly& h, std::size_t max_results = SIZE_MAX) {
    if (h.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
    std::vector<FactorWitness> out;
    if (nnz(h) < 3 || max_results == 0) return out;
    const std::size_t D = degree(h);
    const Base b = h.base();
    for (std::size_t k = 1; k <= D / 2; ++k) {
        const std::size_t fdeg = D - k;
        bool done = detail::for_each_divisor_candidate(h, k, false, [&](std::span<const Digit> gd) {
            auto g = MaxMinPoly::from_digits(b, std::vector<Digit>(gd.begin(), gd.end()));
            if (is_monomial(g)) return false;
            auto q = residual_quotient(h, g);
            if (q.size() != fdeg + 1 || mul(q, g) != h) return false;
            // Every cofactor lies pointwise below q; walk them in lexicographic order.
            std::vector<std::size_t> free;
            for (std::size_t i = 0; i <= fdeg; ++i)
                if (q[i] != 0) free.push_back(i);
            std::vector<Digit> f(fdeg + 1, 0);
            for (;;) {
                if (f[fdeg] != 0) {
                    auto fp = MaxMinPoly::from_digits(b, f);
                    if (!is_monomial(fp) && !(k == fdeg && lex_less(fp, g)) && mul(fp, g) == h) {
                        out.push_back(FactorWitness{g, std::move(fp)});
                        if (out.size() >= max_results) return true;
                    }
                }
                std::size_t t = free.size();
                while (t > 0 && f[free[t - 1]] == q[free[t - 1]]) {
                    f[free[t - 1]] = 0;
                    --t;
                }
                if (t == 0) break;
                ++f[free[t - 1]];
            }
            return false;
        });
        if (done) break;
    }
    return out;
}

}  // namespace maxmin
