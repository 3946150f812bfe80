#pragma once

/**
 * @file series.hpp
 * @brief Finite-truncation diagnostics for power series over B_b.
 *
 * A DigitStream holds the first N coefficients of a series; `valid_to`
 * marks how many leading digits are exact. Coefficient n of a product
 * depends only on input indices <= n, so a product of streams truncated at N
 * is exact on [0, N). Every scan reads only complete windows inside
 * [0, valid_to). Occurrences are counted with overlapping sliding windows.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "maxmin/poly.hpp"

namespace maxmin {

class DigitStream {
public:
    DigitStream(Base base, std::vector<Digit> digits, std::optional<std::size_t> valid_to = std::nullopt)
        : base_(base), digits_(std::move(digits)), valid_to_(valid_to.value_or(digits_.size())) {
        for (std::size_t k = 0; k < digits_.size(); ++k)
            if (digits_[k] >= base.value())
                fail(ErrorCode::DigitOutOfRange, "stream digit " + std::to_string(k) + " exceeds base");
        if (valid_to_ > digits_.size()) fail(ErrorCode::InvalidArgument, "valid_to exceeds stream length");
    }

    /// First N coefficients of a polynomial; all of them exact.
    static DigitStream from_poly(const MaxMinPoly& f, std::size_t N) {
        std::vector<Digit> d(N, 0);
        for (std::size_t k = 0; k < std::min(N, f.size()); ++k) d[k] = f[k];
        return DigitStream(f.base(), std::move(d));
    }

    Base base() const noexcept { return base_; }
    std::span<const Digit> digits() const noexcept { return digits_; }
    std::size_t size() const noexcept { return digits_.size(); }
    std::size_t valid_to() const noexcept { return valid_to_; }
    Digit operator[](std::size_t k) const noexcept { return digits_[k]; }

    /// Digits [0, valid_to).
    std::span<const Digit> valid() const noexcept { return std::span<const Digit>(digits_).first(valid_to_); }

    /// Boolean stream of digits >= i.
    DigitStream support(unsigned i) const {
        if (i < 1 || i > base_.value() - 1) fail(ErrorCode::LevelOutOfRange, "support level outside [1, b-1]");
        std::vector<Digit> d(digits_.size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = digits_[k] >= i;
        return DigitStream(Base(2), std::move(d), valid_to_);
    }

    bool operator==(const DigitStream&) const = default;

private:
    Base base_;
    std::vector<Digit> digits_;
    std::size_t valid_to_;
};

/// Stream times finite polynomial; exact wherever the stream is.
inline DigitStream product_stream(const DigitStream& f, const MaxMinPoly& g) {
    require_same_base(f.base(), g.base(), "product_stream");
    const std::size_t N = f.size();
    std::vector<Digit> out(N, 0);
    auto a = f.digits();
    for (std::size_t j = 0; j < g.size(); ++j) {
        const Digit gj = g[j];
        if (!gj) continue;
        for (std::size_t i = 0; i + j < N; ++i) {
            Digit m = std::min(a[i], gj);
            if (m > out[i + j]) out[i + j] = m;
        }
    }
    return DigitStream(f.base(), std::move(out), f.valid_to());
}

/// Stream times stream, truncated to the shorter; exact up to the smaller valid_to.
inline DigitStream product_stream(const DigitStream& f, const DigitStream& g) {
    require_same_base(f.base(), g.base(), "product_stream");
    const std::size_t N = std::min(f.size(), g.size());
    std::vector<Digit> out(N, 0);
    for (std::size_t j = 0; j < N; ++j) {
        const Digit gj = g[j];
        if (!gj) continue;
        for (std::size_t i = 0; i + j < N; ++i) {
            Digit m = std::min(f[i], gj);
            if (m > out[i + j]) out[i + j] = m;
        }
    }
    return DigitStream(f.base(), std::move(out), std::min(f.valid_to(), g.valid_to()));
}

/// Overlapping occurrences of `pattern` inside the valid window (Knuth-Morris-Pratt).
inline std::uint64_t count_occurrences(const DigitStream& s, std::span<const Digit> pattern) {
    if (pattern.empty()) fail(ErrorCode::InvalidArgument, "empty pattern");
    if (pattern.size() > s.valid_to()) fail(ErrorCode::WindowTooShort, "pattern longer than the valid window");
    const std::size_t m = pattern.size();
    std::vector<std::size_t> fail_link(m, 0);
    for (std::size_t i = 1, k = 0; i < m; ++i) {
        while (k > 0 && pattern[i] != pattern[k]) k = fail_link[k - 1];
        if (pattern[i] == pattern[k]) ++k;
        fail_link[i] = k;
    }
    std::uint64_t count = 0;
    std::size_t k = 0;
    for (Digit c : s.valid()) {
        while (k > 0 && c != pattern[k]) k = fail_link[k - 1];
        if (c == pattern[k]) ++k;
        if (k == m) {
            ++count;
            k = fail_link[k - 1];
        }
    }
    return count;
}

/**
 * Window family Z for a support prefix p of length r: a length-r window w is
 * in Z iff w_j != 0 wherever p_j = 1. |Z| = (b-1)^k b^{r-k} with k = |p|.
 */
class ZWindowSet {
public:
    ZWindowSet(Base base, std::vector<bool> prefix) : base_(base), prefix_(std::move(prefix)) {
        if (prefix_.empty()) fail(ErrorCode::InvalidArgument, "window length r must be >= 1");
        k_ = static_cast<std::size_t>(std::count(prefix_.begin(), prefix_.end(), true));
    }

    Base base() const noexcept { return base_; }
    std::size_t r() const noexcept { return prefix_.size(); }
    std::size_t k() const noexcept { return k_; }
    const std::vector<bool>& prefix() const noexcept { return prefix_; }

    BigInt size() const {
        using boost::multiprecision::pow;
        return pow(BigInt(base_.value() - 1), static_cast<unsigned>(k_)) *
               pow(BigInt(base_.value()), static_cast<unsigned>(r() - k_));
    }

    /// |Z| b^{-r} = ((b-1)/b)^k.
    long double density() const {
        const long double b = base_.value();
        return std::pow((b - 1) / b, static_cast<long double>(k_));
    }

    bool contains(std::span<const Digit> window) const {
        if (window.size() != r()) return false;
        for (std::size_t j = 0; j < r(); ++j)
            if (prefix_[j] && window[j] == 0) return false;
        return true;
    }

private:
    Base base_;
    std::vector<bool> prefix_;
    std::size_t k_ = 0;
};

inline std::uint64_t count_set_occurrences(const DigitStream& s, const ZWindowSet& z) {
    require_same_base(s.base(), z.base(), "count_set_occurrences");
    if (z.r() > s.valid_to()) fail(ErrorCode::WindowTooShort, "window longer than the valid window");
    auto v = s.valid();
    std::uint64_t count = 0;
    for (std::size_t p = 0; p + z.r() <= v.size(); ++p) count += z.contains(v.subspan(p, z.r()));
    return count;
}

/// Explicit string set; all members must share one length.
inline std::uint64_t count_set_occurrences(const DigitStream& s, const std::vector<std::vector<Digit>>& strings) {
    if (strings.empty()) return 0;
    const std::size_t r = strings.front().size();
    if (r == 0) fail(ErrorCode::InvalidArgument, "empty string in set");
    std::unordered_set<std::string> keys;
    for (const auto& str : strings) {
        if (str.size() != r) fail(ErrorCode::InvalidArgument, "strings in a window set must share one length");
        keys.emplace(str.begin(), str.end());
    }
    if (r > s.valid_to()) fail(ErrorCode::WindowTooShort, "window longer than the valid window");
    auto v = s.valid();
    std::uint64_t count = 0;
    std::string window;
    for (std::size_t p = 0; p + r <= v.size(); ++p) {
        window.assign(v.begin() + static_cast<std::ptrdiff_t>(p), v.begin() + static_cast<std::ptrdiff_t>(p + r));
        count += keys.count(window);
    }
    return count;
}

// ---------------------------------------------------------------------------
// Products with a finite non-monomial factor never isolate a 1.

/// Occurrences of 0^{m+1} 1 0^{m+1} in a boolean stream.
inline std::uint64_t t1_forbidden_scan(const DigitStream& h1, std::size_t m) {
    require_same_base(h1.base(), Base(2), "t1_forbidden_scan");
    std::vector<Digit> pattern(2 * m + 3, 0);
    pattern[m + 1] = 1;
    if (pattern.size() > h1.valid_to()) fail(ErrorCode::WindowTooShort, "forbidden pattern longer than the valid window");
    return count_occurrences(h1, pattern);
}

/// Every 1 at index p <= valid_to - m - 1 has another 1 within distance m.
inline bool t1_isolation_check(const DigitStream& h1, std::size_t m) {
    require_same_base(h1.base(), Base(2), "t1_isolation_check");
    const std::size_t V = h1.valid_to();
    if (V < m + 1) return true;
    for (std::size_t p = 0; p + m + 1 <= V; ++p) {
        if (!h1[p]) continue;
        bool partner = false;
        const std::size_t lo = p >= m ? p - m : 0;
        for (std::size_t q = lo; q <= p + m && q < V && !partner; ++q) partner = q != p && h1[q];
        if (!partner) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Interval-cover bound for sparse factor pairs.

using HighFloat = boost::multiprecision::cpp_bin_float_50;

struct T2Bound {
    unsigned b;
    unsigned n;
    /// b^{-n} sum_{k <= n/5} (b-1)^k C(2n+2, k), exact.
    Rational lhs;
    /// n (1.94 (b-1)^{1/5} / b)^n.
    HighFloat rhs;
};

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt c = 1;
    for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

inline HighFloat t2_ratio_hp(Base b) {
    const HighFloat bb = b.value();
    return HighFloat("1.94") * boost::multiprecision::pow(bb - 1, HighFloat(1) / 5) / bb;
}

inline double t2_ratio(Base b) { return t2_ratio_hp(b).convert_to<double>(); }

inline T2Bound t2_measure_bound(Base base, unsigned n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
    const BigInt b = base.value();
    BigInt sum = 0;
    BigInt pw = 1;
    for (unsigned k = 0; 5 * k <= n; ++k) {
        sum += pw * binomial(2 * n + 2, k);
        pw *= b - 1;
    }
    Rational lhs(sum, boost::multiprecision::pow(b, n));
    HighFloat rhs = HighFloat(n) * boost::multiprecision::pow(t2_ratio_hp(base), n);
    return {base.value(), n, lhs, rhs};
}

/// lhs <= rhs, with lhs rounded up and rhs rounded down by a relative 1e-40 before comparing.
inline bool t2_chain_check(Base b, unsigned n) {
    auto t = t2_measure_bound(b, n);
    HighFloat lhs = HighFloat(numerator(t.lhs)) / HighFloat(denominator(t.lhs));
    const HighFloat eps("1e-40");
    return lhs * (1 + eps) <= t.rhs * (1 - eps);
}

/// Partial sums S_1..S_N of sum_n n r^n with r = 1.94 (b-1)^{1/5} / b.
inline std::vector<long double> t2_partial_sums(Base b, unsigned N) {
    const long double r = t2_ratio(b);
    std::vector<long double> out;
    out.reserve(N);
    long double s = 0;
    long double pw = 1;
    for (unsigned n = 1; n <= N; ++n) {
        pw *= r;
        s += n * pw;
        out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dense factors force a window family to appear too often.

/// Smallest k >= 1 with ((b-1)/b)^k < 1/10, decided in exact integers.
inline unsigned choose_k(Base base) {
    const BigInt b = base.value();
    BigInt lhs = 10;
    BigInt rhs = 1;
    for (unsigned k = 1;; ++k) {
        lhs *= b - 1;
        rhs *= b;
        if (lhs < rhs) return k;
    }
}

/// Smallest r such that digits 0..r-1 contain exactly k nonzero entries.
inline std::size_t choose_r(std::span<const Digit> g, std::size_t k) {
    if (k == 0) fail(ErrorCode::InvalidArgument, "k must be >= 1");
    std::size_t seen = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (g[j] != 0 && ++seen == k) return j + 1;
    }
    fail(ErrorCode::InsufficientSupport,
         "support has " + std::to_string(seen) + " nonzero digits, need " + std::to_string(k));
}

inline std::size_t choose_r(const MaxMinPoly& g, std::size_t k) { return choose_r(g.coeffs(), k); }
inline std::size_t choose_r(const DigitStream& g, std::size_t k) { return choose_r(g.valid(), k); }

/// Z built from the support of g(r-1).
inline ZWindowSet z_set(Base b, std::span<const Digit> g, std::size_t r) {
    std::vector<bool> prefix(r, false);
    for (std::size_t j = 0; j < r && j < g.size(); ++j) prefix[j] = g[j] != 0;
    return ZWindowSet(b, std::move(prefix));
}

inline ZWindowSet z_set(const MaxMinPoly& g, std::size_t r) { return z_set(g.base(), g.coeffs(), r); }
inline ZWindowSet z_set(const DigitStream& g, std::size_t r) {
    if (r > g.valid_to()) fail(ErrorCode::WindowTooShort, "r exceeds the valid part of g");
    return z_set(g.base(), g.valid(), r);
}

namespace detail {

inline bool windows_in_z(const DigitStream& f, const DigitStream& h, const ZWindowSet& z) {
    const std::size_t r = z.r();
    if (r > h.valid_to()) fail(ErrorCode::WindowTooShort, "window longer than the valid product");
    auto v = h.valid();
    for (std::size_t s = 0; s + r <= v.size(); ++s)
        if (f[s] != 0 && !z.contains(v.subspan(s, r))) return false;
    return true;
}

}  // namespace detail

/// For every s with f_s >= 1 whose window fits, digits s..s+r-1 of f*g lie in Z.
inline bool t3_window_invariant(const DigitStream& f, const MaxMinPoly& g, const ZWindowSet& z) {
    return detail::windows_in_z(f, product_stream(f, g), z);
}

inline bool t3_window_invariant(const DigitStream& f, const DigitStream& g, const ZWindowSet& z) {
    return detail::windows_in_z(f, product_stream(f, g), z);
}

struct ZFrequency {
    std::uint64_t windows = 0;
    std::uint64_t count = 0;
    /// count / windows: fraction of complete windows that fall in Z.
    long double empirical = 0;
    /// |Z| b^{-r}, the frequency a normal sequence would show.
    long double normal_expectation = 0;
};

inline ZFrequency z_frequency_report(const DigitStream& h, const ZWindowSet& z) {
    ZFrequency out;
    out.count = count_set_occurrences(h, z);
    out.windows = h.valid_to() - z.r() + 1;
    out.empirical = static_cast<long double>(out.count) / out.windows;
    out.normal_expectation = z.density();
    return out;
}

inline ZFrequency z_frequency_report(const DigitStream& h, const std::vector<std::vector<Digit>>& strings) {
    if (strings.empty()) fail(ErrorCode::InvalidArgument, "explicit window set is empty");
    ZFrequency out;
    out.count = count_set_occurrences(h, strings);
    const std::size_t r = strings.front().size();
    out.windows = h.valid_to() - r + 1;
    out.empirical = static_cast<long double>(out.count) / out.windows;
    std::unordered_set<std::string> distinct;
    for (const auto& s : strings) distinct.emplace(s.begin(), s.end());
    out.normal_expectation = distinct.size() * std::pow(static_cast<long double>(h.base().value()), -static_cast<long double>(r));
    return out;
}

// ---------------------------------------------------------------------------
// Stream file format: "b N" on the first line, then N digits.

inline DigitStream read_stream(std::istream& in) {
    unsigned b = 0;
    std::size_t N = 0;
    if (!(in >> b >> N)) fail(ErrorCode::ParseError, "stream header must be 'b N'");
    if (b < 2 || b > 256) fail(ErrorCode::InvalidBase, "base must lie in [2, 256]");
    std::vector<Digit> d;
    d.reserve(N);
    for (std::size_t k = 0; k < N; ++k) {
        unsigned x = 0;
        if (!(in >> x)) fail(ErrorCode::ParseError, "stream ended after " + std::to_string(k) + " of " + std::to_string(N) + " digits");
        if (x >= b) fail(ErrorCode::DigitOutOfRange, "stream digit " + std::to_string(k) + " exceeds base");
        d.push_back(static_cast<Digit>(x));
    }
    return DigitStream(Base(b), std::move(d));
}

inline void write_stream(std::ostream& out, const DigitStream& s) {
    out << s.base().value() << ' ' << s.valid_to() << '\n';
    auto v = s.valid();
    for (std::size_t k = 0; k < v.size(); ++k) out << (k ? " " : "") << unsigned{v[k]};
    out << '\n';
}

}  // namespace maxmin
