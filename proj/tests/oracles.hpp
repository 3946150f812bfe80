#pragma once

// Brute-force reference implementations. Nothing here calls into the maxmin
// library: polynomials are plain little-endian int vectors, canonical when the
// last entry is nonzero.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Vec = std::vector<int>;

inline Vec trim(Vec v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

inline Vec mul(const Vec& a, const Vec& b) {
    if (a.empty() || b.empty()) return {};
    Vec out(a.size() + b.size() - 1, 0);
    for (std::size_t n = 0; n < out.size(); ++n)
        for (std::size_t k = 0; k <= n; ++k)
            if (k < a.size() && n - k < b.size()) out[n] = std::max(out[n], std::min(a[k], b[n - k]));
    return trim(out);
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::max(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    return trim(out);
}

inline int nonzeros(const Vec& a) {
    return static_cast<int>(std::count_if(a.begin(), a.end(), [](int c) { return c != 0; }));
}

inline bool is_monomial(const Vec& a) { return nonzeros(a) == 1; }

/// All canonical nonzero polynomials of exact degree d over B_b.
inline std::vector<Vec> polys_of_degree(int b, int d) {
    std::vector<Vec> out;
    Vec v(d + 1, 0);
    for (;;) {
        if (v[d] != 0) out.push_back(v);
        int i = 0;
        while (i <= d && ++v[i] == b) v[i++] = 0;
        if (i > d) break;
    }
    return out;
}

/// Every product of two polynomials whose degrees sum to at most D.
struct ProductTable {
    int b;
    int D;
    std::set<Vec> reducible;  // some product of two non-monomials
    std::set<Vec> composite;  // some product with neither factor the constant b-1

    ProductTable(int b_, int D_) : b(b_), D(D_) {
        std::vector<std::vector<Vec>> by_deg;
        for (int d = 0; d <= D; ++d) by_deg.push_back(polys_of_degree(b, d));
        const Vec unit{b - 1};
        for (int df = 0; df <= D; ++df)
            for (int dg = 0; df + dg <= D; ++dg)
                for (const auto& f : by_deg[df])
                    for (const auto& g : by_deg[dg]) {
                        Vec p = mul(f, g);
                        if (!is_monomial(f) && !is_monomial(g)) reducible.insert(p);
                        if (f != unit && g != unit) composite.insert(p);
                    }
    }

    std::string classify(const Vec& h) const {
        if (is_monomial(h)) return "Monomial";
        return reducible.count(h) ? "Reducible" : "Irreducible";
    }

    bool candidate(const Vec& h) const {
        return !h.empty() && h[0] != 0 && *std::max_element(h.begin(), h.end()) == b - 1;
    }

    /// Prime per definition: a non-unit candidate whose every factorization uses the constant b-1.
    bool prime(const Vec& h) const { return candidate(h) && h != Vec{b - 1} && !composite.count(h); }
};

/// Binary prime count of exact length n by sieving all products of non-units.
inline std::uint64_t binary_prime_sieve(int n) {
    const int D = n - 1;
    auto bmul = [](std::uint64_t f, std::uint64_t g) {
        std::uint64_t out = 0;
        for (int j = 0; j < 64; ++j)
            if ((g >> j) & 1) out |= f << j;
        return out;
    };
    std::vector<char> composite(std::size_t{1} << n, 0);
    for (int df = 0; df <= D; ++df) {
        const int dg = D - df;
        for (std::uint64_t f = std::uint64_t{1} << df; f < (std::uint64_t{2} << df); ++f)
            for (std::uint64_t g = std::uint64_t{1} << dg; g < (std::uint64_t{2} << dg); ++g)
                if (f != 1 && g != 1) composite[bmul(f, g)] = 1;
    }
    std::uint64_t primes = 0;
    for (std::uint64_t h = std::uint64_t{1} << D; h < (std::uint64_t{2} << D); ++h)
        if ((h & 1) && h != 1 && !composite[h]) ++primes;
    return primes;
}

inline std::uint64_t count_naive(const std::vector<int>& s, std::size_t valid_to, const std::vector<int>& pat) {
    std::uint64_t c = 0;
    for (std::size_t p = 0; p + pat.size() <= valid_to; ++p) {
        bool eq = true;
        for (std::size_t j = 0; j < pat.size(); ++j) eq = eq && s[p + j] == pat[j];
        c += eq;
    }
    return c;
}

/// Boolean pairs (f, g): f_0 = 1, deg f = k, deg g = n - k, |fg| <= |f| + |g| + d.
inline std::uint64_t close_pairs_naive(int n, int k, int d) {
    std::uint64_t count = 0;
    for (const auto& f : polys_of_degree(2, k)) {
        if (f[0] == 0) continue;
        for (const auto& g : polys_of_degree(2, n - k))
            if (nonzeros(mul(f, g)) <= nonzeros(f) + nonzeros(g) + d) ++count;
    }
    return count;
}

}  // namespace oracle
