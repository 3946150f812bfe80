#pragma once

/**
 * @file natset.hpp
 * @brief Finite sets of naturals and their indicator polynomials over B_2.
 *
 * Under union and set addition, finite sets of naturals form a semiring
 * isomorphic to B_2[x]: A + B corresponds to the product of indicators.
 */

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "maxmin/poly.hpp"

namespace maxmin {

class NatSet {
public:
    NatSet() = default;

    /// Sorts and removes duplicates.
    explicit NatSet(std::vector<std::uint64_t> elements) : elems_(std::move(elements)) {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    NatSet(std::initializer_list<std::uint64_t> elements) : NatSet(std::vector<std::uint64_t>(elements)) {}

    const std::vector<std::uint64_t>& elements() const noexcept { return elems_; }
    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }

    bool operator==(const NatSet&) const = default;

private:
    std::vector<std::uint64_t> elems_;
};

inline MaxMinPoly from_set(const NatSet& s) {
    if (s.empty()) return MaxMinPoly(Base(2));
    std::vector<Digit> d(s.elements().back() + 1, 0);
    for (auto e : s.elements()) d[e] = 1;
    return MaxMinPoly::from_digits(Base(2), std::move(d));
}

inline NatSet to_set(const MaxMinPoly& f) {
    require_same_base(f.base(), Base(2), "to_set");
    std::vector<std::uint64_t> out;
    for (std::size_t k = 0; k < f.size(); ++k)
        if (f[k]) out.push_back(k);
    return NatSet(std::move(out));
}

inline NatSet sumset(const NatSet& a, const NatSet& b) {
    std::vector<std::uint64_t> out;
    out.reserve(a.size() * b.size());
    for (auto x : a.elements())
        for (auto y : b.elements()) out.push_back(x + y);
    return NatSet(std::move(out));
}

}  // namespace maxmin
