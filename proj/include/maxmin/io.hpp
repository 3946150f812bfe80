#pragma once

/**
 * @file io.hpp
 * @brief Text and JSON forms of polynomials and sets.
 *
 * Canonical text form is "b:c0,c1,...,ck" with little-endian digits, so
 * "2:0,1,1,0,1" is x + x^2 + x^4. The zero polynomial is "b:". Trailing zero
 * digits are rejected unless the parser is lenient.
 */

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "maxmin/natset.hpp"
#include "maxmin/poly.hpp"

namespace maxmin {

namespace detail {

inline std::uint64_t parse_uint(std::string_view s, std::string_view what) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        fail(ErrorCode::ParseError, "malformed " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::uint64_t> parse_list(std::string_view s, std::string_view what) {
    std::vector<std::uint64_t> out;
    if (s.find_first_not_of(' ') == std::string_view::npos) return out;
    std::size_t pos = 0;
    for (;;) {
        auto comma = s.find(',', pos);
        out.push_back(parse_uint(s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos), what));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace detail

inline MaxMinPoly parse_poly(std::string_view text, bool lenient = false) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) fail(ErrorCode::ParseError, "expected 'b:c0,c1,...', got '" + std::string(text) + "'");
    auto b = detail::parse_uint(text.substr(0, colon), "base");
    if (b < 2 || b > 256) fail(ErrorCode::InvalidBase, "base must lie in [2, 256]");
    auto raw = detail::parse_list(text.substr(colon + 1), "digit");
    if (!lenient && !raw.empty() && raw.back() == 0)
        fail(ErrorCode::ParseError, "non-canonical trailing zero in '" + std::string(text) + "'");
    return MaxMinPoly(Base(static_cast<unsigned>(b)), std::span<const std::uint64_t>(raw));
}

inline std::string format_poly(const MaxMinPoly& f) {
    std::string out = std::to_string(f.base().value()) + ":";
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(unsigned{f[k]});
    }
    return out;
}

/// Human-readable form such as "1 + 2x + x^3".
inline std::string pretty_poly(const MaxMinPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (!f[k]) continue;
        if (!out.empty()) out += " + ";
        bool show_coeff = k == 0 || f[k] != 1;
        if (show_coeff) out += std::to_string(unsigned{f[k]});
        if (k >= 1) out += "x";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

inline nlohmann::json to_json(const MaxMinPoly& f) {
    std::vector<unsigned> c(f.coeffs().begin(), f.coeffs().end());
    return {{"base", f.base().value()}, {"coeffs", c}};
}

inline MaxMinPoly poly_from_json(const nlohmann::json& j, bool lenient = false) {
    if (!j.is_object() || !j.contains("base") || !j.contains("coeffs"))
        fail(ErrorCode::ParseError, "expected {\"base\": b, \"coeffs\": [...]}");
    auto b = j.at("base").get<unsigned>();
    if (b < 2 || b > 256) fail(ErrorCode::InvalidBase, "base must lie in [2, 256]");
    auto c = j.at("coeffs").get<std::vector<long long>>();
    if (!lenient && !c.empty() && c.back() == 0) fail(ErrorCode::ParseError, "non-canonical trailing zero");
    return MaxMinPoly(Base(b), std::span<const long long>(c));
}

inline NatSet parse_set(std::string_view text) { return NatSet(detail::parse_list(text, "set element")); }

inline std::string format_set(const NatSet& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s.elements()[i]);
    }
    return out;
}

}  // namespace maxmin
