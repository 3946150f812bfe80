#pragma once

/**
 * @file census.hpp
 * @brief Exhaustive counts over coefficient vectors of length n.
 *
 * Two enumeration spaces are exposed:
 *  - all-vectors: every sequence c_0..c_{n-1} in B_b^n (degree <= n-1);
 *  - exact-degree: sequences with c_{n-1} != 0 (degree exactly n-1).
 * Vectors are indexed in lexicographic order with c_0 most significant, so a
 * contiguous index range is a lexicographic range. Ranges are classified
 * independently and merged by addition, which makes results independent of
 * sharding and thread count.
 */

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "maxmin/bitpoly.hpp"
#include "maxmin/digit_map.hpp"
#include "maxmin/factor.hpp"
#include "maxmin/poly.hpp"

namespace maxmin {

enum class Space { AllVectors, ExactDegree };

constexpr std::string_view to_string(Space s) noexcept {
    return s == Space::AllVectors ? "all-vectors" : "exact-degree";
}

inline Space parse_space(std::string_view s) {
    if (s == "all-vectors") return Space::AllVectors;
    if (s == "exact-degree") return Space::ExactDegree;
    fail(ErrorCode::ParseError, "unknown space '" + std::string(s) + "' (all-vectors | exact-degree)");
}

inline constexpr std::uint64_t kDefaultBudget = 200'000'000;

/// Enumeration budget: MINMAX_BUDGET when set, otherwise the default.
inline std::uint64_t budget_from_env() {
    if (const char* env = std::getenv("MINMAX_BUDGET")) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultBudget;
}

inline void check_budget(const BigInt& work, std::uint64_t budget, bool force, std::string_view what) {
    if (force) {
        if (work > BigInt(std::numeric_limits<std::int64_t>::max()))
            fail(ErrorCode::BudgetExceeded, std::string(what) + ": workload does not fit a 64-bit index");
        return;
    }
    if (work > BigInt(budget)) {
        std::ostringstream os;
        os << what << ": " << work << " items exceed the budget of " << budget;
        fail(ErrorCode::BudgetExceeded, os.str());
    }
}

inline BigInt space_size(Base b, unsigned n) { return boost::multiprecision::pow(BigInt(b.value()), n); }

inline void decode_index(std::uint64_t index, unsigned b, std::span<Digit> out) {
    for (std::size_t k = out.size(); k-- > 0;) {
        out[k] = static_cast<Digit>(index % b);
        index /= b;
    }
}

/// Visits every vector with index in [start, end), zero included, in lexicographic order.
template <class Visit>
void enumerate_range(Base b, unsigned n, Space space, std::uint64_t start, std::uint64_t end, Visit&& visit) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "length n must be >= 1");
    std::vector<Digit> d(n);
    decode_index(start, b.value(), d);
    const Digit top = b.top();
    for (std::uint64_t idx = start; idx < end; ++idx) {
        if (space == Space::AllVectors || d[n - 1] != 0) visit(MaxMinPoly::from_digits(b, d));
        for (std::size_t k = n; k-- > 0;) {
            if (d[k] < top) {
                ++d[k];
                break;
            }
            d[k] = 0;
        }
    }
}

/// Visits the whole space: b^n vectors (all-vectors) or (b-1) b^{n-1} (exact-degree).
template <class Visit>
void enumerate(Base b, unsigned n, Space space, Visit&& visit) {
    check_budget(space_size(b, n), budget_from_env(), false, "enumerate");
    enumerate_range(b, n, space, 0, space_size(b, n).convert_to<std::uint64_t>(), std::forward<Visit>(visit));
}

struct CensusRecord {
    unsigned b = 2;
    unsigned n = 1;
    Space space = Space::AllVectors;
    std::uint64_t total = 0;
    std::uint64_t monomials = 0;
    std::uint64_t irreducible = 0;
    std::uint64_t reducible = 0;
    std::uint64_t prime_candidates = 0;
    std::uint64_t primes = 0;

    CensusRecord& operator+=(const CensusRecord& o) {
        if (o.b != b || o.n != n || o.space != space)
            fail(ErrorCode::InvalidArgument, "cannot merge census records of different (b, n, space)");
        total += o.total;
        monomials += o.monomials;
        irreducible += o.irreducible;
        reducible += o.reducible;
        prime_candidates += o.prime_candidates;
        primes += o.primes;
        return *this;
    }

    double irreducible_fraction() const { return total ? static_cast<double>(irreducible) / total : 0.0; }

    bool operator==(const CensusRecord&) const = default;
};

inline nlohmann::json to_json(const CensusRecord& r) {
    return {{"b", r.b},
            {"n", r.n},
            {"space", std::string(to_string(r.space))},
            {"total", r.total},
            {"monomials", r.monomials},
            {"irreducible", r.irreducible},
            {"reducible", r.reducible},
            {"prime_candidates", r.prime_candidates},
            {"primes", r.primes}};
}

inline CensusRecord census_record_from_json(const nlohmann::json& j) {
    CensusRecord r;
    r.b = j.at("b").get<unsigned>();
    r.n = j.at("n").get<unsigned>();
    r.space = parse_space(j.at("space").get<std::string>());
    r.total = j.at("total").get<std::uint64_t>();
    r.monomials = j.at("monomials").get<std::uint64_t>();
    r.irreducible = j.at("irreducible").get<std::uint64_t>();
    r.reducible = j.at("reducible").get<std::uint64_t>();
    r.prime_candidates = j.at("prime_candidates").get<std::uint64_t>();
    r.primes = j.at("primes").get<std::uint64_t>();
    return r;
}

inline std::string census_csv_header() { return "b,n,space,total,monomials,irreducible,reducible,prime_candidates,primes"; }

inline std::string to_csv(const CensusRecord& r) {
    std::ostringstream os;
    os << r.b << ',' << r.n << ',' << to_string(r.space) << ',' << r.total << ',' << r.monomials << ','
       << r.irreducible << ',' << r.reducible << ',' << r.prime_candidates << ',' << r.primes;
    return os.str();
}

namespace detail {

inline void tally(CensusRecord& r, ClassKind kind, bool candidate) {
    ++r.total;
    switch (kind) {
        case ClassKind::Monomial: ++r.monomials; break;
        case ClassKind::Irreducible: ++r.irreducible; break;
        case ClassKind::Reducible: ++r.reducible; break;
    }
    if (candidate) {
        ++r.prime_candidates;
        if (kind == ClassKind::Irreducible) ++r.primes;
    }
}

/// Packed path for b = 2: index bits are the coefficients in reverse order.
inline CensusRecord census_range_binary(unsigned n, Space space, std::uint64_t start, std::uint64_t end) {
    CensusRecord r{2, n, space};
    for (std::uint64_t idx = start; idx < end; ++idx) {
        const bits::Word h = bits::reverse(idx, n);
        if (h == 0) continue;
        if (space == Space::ExactDegree && !(h >> (n - 1) & 1)) continue;
        ClassKind kind = bits::popcount(h) == 1 ? ClassKind::Monomial
                         : bits::find_split(h)  ? ClassKind::Reducible
                                                : ClassKind::Irreducible;
        tally(r, kind, h & 1);
    }
    return r;
}

}  // namespace detail

/// Classifies every nonzero vector with index in [start, end).
inline CensusRecord census_range(Base b, unsigned n, Space space, std::uint64_t start, std::uint64_t end) {
    if (b.value() == 2 && n <= 64) return detail::census_range_binary(n, space, start, end);
    CensusRecord r{b.value(), n, space};
    enumerate_range(b, n, space, start, end, [&](const MaxMinPoly& h) {
        if (h.is_zero()) return;
        detail::tally(r, classify_irreducible(h).kind, is_prime_candidate(h));
    });
    return r;
}

/// One lexicographic index range and its partial counts.
struct CensusShard {
    std::uint64_t range_start = 0;
    std::uint64_t range_end = 0;
    CensusRecord partial;
};

inline nlohmann::json to_json(const CensusShard& s) {
    return {{"range_start", s.range_start}, {"range_end", s.range_end}, {"partial", to_json(s.partial)}};
}

inline CensusShard census_shard_from_json(const nlohmann::json& j) {
    return {j.at("range_start").get<std::uint64_t>(), j.at("range_end").get<std::uint64_t>(),
            census_record_from_json(j.at("partial"))};
}

struct CensusOptions {
    unsigned threads = 1;
    unsigned shards = 64;
    std::uint64_t budget = kDefaultBudget;
    bool force = false;
    /// When set, completed shards are loaded from and saved to this JSON file.
    std::optional<std::filesystem::path> checkpoint;
};

namespace detail {

inline std::vector<CensusShard> load_checkpoint(const std::filesystem::path& path) {
    std::vector<CensusShard> out;
    if (!std::filesystem::exists(path)) return out;
    std::ifstream in(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, "checkpoint " + path.string() + ": " + e.what());
    }
    for (const auto& s : j) out.push_back(census_shard_from_json(s));
    return out;
}

inline void save_checkpoint(const std::filesystem::path& path, const std::vector<CensusShard>& shards) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : shards) j.push_back(to_json(s));
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump(1) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

/**
 * Full census of (b, n, space). The zero vector is excluded from the totals.
 * Shards already present in the checkpoint file (matching range and
 * parameters) are reused instead of recomputed.
 */
inline CensusRecord census(Base b, unsigned n, Space space, const CensusOptions& opt = {}) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "length n must be >= 1");
    const BigInt size = space_size(b, n);
    check_budget(size, opt.budget, opt.force, "census");
    const auto N = size.convert_to<std::uint64_t>();
    const std::uint64_t S = std::max<std::uint64_t>(1, std::min<std::uint64_t>(opt.shards, N));

    std::vector<CensusShard> shards(S);
    std::vector<char> done(S, 0);
    for (std::uint64_t i = 0; i < S; ++i) {
        shards[i].range_start = N / S * i + std::min(i, N % S);
        shards[i].range_end = shards[i].range_start + N / S + (i < N % S ? 1 : 0);
        shards[i].partial = CensusRecord{b.value(), n, space};
    }
    if (opt.checkpoint) {
        for (const auto& s : detail::load_checkpoint(*opt.checkpoint)) {
            for (std::uint64_t i = 0; i < S; ++i) {
                if (!done[i] && s.range_start == shards[i].range_start && s.range_end == shards[i].range_end &&
                    s.partial.b == b.value() && s.partial.n == n && s.partial.space == space) {
                    shards[i] = s;
                    done[i] = 1;
                }
            }
        }
    }

    std::atomic<std::uint64_t> next{0};
    std::mutex save_mutex;
    auto worker = [&] {
        for (;;) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= S) return;
            if (done[i]) continue;
            auto part = census_range(b, n, space, shards[i].range_start, shards[i].range_end);
            std::lock_guard lock(save_mutex);
            shards[i].partial = part;
            done[i] = 1;
            if (opt.checkpoint) {
                std::vector<CensusShard> finished;
                for (std::uint64_t t = 0; t < S; ++t)
                    if (done[t]) finished.push_back(shards[t]);
                detail::save_checkpoint(*opt.checkpoint, finished);
            }
        }
    };
    const unsigned T = std::max(1u, opt.threads);
    if (T == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < T; ++t) pool.emplace_back(worker);
    }

    CensusRecord total{b.value(), n, space};
    for (const auto& s : shards) total += s.partial;
    return total;
}

/// Exact number of exact-degree prime candidates of length n: (b-1)^2 b^{n-2} - (b-2)^2 (b-1)^{n-2}.
inline BigInt candidate_count_closed_form(Base base, unsigned n) {
    if (n < 2) fail(ErrorCode::InvalidArgument, "closed form needs n >= 2");
    const BigInt b = base.value();
    using boost::multiprecision::pow;
    return (b - 1) * (b - 1) * pow(b, n - 2) - (b - 2) * (b - 2) * pow(b - 1, n - 2);
}

/// Leading two terms of the known lower bound on pi_b(n): (b-1)^{n-2} + 2 (b-2)^{n-2}.
inline BigInt als_lower_bound(Base base, unsigned n) {
    if (n < 3) fail(ErrorCode::InvalidArgument, "lower bound needs n >= 3");
    const BigInt b = base.value();
    using boost::multiprecision::pow;
    return pow(b - 1, n - 2) + 2 * pow(b - 2, n - 2);
}

inline bool als_lower_bound_check(Base b, unsigned n, const CensusRecord& r) {
    if (r.b != b.value() || r.n != n) fail(ErrorCode::InvalidArgument, "census record does not match (b, n)");
    return BigInt(r.primes) >= als_lower_bound(b, n);
}

/// OEIS b-file lines "n value" (value = prime count), sorted by n.
inline std::string oeis_export(std::vector<CensusRecord> records) {
    if (records.empty()) return {};
    for (const auto& r : records)
        if (r.b != records.front().b) fail(ErrorCode::InvalidArgument, "b-file records must share one base");
    std::sort(records.begin(), records.end(), [](const auto& x, const auto& y) { return x.n < y.n; });
    std::ostringstream os;
    for (const auto& r : records) os << r.n << ' ' << r.primes << '\n';
    return os.str();
}

/// Parses "n value" lines; '#' comments and blank lines are skipped.
inline std::map<unsigned, BigInt> parse_bfile(std::istream& in) {
    std::map<unsigned, BigInt> out;
    std::string line;
    while (std::getline(in, line)) {
        auto p = line.find_first_not_of(" \t\r");
        if (p == std::string::npos || line[p] == '#') continue;
        std::istringstream ls(line);
        unsigned n = 0;
        std::string value;
        if (!(ls >> n >> value)) fail(ErrorCode::ParseError, "malformed b-file line '" + line + "'");
        out[n] = BigInt(value);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Partition of the reducible polynomials into E1..E7.

struct BoundParams {
    double d;
    double v;

    BoundParams(double d_, double v_) : d(d_), v(v_) {
        if (!(d > 0) || !(v > 0)) fail(ErrorCode::InvalidArgument, "bound parameters d, v must be positive");
    }

    /// a = floor(b / 2), the second support level used by the partition.
    static unsigned half_level(Base b) { return b.value() / 2; }
};

struct PartitionCensus {
    unsigned b;
    unsigned n;
    double d;
    double v;
    unsigned a;
    std::array<std::uint64_t, 7> sizes{};
    std::uint64_t sigma = 0;
    /// Reducible polynomials that matched no set (E7 catches all, so this stays 0).
    std::uint64_t misassigned = 0;
    /// Natural logs of the explicit bound on |E^i|; -inf encodes a zero bound.
    std::array<long double, 7> log_bounds{};

    std::uint64_t covered() const {
        std::uint64_t s = 0;
        for (auto x : sizes) s += x;
        return s;
    }

    /// |E^i| <= bound_i, decided conservatively: the bound is shrunk by a relative 1e-12 first.
    bool within_bound(unsigned i) const {
        const auto count = static_cast<long double>(sizes.at(i));
        if (std::isinf(log_bounds[i]) && log_bounds[i] < 0) return count == 0;
        if (count == 0) return true;
        return std::log(count) <= log_bounds[i] + std::log1p(-1e-12L);
    }
};

/// Explicit (pre-asymptotic) bounds on |E^1|..|E^7| as natural logs.
inline std::array<long double, 7> partition_log_bounds(Base base, unsigned n_, const BoundParams& p) {
    const long double b = base.value();
    const long double n = n_;
    const long double d = p.d;
    const long double v = p.v;
    const long double a = BoundParams::half_level(base);
    const long double ln2 = std::log(2.0L);
    std::array<long double, 7> L{};
    // E1, E3: 2 e^{-d^2/4n} b^n
    L[0] = L[2] = ln2 - d * d / (4 * n) + n * std::log(b);
    // E2, E4: n e^{-d^2/4(n+1)} b^{n+1}
    L[1] = L[3] = std::log(n) - d * d / (4 * (n + 1)) + (n + 1) * std::log(b);
    // E5: v n^{2d+1} 2^v
    L[4] = std::log(v) + (2 * d + 1) * std::log(n) + v * ln2;
    // E6: 2 n (n+1) (a-1)^v b^{n-v+1}; the factor 2 covers the |g_a| <= 1 half.
    L[5] = a > 1 ? ln2 + std::log(n) + std::log(n + 1) + v * std::log(a - 1) + (n - v + 1) * std::log(b)
                 : -std::numeric_limits<long double>::infinity();
    // E7: n^{2d+3} 2^{d/2 - n/3} b^n
    L[6] = (2 * d + 3) * std::log(n) + (d / 2 - n / 3) * ln2 + n * std::log(b);
    return L;
}

/**
 * Sorts every reducible h of length n (all-vectors space) into E^1..E^7 by
 * the first applicable condition. Conditions on factors hold when some
 * factorization from all_factorizations satisfies them; E^5 uses the
 * lower-degree factor.
 */
inline PartitionCensus partition_census(Base base, unsigned n, const BoundParams& p, std::uint64_t budget = kDefaultBudget,
                                        bool force = false) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "length n must be >= 1");
    const BigInt size = space_size(base, n);
    check_budget(size, budget, force, "partition");
    const unsigned a = std::max(1u, BoundParams::half_level(base));
    const double bb = base.value();
    const double half_d = p.d / 2;
    const double mean1 = (bb - 1) * n / bb;
    const double mean_a = (bb - a) * n / bb;
    const double mean1_pair = (bb - 1) * (n + 1) / bb;
    const double mean_a_pair = (bb - a) * (n + 1) / bb;

    PartitionCensus out{base.value(), n, p.d, p.v, a};
    out.log_bounds = partition_log_bounds(base, n, p);

    enumerate_range(base, n, Space::AllVectors, 0, size.convert_to<std::uint64_t>(), [&](const MaxMinPoly& h) {
        if (h.is_zero() || is_monomial(h)) return;
        auto witnesses = all_factorizations(h);
        if (witnesses.empty()) return;
        ++out.sigma;
        std::array<bool, 7> in{};
        in[0] = std::abs(static_cast<double>(support_size(h, 1)) - mean1) > half_d;
        in[2] = std::abs(static_cast<double>(support_size(h, a)) - mean_a) > half_d;
        for (const auto& w : witnesses) {
            const auto& f = w.g;
            const auto& g = w.h;
            double s1 = static_cast<double>(support_size(f, 1) + support_size(g, 1));
            double sa = static_cast<double>(support_size(f, a) + support_size(g, a));
            in[1] = in[1] || std::abs(s1 - mean1_pair) > half_d;
            in[3] = in[3] || std::abs(sa - mean_a_pair) > half_d;
            in[4] = in[4] || static_cast<double>(std::min(degree(f), degree(g))) <= p.v;
            in[5] = in[5] || support_size(f, a) <= 1 || support_size(g, a) <= 1;
        }
        in[6] = true;
        unsigned which = 0;
        while (!in[which]) ++which;
        if (which >= 7) {
            ++out.misassigned;
            return;
        }
        ++out.sizes[which];
    });
    return out;
}

// ---------------------------------------------------------------------------
// Close boolean factor pairs.

struct ClosePairCount {
    std::uint64_t count = 0;
    BigInt bound;  // n^{2d+2} 2^k
    bool within = false;
};

/**
 * Counts boolean pairs (f, g) with f_0 = 1, deg f = k, deg g = n - k and
 * |f g| <= |f| + |g| + d, and compares against n^{2d+2} 2^k.
 */
inline ClosePairCount close_pair_count(unsigned n, unsigned k, unsigned d, std::uint64_t budget = kDefaultBudget) {
    if (k < 1 || k >= n) fail(ErrorCode::InvalidArgument, "need 1 <= k <= n-1");
    if (n > bits::kMaxDegree) fail(ErrorCode::DegreeTooLarge, "close_pair_count handles n <= 63");
    if (d == 0) fail(ErrorCode::InvalidArgument, "d must be positive");
    const unsigned gdeg = n - k;
    check_budget(BigInt(1) << (n - 1), budget, false, "close_pair_count");
    ClosePairCount out;
    const bits::Word f_ends = bits::Word{1} | (bits::Word{1} << k);
    const bits::Word g_top = bits::Word{1} << gdeg;
    for (bits::Word fm = 0; fm < (bits::Word{1} << (k - 1)); ++fm) {
        const bits::Word f = f_ends | (fm << 1);
        const unsigned fw = bits::popcount(f);
        for (bits::Word gm = 0; gm < (bits::Word{1} << gdeg); ++gm) {
            const bits::Word g = g_top | gm;
            if (bits::popcount(bits::mul(f, g)) <= fw + bits::popcount(g) + d) ++out.count;
        }
    }
    out.bound = boost::multiprecision::pow(BigInt(n), 2 * d + 2) * (BigInt(1) << k);
    out.within = BigInt(out.count) <= out.bound;
    return out;
}

}  // namespace maxmin
