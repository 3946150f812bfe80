#pragma once

/**
 * @file stochastic.hpp
 * @brief Seeded Monte-Carlo experiments and log-space bound evaluation.
 *
 * Trials are grouped in fixed blocks of kBlockTrials; block t draws from
 * Rng(seed, t). Partial counts are added, so any worker count yields the
 * same report.
 */

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "maxmin/census.hpp"
#include "maxmin/factor.hpp"
#include "maxmin/poly.hpp"
#include "maxmin/rng.hpp"

namespace maxmin {

inline constexpr std::uint64_t kBlockTrials = 256;

struct ExperimentConfig {
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    Base b{2};
    unsigned n = 1;
    Space space = Space::AllVectors;

    void validate() const {
        if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
        if (n < 1) fail(ErrorCode::InvalidArgument, "length n must be >= 1");
    }
};

inline nlohmann::json to_json(const ExperimentConfig& c) {
    return {{"seed", c.seed},
            {"trials", c.trials},
            {"b", c.b.value()},
            {"n", c.n},
            {"space", std::string(to_string(c.space))},
            {"generator", std::string(Rng::kGeneratorId)}};
}

namespace detail {

inline void draw_digits(const ExperimentConfig& c, Rng& rng, std::vector<Digit>& out) {
    out.resize(c.n);
    const unsigned b = c.b.value();
    for (unsigned k = 0; k < c.n; ++k) out[k] = static_cast<Digit>(rng.below(b));
    if (c.space == Space::ExactDegree) out[c.n - 1] = static_cast<Digit>(1 + rng.below(b - 1));
}

/// Runs `body(rng, trial_count)` once per block and sums the integer results.
template <class Body>
std::uint64_t run_blocks(const ExperimentConfig& c, unsigned threads, Body body) {
    const std::uint64_t blocks = (c.trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<std::uint64_t> partial(blocks, 0);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::uint64_t t = next.fetch_add(1);
            if (t >= blocks) return;
            Rng rng(c.seed, t);
            std::uint64_t count = std::min(kBlockTrials, c.trials - t * kBlockTrials);
            partial[t] = body(rng, count);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    std::uint64_t sum = 0;
    for (auto p : partial) sum += p;
    return sum;
}

}  // namespace detail

/// n iid uniform digits (leading digit drawn from 1..b-1 in exact-degree space).
inline MaxMinPoly sample_poly(const ExperimentConfig& c, Rng& rng) {
    std::vector<Digit> d;
    detail::draw_digits(c, rng, d);
    return MaxMinPoly::from_digits(c.b, std::move(d));
}

/// First draw of stream 0; identical configs give identical polynomials.
inline MaxMinPoly sample_poly(const ExperimentConfig& c) {
    Rng rng(c.seed, 0);
    return sample_poly(c, rng);
}

struct TailReport {
    unsigned i = 1;
    double epsilon = 0;
    std::uint64_t trials = 0;
    std::uint64_t exceedances = 0;
    double empirical_tail = 0;
    double hoeffding_bound = 0;
    /// Binomial standard error at p = min(bound, 1), the largest tail the bound allows.
    double sigma = 0;

    bool within_bound(double n_sigma = 3.0) const { return empirical_tail <= hoeffding_bound + n_sigma * sigma; }
};

/**
 * Frequency of | |f_i| - (b-i) n / b | > eps * n over random f, where |f_i|
 * counts coefficients >= i, against the Hoeffding bound 2 exp(-2 eps^2 n).
 */
inline TailReport hoeffding_experiment(const ExperimentConfig& c, unsigned i, double epsilon, unsigned threads = 1) {
    c.validate();
    const unsigned b = c.b.value();
    if (i < 1 || i > b - 1) fail(ErrorCode::LevelOutOfRange, "level " + std::to_string(i) + " outside [1, b-1]");
    if (!(epsilon > 0)) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
    const double mean = static_cast<double>(b - i) * c.n / b;
    const double slack = epsilon * c.n;
    auto hits = detail::run_blocks(c, threads, [&](Rng& rng, std::uint64_t count) {
        std::vector<Digit> d;
        std::uint64_t h = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
            detail::draw_digits(c, rng, d);
            auto s = std::count_if(d.begin(), d.end(), [&](Digit x) { return x >= i; });
            if (std::abs(static_cast<double>(s) - mean) > slack) ++h;
        }
        return h;
    });
    TailReport r;
    r.i = i;
    r.epsilon = epsilon;
    r.trials = c.trials;
    r.exceedances = hits;
    r.empirical_tail = static_cast<double>(hits) / c.trials;
    r.hoeffding_bound = 2.0 * std::exp(-2.0 * epsilon * epsilon * c.n);
    const double p = std::min(1.0, r.hoeffding_bound);
    r.sigma = std::sqrt(p * (1 - p) / c.trials);
    return r;
}

struct Interval {
    double low;
    double high;
};

/// Wilson score interval for `hits` successes in `trials` at normal quantile z.
inline Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z = 1.959963984540054) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = hits / n;
    const double z2 = z * z;
    const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct DensityReport {
    ExperimentConfig config;
    std::uint64_t trials = 0;
    std::uint64_t irreducible = 0;
    double estimate = 0;
    double ci_low = 0;
    double ci_high = 1;
    bool exhaustive = false;

    /// Standard error of the point estimate.
    double sigma() const { return trials ? std::sqrt(estimate * (1 - estimate) / trials) : 0.0; }
};

/// Degree limit for sampled classification (the packed search covers degree <= 63).
inline constexpr unsigned kMaxDensityLength = 64;

/**
 * Fraction of irreducible polynomials among `trials` uniform nonzero draws
 * (zero draws are redrawn, matching the census convention of excluding 0).
 */
inline DensityReport density_experiment(const ExperimentConfig& c, unsigned threads = 1) {
    c.validate();
    if (c.n > kMaxDensityLength)
        fail(ErrorCode::BudgetExceeded, "density sampling supports n <= " + std::to_string(kMaxDensityLength));
    auto hits = detail::run_blocks(c, threads, [&](Rng& rng, std::uint64_t count) {
        std::uint64_t h = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
            MaxMinPoly p = sample_poly(c, rng);
            while (p.is_zero()) p = sample_poly(c, rng);
            if (classify_irreducible(p).kind == ClassKind::Irreducible) ++h;
        }
        return h;
    });
    DensityReport r{c, c.trials, hits};
    r.estimate = static_cast<double>(hits) / c.trials;
    auto ci = wilson_interval(hits, c.trials);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
    return r;
}

/// Same report computed over the whole space instead of samples.
inline DensityReport density_exhaustive(const ExperimentConfig& c, const CensusOptions& opt = {}) {
    auto rec = census(c.b, c.n, c.space, opt);
    DensityReport r{c, rec.total, rec.irreducible};
    r.exhaustive = true;
    r.estimate = rec.irreducible_fraction();
    r.ci_low = r.ci_high = r.estimate;
    return r;
}

inline nlohmann::json to_json(const TailReport& r) {
    return {{"i", r.i},
            {"epsilon", r.epsilon},
            {"trials", r.trials},
            {"exceedances", r.exceedances},
            {"estimate", r.empirical_tail},
            {"bound", r.hoeffding_bound},
            {"sigma", r.sigma},
            {"within_bound_3sigma", r.within_bound()}};
}

inline nlohmann::json to_json(const DensityReport& r) {
    return {{"config", to_json(r.config)},
            {"trials", r.trials},
            {"irreducible", r.irreducible},
            {"estimate", r.estimate},
            {"ci_low", r.ci_low},
            {"ci_high", r.ci_high},
            {"exhaustive", r.exhaustive}};
}

/// Parameter schedule d = 2 sqrt(n+1) ln n, v = 3 log2 n.
inline BoundParams default_params(unsigned n) {
    if (n < 2) fail(ErrorCode::InvalidArgument, "default schedule needs n >= 2");
    const double nn = n;
    return BoundParams(2.0 * std::sqrt(nn + 1.0) * std::log(nn), 3.0 * std::log2(nn));
}

/**
 * The four normalized summands of the reducible-count bound, as natural logs:
 *   t1 = n e^{-d^2/4(n+1)}
 *   t2 = v n^{2d+1} 2^v b^{-n}
 *   t3 = n^2 2^{-v}
 *   t4 = n^{2d+3} 2^{d/2 - n/3}
 */
struct BoundReport {
    unsigned b;
    unsigned n;
    double d;
    double v;
    std::array<long double, 4> log_terms{};

    long double term(std::size_t k) const { return std::exp(log_terms.at(k)); }
};

inline BoundReport bound_terms(Base b, unsigned n_, const BoundParams& p) {
    if (n_ < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
    const long double n = n_;
    const long double d = p.d;
    const long double v = p.v;
    const long double ln2 = std::log(2.0L);
    const long double ln_n = std::log(n);
    BoundReport r{b.value(), n_, p.d, p.v};
    r.log_terms[0] = ln_n - d * d / (4 * (n + 1));
    r.log_terms[1] = std::log(v) + (2 * d + 1) * ln_n + v * ln2 - n * std::log(static_cast<long double>(b.value()));
    r.log_terms[2] = 2 * ln_n - v * ln2;
    r.log_terms[3] = (2 * d + 3) * ln_n + (d / 2 - n / 3) * ln2;
    return r;
}

inline nlohmann::json to_json(const BoundReport& r) {
    nlohmann::json terms = nlohmann::json::array();
    nlohmann::json logs = nlohmann::json::array();
    for (std::size_t k = 0; k < 4; ++k) {
        terms.push_back(static_cast<double>(r.term(k)));
        logs.push_back(static_cast<double>(r.log_terms[k]));
    }
    return {{"b", r.b}, {"n", r.n}, {"d", r.d}, {"v", r.v}, {"terms", terms}, {"log_terms", logs}};
}

}  // namespace maxmin
