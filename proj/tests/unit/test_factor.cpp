#include <gtest/gtest.h>

#include "maxmin/census.hpp"
#include "maxmin/factor.hpp"
#include "maxmin/io.hpp"
#include "support.hpp"

using namespace maxmin;
using testing_support::from_vec;
using testing_support::random_nonzero;
using testing_support::to_vec;

namespace {

MaxMinPoly P(unsigned b, std::initializer_list<int> c) { return MaxMinPoly(Base(b), c); }

void expect_valid(const MaxMinPoly& h, const FactorWitness& w) {
    EXPECT_EQ(w.g * w.h, h);
    EXPECT_FALSE(is_monomial(w.g));
    EXPECT_FALSE(is_monomial(w.h));
    EXPECT_FALSE(degree_lex_less(w.h, w.g));
}

// Canonical polynomials of length <= D + 1 in enumeration order.
std::vector<oracle::Vec> all_up_to(int b, int D) {
    std::vector<oracle::Vec> out;
    for (int d = 0; d <= D; ++d)
        for (auto& v : oracle::polys_of_degree(b, d)) out.push_back(v);
    return out;
}

}  // namespace

TEST(ResidualDivide, Examples) {
    auto q = residual_divide(P(2, {0, 1, 1, 0, 1}), P(2, {0, 1}));
    ASSERT_TRUE(q);
    EXPECT_EQ(*q, P(2, {1, 1, 0, 1}));
    auto h = P(4, {3, 0, 2, 1});
    EXPECT_EQ(residual_divide(h, constant(Base(4), 3)), h);
    EXPECT_EQ(residual_divide(P(3, {1, 2, 1}), P(3, {2, 1})), P(3, {1, 2}));
}

TEST(ResidualDivide, Errors) {
    auto code = [](auto f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    EXPECT_EQ(code([] { residual_divide(P(2, {1, 1}), MaxMinPoly(Base(2))); }), ErrorCode::ZeroDivisor);
    EXPECT_EQ(code([] { residual_divide(P(2, {1}), P(2, {1, 1})); }), ErrorCode::DegreeTooLarge);
    EXPECT_EQ(code([] { residual_divide(P(2, {1, 1}), P(3, {1})); }), ErrorCode::BaseMismatch);
}

TEST(Divides, Examples) {
    EXPECT_TRUE(divides(P(2, {0, 1}), P(2, {0, 1, 1, 0, 1})));
    EXPECT_FALSE(divides(P(2, {1, 1}), P(2, {1, 0, 1})));
    EXPECT_TRUE(divides(constant(Base(5), 4), P(5, {2, 0, 3})));
}

TEST(ResidualDivide, Maximality) {
    std::mt19937_64 rng(21);
    for (unsigned b : {2u, 3u, 5u}) {
        for (int t = 0; t < 2000; ++t) {
            auto f = random_nonzero(rng, b, 8);
            auto g = random_nonzero(rng, b, 8);
            auto h = f * g;
            auto q = residual_divide(h, g);
            ASSERT_TRUE(q);
            EXPECT_EQ(*q * g, h);
            EXPECT_TRUE(pointwise_le(f, *q));
        }
    }
}

TEST(ClassifyIrreducible, Examples) {
    EXPECT_EQ(classify_irreducible(P(2, {0, 1, 1, 0, 1})).kind, ClassKind::Irreducible);
    auto c = classify_irreducible(P(2, {1, 1, 1}));
    ASSERT_EQ(c.kind, ClassKind::Reducible);
    EXPECT_EQ(c.witness->g, P(2, {1, 1}));
    EXPECT_EQ(c.witness->h, P(2, {1, 1}));
    EXPECT_EQ(classify_irreducible(monomial(Base(7), 3, 5)).kind, ClassKind::Monomial);
    EXPECT_THROW(classify_irreducible(MaxMinPoly(Base(2))), Error);
}

TEST(ClassifyIrreducible, OracleEquivalenceSmall) {
    for (auto [b, D] : {std::pair{2, 7}, std::pair{3, 4}, std::pair{4, 4}}) {
        oracle::ProductTable table(b, D);
        for (const auto& v : all_up_to(b, D)) {
            auto h = from_vec(b, v);
            auto c = classify_irreducible(h);
            ASSERT_EQ(std::string(to_string(c.kind)), table.classify(v)) << format_poly(h);
            if (c.witness) expect_valid(h, *c.witness);
        }
    }
}

TEST(ClassifyIrreducible, WitnessIsMinimal) {
    // The reported g is the (degree, lexicographic) least non-monomial divisor with a non-monomial cofactor.
    for (int b : {2, 3}) {
        for (const auto& v : all_up_to(b, b == 2 ? 7 : 4)) {
            auto h = from_vec(b, v);
            auto c = classify_irreducible(h);
            if (!c.witness) continue;
            const std::size_t D = degree(h);
            std::optional<MaxMinPoly> best;
            for (std::size_t k = 1; k <= D / 2 && !best; ++k)
                for (const auto& gv : oracle::polys_of_degree(b, static_cast<int>(k))) {
                    auto g = from_vec(b, gv);
                    if (is_monomial(g)) continue;
                    auto q = residual_divide(h, g);
                    if (q && !is_monomial(*q) && degree(*q) == D - k) {
                        if (!best || lex_less(g, *best)) best = g;
                    }
                }
            ASSERT_TRUE(best);
            const auto& w = *c.witness;
            EXPECT_TRUE(w.g == *best || w.h == *best) << format_poly(h);
        }
    }
}

TEST(ClassifyIrreducible, PackedAndGenericAgree) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 3000; ++t) {
        auto h = random_nonzero(rng, 2, 24);
        auto fast = classify_irreducible(h);
        auto slow = classify_irreducible_generic(h);
        ASSERT_EQ(fast.kind, slow.kind) << format_poly(h);
        if (fast.witness) {
            EXPECT_EQ(fast.witness->g, slow.witness->g);
            EXPECT_EQ(fast.witness->h, slow.witness->h);
        }
    }
    // Products are reducible by construction.
    for (int t = 0; t < 1000; ++t) {
        auto f = random_nonzero(rng, 2, 20), g = random_nonzero(rng, 2, 20);
        if (is_monomial(f) || is_monomial(g)) continue;
        auto c = classify_irreducible(f * g);
        ASSERT_EQ(c.kind, ClassKind::Reducible);
        expect_valid(f * g, *c.witness);
    }
}

TEST(ClassifyIrreducible, LargerBasesProducts) {
    std::mt19937_64 rng(23);
    for (unsigned b : {3u, 5u, 10u}) {
        for (int t = 0; t < 300; ++t) {
            auto f = random_nonzero(rng, b, 6), g = random_nonzero(rng, b, 6);
            if (is_monomial(f) || is_monomial(g)) continue;
            auto c = classify_irreducible(f * g);
            ASSERT_EQ(c.kind, ClassKind::Reducible) << format_poly(f * g);
            expect_valid(f * g, *c.witness);
        }
    }
}

TEST(ClassifyPrime, Examples) {
    EXPECT_EQ(classify_prime(P(2, {1, 0, 1})).kind, PrimeKind::Prime);
    auto s = classify_prime(P(2, {1, 1, 1}));
    EXPECT_EQ(s.kind, PrimeKind::CompositeCandidate);
    ASSERT_TRUE(s.witness);
    EXPECT_EQ(s.witness->g, P(2, {1, 1}));
    auto nc = classify_prime(P(2, {0, 1, 1, 0, 1}));
    EXPECT_EQ(nc.kind, PrimeKind::NotCandidate);
    EXPECT_EQ(nc.reason, NotCandidateReason::ZeroConstantTerm);
    EXPECT_EQ(classify_prime(P(3, {1, 1})).reason, NotCandidateReason::MaxCoefficientBelowTop);
    EXPECT_EQ(classify_prime(constant(Base(3), 2)).kind, PrimeKind::Unit);
    EXPECT_THROW(classify_prime(MaxMinPoly(Base(3))), Error);
}

TEST(ClassifyPrime, MatchesDefinition) {
    for (auto [b, D] : {std::pair{2, 7}, std::pair{3, 4}}) {
        oracle::ProductTable table(b, D);
        for (const auto& v : all_up_to(b, D)) {
            auto s = classify_prime(from_vec(b, v));
            EXPECT_EQ(s.kind == PrimeKind::Prime, table.prime(v));
            EXPECT_EQ(s.kind != PrimeKind::NotCandidate, table.candidate(v));
        }
    }
}

TEST(AllFactorizations, Examples) {
    auto ws = all_factorizations(P(2, {1, 1, 1}));
    ASSERT_EQ(ws.size(), 1u);
    EXPECT_EQ(ws[0].g, P(2, {1, 1}));
    EXPECT_EQ(ws[0].h, P(2, {1, 1}));
    EXPECT_TRUE(all_factorizations(monomial(Base(3), 2, 4)).empty());
    EXPECT_TRUE(all_factorizations(P(2, {0, 1, 1, 0, 1})).empty());
}

TEST(AllFactorizations, MatchesBruteForce) {
    for (auto [b, D] : {std::pair{2, 6}, std::pair{3, 4}}) {
        auto polys = all_up_to(b, D);
        for (const auto& v : polys) {
            auto h = from_vec(b, v);
            std::set<std::pair<oracle::Vec, oracle::Vec>> expect;
            for (const auto& f : polys)
                for (const auto& g : polys) {
                    if (oracle::is_monomial(f) || oracle::is_monomial(g)) continue;
                    if (f.size() > g.size() || (f.size() == g.size() && g < f)) continue;
                    if (oracle::mul(f, g) == v) expect.insert({f, g});
                }
            std::set<std::pair<oracle::Vec, oracle::Vec>> got;
            for (const auto& w : all_factorizations(h)) {
                expect_valid(h, w);
                EXPECT_TRUE(got.insert({to_vec(w.g), to_vec(w.h)}).second);
            }
            ASSERT_EQ(got, expect) << format_poly(h);
        }
    }
}

TEST(AllFactorizations, TruncatesAndOrders) {
    auto h = P(2, {1, 1, 1, 1, 1, 1, 1});
    auto all = all_factorizations(h);
    ASSERT_GT(all.size(), 3u);
    auto first = all_factorizations(h, 3);
    ASSERT_EQ(first.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(first[i], all[i]);
    EXPECT_EQ(all_factorizations(h, 0).size(), 0u);
}
