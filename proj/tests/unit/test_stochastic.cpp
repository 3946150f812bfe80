#include <gtest/gtest.h>

#include <cmath>

#include "maxmin/stochastic.hpp"

using namespace maxmin;

TEST(Rng, Reproducible) {
    Rng a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    bool differs_stream = false, differs_seed = false;
    for (int i = 0; i < 100; ++i) {
        auto x = a.next();
        EXPECT_EQ(x, b.next());
        differs_stream |= x != c.next();
        differs_seed |= x != d.next();
    }
    EXPECT_TRUE(differs_stream);
    EXPECT_TRUE(differs_seed);
}

TEST(Rng, BelowIsUniform) {
    Rng r(5);
    std::array<int, 7> hist{};
    const int N = 70000;
    for (int i = 0; i < N; ++i) ++hist[r.below(7)];
    for (int h : hist) EXPECT_NEAR(h, N / 7.0, 5 * std::sqrt(N / 7.0));
    for (int i = 0; i < 1000; ++i) {
        double u = r.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(SamplePoly, DeterministicAndRespectsSpace) {
    ExperimentConfig c{9, 1, Base(5), 12, Space::ExactDegree};
    EXPECT_EQ(sample_poly(c), sample_poly(c));
    Rng r(1);
    for (int i = 0; i < 200; ++i) EXPECT_EQ(sample_poly(c, r).size(), 12u);
}

TEST(Hoeffding, ThreadIndependentAndWithinBound) {
    ExperimentConfig c{2024, 5000, Base(4), 200, Space::AllVectors};
    auto a = hoeffding_experiment(c, 2, 0.05, 1);
    auto b = hoeffding_experiment(c, 2, 0.05, 6);
    EXPECT_EQ(a.exceedances, b.exceedances);
    EXPECT_TRUE(a.within_bound());
    EXPECT_NEAR(a.hoeffding_bound, 2 * std::exp(-2 * 0.0025 * 200), 1e-15);
    EXPECT_THROW(hoeffding_experiment(c, 4, 0.05), Error);
    EXPECT_THROW(hoeffding_experiment(c, 1, 0.0), Error);
}

TEST(Wilson, KnownValues) {
    auto ci = wilson_interval(50, 100);
    EXPECT_NEAR(ci.low, 0.4038, 1e-4);
    EXPECT_NEAR(ci.high, 0.5962, 1e-4);
    auto zero = wilson_interval(0, 10);
    EXPECT_EQ(zero.low, 0.0);
    EXPECT_GT(zero.high, 0.0);
}

TEST(Density, SampledMatchesExhaustive) {
    ExperimentConfig c{7, 20000, Base(2), 12, Space::AllVectors};
    auto s = density_experiment(c, 4);
    auto e = density_exhaustive(c);
    EXPECT_TRUE(e.exhaustive);
    EXPECT_NEAR(s.estimate, e.estimate, 4 * s.sigma());
    EXPECT_LE(s.ci_low, s.estimate);
    EXPECT_GE(s.ci_high, s.estimate);
    EXPECT_EQ(density_experiment(c, 1).irreducible, s.irreducible);
}

TEST(Density, RejectsLongSamples) {
    ExperimentConfig c{1, 10, Base(2), 65, Space::AllVectors};
    EXPECT_THROW(density_experiment(c), Error);
}

TEST(Bounds, DefaultScheduleThirdTerm) {
    for (unsigned n : {2u, 50u, 100u, 800u, 100000u}) {
        auto r = bound_terms(Base(3), n, default_params(n));
        EXPECT_NEAR(static_cast<double>(r.term(2) * n), 1.0, 1e-12);
    }
}

TEST(Bounds, TermsMatchDirectEvaluation) {
    // Small n keeps every term representable, so direct evaluation is a fair oracle.
    const unsigned n = 10;
    const double d = 2, v = 3;
    auto r = bound_terms(Base(2), n, BoundParams(d, v));
    EXPECT_NEAR(static_cast<double>(r.term(0)), n * std::exp(-d * d / (4 * (n + 1))), 1e-9);
    EXPECT_NEAR(static_cast<double>(r.term(1)), v * std::pow(n, 2 * d + 1) * std::pow(2, v) / std::pow(2, n), 1e-6);
    EXPECT_NEAR(static_cast<double>(r.term(2)), n * n / std::pow(2, v), 1e-9);
    EXPECT_NEAR(static_cast<double>(r.term(3)), std::pow(n, 2 * d + 3) * std::pow(2, d / 2 - n / 3.0), 1e-3);
}

TEST(Bounds, ConfigJsonRecordsGenerator) {
    ExperimentConfig c{1, 2, Base(3), 4, Space::AllVectors};
    EXPECT_EQ(to_json(c)["generator"], std::string(Rng::kGeneratorId));
}
