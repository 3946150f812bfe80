#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "maxmin/census.hpp"
#include "support.hpp"

using namespace maxmin;
using testing_support::to_vec;

TEST(Enumerate, Counts) {
    auto count = [](unsigned b, unsigned n, Space s) {
        std::size_t c = 0;
        enumerate(Base(b), n, s, [&](const MaxMinPoly&) { ++c; });
        return c;
    };
    EXPECT_EQ(count(2, 2, Space::AllVectors), 4u);
    EXPECT_EQ(count(2, 2, Space::ExactDegree), 2u);
    EXPECT_EQ(count(3, 1, Space::AllVectors), 3u);
}

TEST(Enumerate, LexicographicOrder) {
    std::vector<oracle::Vec> seen;
    enumerate(Base(3), 3, Space::AllVectors, [&](const MaxMinPoly& f) {
        auto v = to_vec(f);
        v.resize(3, 0);
        seen.push_back(v);
    });
    ASSERT_EQ(seen.size(), 27u);
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
}

TEST(Census, TotalsAndInvariants) {
    for (unsigned b : {2u, 3u, 4u}) {
        for (unsigned n = 1; n <= 6; ++n) {
            auto all = census(Base(b), n, Space::AllVectors);
            auto ex = census(Base(b), n, Space::ExactDegree);
            EXPECT_EQ(BigInt(all.total), space_size(Base(b), n) - 1);
            EXPECT_EQ(BigInt(ex.total), BigInt(b - 1) * space_size(Base(b), n - 1));
            for (const auto& r : {all, ex}) {
                EXPECT_EQ(r.monomials + r.irreducible + r.reducible, r.total);
                EXPECT_LE(r.primes, r.prime_candidates);
            }
        }
    }
}

TEST(Census, SmallCases) {
    auto r = census(Base(2), 1, Space::AllVectors);
    EXPECT_EQ(r.irreducible, 0u);
    EXPECT_EQ(r.monomials, 1u);
    // 1 + x^2 is the only prime of length 3 over B_2.
    EXPECT_EQ(census(Base(2), 3, Space::ExactDegree).primes, 1u);
}

TEST(Census, MatchesProductTable) {
    for (auto [b, n] : {std::pair{2, 8}, std::pair{3, 5}}) {
        oracle::ProductTable table(b, n - 1);
        for (auto space : {Space::AllVectors, Space::ExactDegree}) {
            CensusRecord expect{static_cast<unsigned>(b), static_cast<unsigned>(n), space};
            for (int d = space == Space::ExactDegree ? n - 1 : 0; d <= n - 1; ++d)
                for (const auto& v : oracle::polys_of_degree(b, d)) {
                    ++expect.total;
                    auto c = table.classify(v);
                    expect.monomials += c == "Monomial";
                    expect.irreducible += c == "Irreducible";
                    expect.reducible += c == "Reducible";
                    expect.prime_candidates += table.candidate(v);
                    expect.primes += table.prime(v);
                }
            EXPECT_EQ(census(Base(b), n, space), expect);
        }
    }
}

TEST(Census, BinarySieve) {
    for (int n = 2; n <= 14; ++n)
        EXPECT_EQ(census(Base(2), n, Space::ExactDegree).primes, oracle::binary_prime_sieve(n)) << n;
}

TEST(Census, ScheduleIndependent) {
    auto ref = census(Base(3), 7, Space::AllVectors);
    for (unsigned threads : {1u, 3u, 8u})
        for (unsigned shards : {1u, 5u, 64u, 5000u}) {
            CensusOptions o;
            o.threads = threads;
            o.shards = shards;
            EXPECT_EQ(census(Base(3), 7, Space::AllVectors, o), ref);
        }
}

TEST(Census, CheckpointResume) {
    auto path = std::filesystem::temp_directory_path() / "maxmin_census_ckpt.json";
    std::filesystem::remove(path);
    CensusOptions o;
    o.shards = 16;
    o.checkpoint = path;
    auto first = census(Base(2), 12, Space::ExactDegree, o);
    ASSERT_TRUE(std::filesystem::exists(path));

    // Corrupt one shard's counts in the file: a resumed run must reuse the file rather than recompute.
    nlohmann::json j;
    {
        std::ifstream in(path);
        in >> j;
    }
    ASSERT_EQ(j.size(), 16u);
    j[0]["partial"]["primes"] = j[0]["partial"]["primes"].get<std::uint64_t>() + 1000;
    {
        std::ofstream out(path);
        out << j.dump();
    }
    auto resumed = census(Base(2), 12, Space::ExactDegree, o);
    EXPECT_EQ(resumed.primes, first.primes + 1000);

    // A partial checkpoint completes to the same totals.
    j.erase(j.begin(), j.begin() + 8);
    {
        std::ofstream out(path);
        out << j.dump();
    }
    EXPECT_EQ(census(Base(2), 12, Space::ExactDegree, o).total, first.total);
    std::filesystem::remove(path);
}

TEST(Census, Budget) {
    CensusOptions o;
    o.budget = 100;
    try {
        census(Base(3), 5, Space::AllVectors, o);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
    }
    o.force = true;
    EXPECT_EQ(census(Base(3), 5, Space::AllVectors, o).total, 242u);
}

TEST(Census, RecordJsonAndCsv) {
    auto r = census(Base(3), 4, Space::ExactDegree);
    EXPECT_EQ(census_record_from_json(to_json(r)), r);
    EXPECT_EQ(to_csv(r).substr(0, 17), "3,4,exact-degree,");
}

TEST(CandidateClosedForm, MatchesCensus) {
    EXPECT_EQ(candidate_count_closed_form(Base(2), 2), 1);
    EXPECT_EQ(candidate_count_closed_form(Base(3), 2), 3);
    for (unsigned n = 2; n <= 10; ++n) EXPECT_EQ(candidate_count_closed_form(Base(2), n), BigInt(1) << (n - 2));
    for (unsigned b : {2u, 3u, 4u})
        for (unsigned n = 2; n <= 6; ++n)
            EXPECT_EQ(candidate_count_closed_form(Base(b), n), BigInt(census(Base(b), n, Space::ExactDegree).prime_candidates));
}

TEST(AlsLowerBound, Values) {
    EXPECT_EQ(als_lower_bound(Base(3), 4), 6);
    EXPECT_EQ(als_lower_bound(Base(2), 7), 1);
    auto r = census(Base(3), 4, Space::ExactDegree);
    EXPECT_TRUE(als_lower_bound_check(Base(3), 4, r));
    EXPECT_THROW(als_lower_bound_check(Base(3), 5, r), Error);
}

TEST(Oeis, ExportAndParse) {
    EXPECT_EQ(oeis_export({}), "");
    std::vector<CensusRecord> recs;
    for (unsigned n : {5u, 3u, 4u}) recs.push_back(census(Base(2), n, Space::ExactDegree));
    auto text = oeis_export(recs);
    EXPECT_EQ(text.substr(0, 4), "3 1\n");
    std::istringstream in("# comment\n\n3 1\n4 3\n5 5\n");
    auto parsed = parse_bfile(in);
    std::istringstream again(text);
    EXPECT_EQ(parse_bfile(again), parsed);
    recs.push_back(census(Base(3), 3, Space::ExactDegree));
    EXPECT_THROW(oeis_export(recs), Error);
}

TEST(Partition, DisjointCoverAndBounds) {
    for (unsigned b : {2u, 3u}) {
        for (unsigned n = 3; n <= 6; ++n) {
            for (auto [d, v] : {std::pair{2.0, 2.0}, std::pair{3.0, 2.0}}) {
                auto pc = partition_census(Base(b), n, BoundParams(d, v));
                EXPECT_EQ(pc.covered(), pc.sigma);
                EXPECT_EQ(pc.misassigned, 0u);
                EXPECT_EQ(BigInt(pc.sigma), BigInt(census(Base(b), n, Space::AllVectors).reducible));
                EXPECT_TRUE(pc.within_bound(0));
                EXPECT_TRUE(pc.within_bound(2));
                EXPECT_TRUE(pc.within_bound(4));
            }
        }
    }
}

TEST(Partition, LevelSetsCollapseForSmallBases) {
    // a = floor(b/2) = 1 for b in {2, 3}: E3 repeats E1's test and E6 is empty.
    auto pc = partition_census(Base(3), 5, BoundParams(2, 2));
    EXPECT_EQ(pc.a, 1u);
    EXPECT_EQ(pc.sizes[2], 0u);
    EXPECT_EQ(pc.sizes[5], 0u);
}

TEST(BoundParams, Validation) {
    EXPECT_THROW(BoundParams(0, 1), Error);
    EXPECT_THROW(BoundParams(1, -1), Error);
    EXPECT_EQ(BoundParams::half_level(Base(7)), 3u);
}

TEST(ClosePairs, Examples) {
    auto c = close_pair_count(2, 1, 1);
    EXPECT_EQ(c.count, 2u);
    EXPECT_EQ(c.bound, 32);
    EXPECT_TRUE(c.within);
    // d >= n + 1 admits every pair: 2^{k-1} choices of f times 2^{n-k} of g.
    EXPECT_EQ(close_pair_count(7, 3, 8).count, 4u * 16u);
    EXPECT_TRUE(close_pair_count(8, 3, 2).within);
    EXPECT_THROW(close_pair_count(5, 0, 1), Error);
    EXPECT_THROW(close_pair_count(5, 5, 1), Error);
}

TEST(ClosePairs, MatchesNaive) {
    for (int n = 2; n <= 9; ++n)
        for (int k = 1; k < n; ++k)
            for (int d : {1, 2})
                EXPECT_EQ(close_pair_count(n, k, d).count, oracle::close_pairs_naive(n, k, d)) << n << ' ' << k << ' ' << d;
}
