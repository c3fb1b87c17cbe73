#include <gtest/gtest.h>

#include <random>

#include "pliable/oracle.hpp"
#include "support/brute_force.hpp"

using namespace pliable;

TEST(GaussianBinomial, KnownValues) {
    EXPECT_EQ(gaussian_binomial(4, 2, 2), 35U);
    EXPECT_EQ(gaussian_binomial(3, 1, 2), 7U);
    EXPECT_EQ(gaussian_binomial(4, 2, 3), 130U);
    EXPECT_EQ(gaussian_binomial(5, 0, 2), 1U);
    EXPECT_EQ(gaussian_binomial(5, 5, 7), 1U);
    EXPECT_EQ(gaussian_binomial(2, 3, 2), 0U);
}

TEST(OptimalLength, CompleteInstances) {
    for (std::size_t m = 1; m <= 4; ++m) {
        const auto res = optimal_code_length(complete_instance(m), 2, m);
        EXPECT_EQ(res.length, m);
        EXPECT_TRUE(verify(res.witness, complete_instance(m)).all_satisfied());
    }
}

TEST(OptimalLength, SmallSubsetFamilyNeedsLargerField) {
    const auto inst = brute::small_subsets_instance(4);
    ASSERT_EQ(inst.n(), 10U);
    const auto ternary = optimal_code_length(inst, 3, 4);
    EXPECT_EQ(ternary.length, 2U);
    EXPECT_TRUE(verify(ternary.witness, inst).all_satisfied());
    const auto known = Matrix::from_rows(3, {{1, 1, 0, 1}, {0, 1, 1, 2}});
    EXPECT_TRUE(verify(known, inst).all_satisfied());
    const auto binary = optimal_code_length(inst, 2, 4);
    EXPECT_EQ(binary.length, 3U);
    EXPECT_TRUE(verify(binary.witness, inst).all_satisfied());
}

TEST(OptimalLength, MatchesEntrywiseEnumeration) {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 40; ++it) {
        const std::uint32_t q = it % 4 == 0 ? 3 : 2;
        const std::size_t m = 1 + rng() % 3;
        Instance inst;
        inst.m = m;
        const std::size_t n = 1 + rng() % 4;
        for (std::size_t i = 0; i < n; ++i) inst.requests.push_back(brute::random_subset(rng, m));
        ASSERT_EQ(optimal_code_length(inst, q, m).length, brute::min_length(inst, q));
    }
}

TEST(OptimalLength, TightWitnessLosesAClientWhenARowIsDropped) {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 30; ++it) {
        const auto inst = random_instance(5, 6, 0.4, rng());
        const auto res = optimal_code_length(inst, 2, 5);
        for (std::size_t r = 0; r < res.witness.rows(); ++r) {
            IndexSet keep;
            for (std::size_t k = 0; k < res.witness.rows(); ++k)
                if (k != r) keep.push_back(k);
            const auto smaller = res.witness.select_rows(keep);
            if (smaller.rows() == 0) continue;
            EXPECT_FALSE(verify(smaller, inst).all_satisfied());
        }
    }
}

TEST(OptimalLength, TwoRequests) {
    Instance inst;
    inst.m = 3;
    inst.t = 2;
    inst.requests = {{0, 1, 2}, {0, 1}};
    EXPECT_EQ(optimal_code_length(inst, 2, 3).length, 2U);
    inst = complete_t_instance(4, 2);
    EXPECT_GE(optimal_code_length(inst, 2, 4).length, 4U);
}

TEST(OptimalLength, Guards) {
    const auto inst = random_instance(40, 10, 0.3, 1);
    EXPECT_THROW(optimal_code_length(inst, 2, 40), InfeasibleSearch);
    EXPECT_THROW(optimal_code_length(complete_instance(3), 2, 2), NoCodeWithin);
    EXPECT_THROW(optimal_code_length(complete_instance(3), 4, 3), std::invalid_argument);
}

TEST(OptimalLength, LargerFieldNeverHurts) {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 40; ++it) {
        const auto inst = random_instance(4, 1 + rng() % 6, 0.5, rng());
        EXPECT_LE(optimal_code_length(inst, 3, 4).length, optimal_code_length(inst, 2, 4).length);
    }
}

TEST(Minrank, Examples) {
    Instance one;
    one.m = 1;
    one.requests = {{0}};
    EXPECT_EQ(minrank_fit(one, 2), 1U);
    EXPECT_EQ(minrank_fit(complete_instance(2), 2), 2U);
    EXPECT_EQ(minrank_fit(complete_instance(3), 2), 3U);
    OracleLimits wide;
    wide.max_fittings = std::uint64_t{1} << 31;
    EXPECT_EQ(minrank_fit(brute::small_subsets_instance(4), 2, wide), 3U);
    // ternary fittings of the ten-client family are far past the search limit
    EXPECT_THROW(minrank_fit(brute::small_subsets_instance(4), 3), InfeasibleSearch);
}

TEST(Minrank, Guards) {
    EXPECT_THROW(minrank_fit(complete_t_instance(3, 2), 2), std::invalid_argument);
    EXPECT_THROW(minrank_fit(random_instance(20, 20, 0.2, 3), 2), InfeasibleSearch);
}

TEST(Minrank, EqualsOptimalLengthOnAllSmallInstances) {
    for (std::uint32_t q : {2U, 3U}) {
        for (std::size_t m = 1; m <= 3; ++m) {
            for (const auto& inst : brute::all_small_instances(m, 4)) {
                ASSERT_EQ(minrank_fit(inst, q), optimal_code_length(inst, q, m).length)
                    << "q=" << q << " m=" << m << " n=" << inst.n();
            }
        }
    }
}
