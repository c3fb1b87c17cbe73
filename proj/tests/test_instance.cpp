#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "pliable/instance.hpp"
#include "pliable/io.hpp"
#include "support/brute_force.hpp"

using namespace pliable;

TEST(Generate, CompleteThree) {
    const auto inst = complete_instance(3);
    EXPECT_EQ(inst.n(), 7U);
    const std::vector<IndexSet> want = {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
    EXPECT_EQ(inst.requests, want);
    EXPECT_TRUE(validate(inst).empty());
}

TEST(Generate, CompleteCoversEverySubsetOnce) {
    for (std::size_t m = 1; m <= 8; ++m) {
        const auto inst = complete_instance(m);
        ASSERT_EQ(inst.n(), (std::size_t{1} << m) - 1);
        std::set<IndexSet> seen(inst.requests.begin(), inst.requests.end());
        EXPECT_EQ(seen.size(), inst.n());
    }
}

TEST(Generate, CompleteT) {
    const auto inst = complete_t_instance(4, 2);
    EXPECT_EQ(inst.n(), 7U);
    EXPECT_EQ(inst.t, 2U);
    EXPECT_EQ(inst.requests.front(), (IndexSet{0, 3}));
    IndexSet common = inst.requests.front();
    for (const auto& r : inst.requests) {
        EXPECT_GE(r.size(), 2U);
        IndexSet tmp;
        std::set_intersection(common.begin(), common.end(), r.begin(), r.end(), std::back_inserter(tmp));
        common = tmp;
    }
    EXPECT_EQ(common, (IndexSet{3}));
    EXPECT_FALSE(has_errors(validate(inst)));
    EXPECT_THROW(complete_t_instance(2, 3), std::invalid_argument);
}

TEST(Generate, RandomIsDeterministic) {
    const auto a = random_instance(6, 12, 0.3, 1);
    const auto b = random_instance(6, 12, 0.3, 1);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    EXPECT_NE(to_json(a).dump(), to_json(random_instance(6, 12, 0.3, 2)).dump());
    for (const auto& r : a.requests) EXPECT_GE(r.size(), 1U);
}

TEST(Generate, RandomEdgeFrequencyMatchesModel) {
    // Conditioned on |R_i| >= 1 the expected edge count per client is p*m / (1 - (1-p)^m).
    const double p = 0.3;
    const std::size_t m = 6, n = 12;
    const double per_client = p * m / (1.0 - std::pow(1.0 - p, static_cast<double>(m)));
    double total = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed)
        for (const auto& r : random_instance(m, n, p, seed).requests) total += static_cast<double>(r.size());
    const double mean = total / 1000.0;
    EXPECT_NEAR(mean, per_client * n, 0.05 * p * m * n);
}

TEST(Generate, EdgeFrequencyChiSquare) {
    // Per-message edge counts over many clients: chi-square against Binomial(N, p) with 20 cells.
    const double p = 0.4;
    const std::size_t m = 20, n = 500;
    const auto inst = random_instance(m, n, p, 77);
    std::vector<double> counts(m, 0.0);
    for (const auto& r : inst.requests)
        for (auto j : r) counts[j] += 1.0;
    const double expect = n * p;
    double chi = 0;
    for (auto c : counts) chi += (c - expect) * (c - expect) / (expect * (1 - p));
    // 19 degrees of freedom; 43.8 is the 0.999 quantile.
    EXPECT_LT(chi, 43.8);
}

TEST(Generate, ResamplesClientsBelowT) {
    const auto inst = random_instance(10, 200, 0.2, 5, 3);
    for (const auto& r : inst.requests) EXPECT_GE(r.size(), 3U);
    EXPECT_FALSE(has_errors(validate(inst)));
}

TEST(Generate, HeterogeneousBlocks) {
    GenOptions s;
    s.kind = GenOptions::Kind::heterogeneous;
    s.m = 40;
    s.n = 10;
    s.group_probs = {0.05, 0.95};
    s.seed = 3;
    const auto inst = generate(s);
    ASSERT_EQ(inst.n(), 10U);
    std::size_t low = 0, high = 0;
    for (std::size_t i = 0; i < 5; ++i) low += inst.requests[i].size();
    for (std::size_t i = 5; i < 10; ++i) high += inst.requests[i].size();
    EXPECT_LT(low, high);
    s.group_probs = {};
    EXPECT_THROW(generate(s), std::invalid_argument);
}

TEST(Generate, RejectsBadParameters) {
    EXPECT_THROW(random_instance(5, 5, 1.5, 1), std::invalid_argument);
    EXPECT_THROW(random_instance(5, 5, 0.0, 1), std::invalid_argument);
    EXPECT_THROW(random_instance(2, 5, 0.5, 1, 3), std::invalid_argument);
    EXPECT_THROW(parse_kind("lattice"), std::invalid_argument);
}

TEST(Validate, Examples) {
    Instance inst;
    inst.m = 3;
    inst.requests = {{}, {0}};
    auto v = validate(inst);
    ASSERT_EQ(v.size(), 1U);
    EXPECT_EQ(v[0].severity, Violation::Severity::error);
    EXPECT_EQ(v[0].client, 0U);

    inst.requests = {{0, 1}, {0, 1}};
    v = validate(inst);
    ASSERT_EQ(v.size(), 1U);
    EXPECT_EQ(v[0].severity, Violation::Severity::warning);

    inst.requests = {{0, 5}};
    EXPECT_TRUE(has_errors(validate(inst)));
    inst.requests = {{1, 0}};
    EXPECT_TRUE(has_errors(validate(inst)));
    inst.t = 2;
    inst.requests = {{1}};
    EXPECT_TRUE(has_errors(validate(inst)));
}

TEST(InstanceJson, RoundTrip) {
    for (const auto& inst : {complete_instance(3), complete_t_instance(4, 2), random_instance(7, 9, 0.5, 4)}) {
        const auto j = to_json(inst);
        EXPECT_EQ(instance_from_json(j), inst);
        EXPECT_EQ(to_json(instance_from_json(j)).dump(), j.dump());
    }
}

TEST(InstanceJson, OneBasedAndChecked) {
    const auto j = to_json(brute::five_clients());
    EXPECT_EQ(j["requests"][3], Json::parse("[1,3,4]"));
    auto bad = j;
    bad["requests"][0] = Json::parse("[0]");
    EXPECT_THROW(instance_from_json(bad), std::invalid_argument);
    bad = j;
    bad["n"] = 4;
    EXPECT_THROW(instance_from_json(bad), std::invalid_argument);
    bad = j;
    bad["requests"][1] = Json::array();
    EXPECT_THROW(instance_from_json(bad), std::invalid_argument);
}
