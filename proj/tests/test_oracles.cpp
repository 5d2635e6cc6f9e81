#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace wdcolor;

TEST(BruteForce, SmallCases) {
    EXPECT_EQ(brute_force_min_weak_diameter(Graph(1, {}), ListAssignment::uniform(1, {1, 2, 3})).value, Distance(0));
    EXPECT_EQ(brute_force_min_weak_diameter(cycle_graph(4), ListAssignment::uniform(4, {1, 2})).value, Distance(0));
    auto k3 = brute_force_min_weak_diameter(complete_graph(3), ListAssignment::uniform(3, {1, 2}));
    EXPECT_EQ(k3.value, Distance(1));
    EXPECT_EQ(coloring_weak_diameter(complete_graph(3), k3.witness), Distance(1));
}

TEST(BruteForce, WitnessIsLexicographicallyFirst) {
    auto r = brute_force_min_weak_diameter(path_graph(3), ListAssignment::uniform(3, {1, 2}));
    EXPECT_EQ(r.value, Distance(0));
    EXPECT_EQ(r.witness.at(0), 1);
    EXPECT_EQ(r.witness.at(1), 2);
    EXPECT_EQ(r.witness.at(2), 1);
}

TEST(BruteForce, MatchesPlainEnumeration) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        Graph g = wdtest::centered_graph(n, 1, 2, 0.3, rng);
        ListAssignment lists({1, 2, 3}, wdtest::random_lists(n, {1, 2, 3}, 1 + static_cast<int>(rng() % 2), rng));
        std::int64_t best = -2;
        std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
        while (true) {
            Coloring c(n);
            for (Vertex v = 0; v < n; ++v) c.set(v, lists.at(v)[idx[static_cast<std::size_t>(v)]]);
            auto wd = wdtest::reference_weak_diameter(g, c);
            if (wd >= 0 && (best < 0 || wd < best)) best = wd;
            int v = n - 1;
            while (v >= 0 && ++idx[static_cast<std::size_t>(v)] == lists.at(v).size()) idx[static_cast<std::size_t>(v--)] = 0;
            if (v < 0) break;
        }
        auto got = brute_force_min_weak_diameter(g, lists);
        ASSERT_EQ(got.status, SearchStatus::ok);
        EXPECT_EQ(got.value, Distance(best)) << "trial " << trial;
    }
}

TEST(BruteForce, TooLarge) {
    auto r = brute_force_min_weak_diameter(path_graph(30), ListAssignment::uniform(30, {1, 2}), 1000);
    EXPECT_EQ(r.status, SearchStatus::too_large);
    EXPECT_EQ(list_product(ListAssignment::uniform(4, {1, 2, 3}), 1000), 81);
}

TEST(GadgetClaim, NegativeThresholds) {
    auto petersen_claim = gadget_weak_diameter_claim(build_bipartite_gadget(petersen(), 1), 5);
    EXPECT_EQ(petersen_claim.threshold, -1);
    EXPECT_TRUE(petersen_claim.verdict);
    auto c6 = gadget_weak_diameter_claim(build_bipartite_gadget(cycle_graph(6), 1), 6);
    EXPECT_EQ(c6.threshold, -1);
    EXPECT_TRUE(c6.verdict);
}

TEST(GadgetClaim, LargeHostIsTooLarge) {
    auto go = build_bipartite_gadget(cycle_graph(8), 2);
    auto claim = gadget_weak_diameter_claim(go, 8, 1 << 10);
    EXPECT_EQ(claim.threshold, 1);
    EXPECT_EQ(claim.status, SearchStatus::too_large);
}

TEST(GirthFar, C12) {
    Graph g = cycle_graph(12);
    std::vector<Vertex> cyc(12);
    std::iota(cyc.begin(), cyc.end(), 0);
    auto r = girth_far_check(g, cyc);
    EXPECT_EQ(r.distance, 6);
    EXPECT_EQ(r.bound, 3);
    EXPECT_TRUE(r.holds);
}

TEST(GirthFar, PetersenFiveCycle) {
    Graph g = petersen();
    auto cycles = enumerate_simple_cycles(g);
    bool found = false;
    for (const auto& c : cycles)
        if (c.size() == 5) {
            auto r = girth_far_check(g, c);
            EXPECT_GE(r.distance, 1);
            EXPECT_TRUE(r.holds);
            found = true;
        }
    EXPECT_TRUE(found);
}

TEST(GirthFar, RejectsNonCycles) {
    Graph g = cycle_graph(6);
    EXPECT_THROW(girth_far_check(g, {0, 2, 4}), InputError);
    EXPECT_THROW(girth_far_check(complete_graph(3), {0, 1, 2}), InputError);
}

TEST(Cycles, Counts) {
    EXPECT_EQ(enumerate_simple_cycles(cycle_graph(7)).size(), 1u);
    EXPECT_EQ(enumerate_simple_cycles(complete_graph(4)).size(), 7u);
    EXPECT_EQ(enumerate_simple_cycles(complete_bipartite(3, 3)).size(), 15u);
    EXPECT_TRUE(enumerate_simple_cycles(path_graph(5)).empty());
}
