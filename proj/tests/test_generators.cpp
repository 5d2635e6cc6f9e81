#include <gtest/gtest.h>

#include "support.hpp"

using namespace wdcolor;

TEST(Generators, Petersen) {
    Graph g = petersen();
    EXPECT_EQ(g.vertex_count(), 10);
    EXPECT_EQ(g.edge_count(), 15u);
    for (Vertex v = 0; v < 10; ++v) EXPECT_EQ(g.degree(v), 3);
    EXPECT_EQ(girth(g), Distance(5));
}

TEST(Generators, SmallFamilies) {
    EXPECT_EQ(hypercube(3).edge_count(), 12u);
    EXPECT_EQ(complete_bipartite(3, 4).edge_count(), 12u);
    EXPECT_EQ(wagner().edge_count(), 12u);
    EXPECT_EQ(girth(wagner()), Distance(4));
    EXPECT_EQ(grid_graph(3, 4).edge_count(), 17u);
    EXPECT_EQ(complete_graph(5).edge_count(), 10u);
}

TEST(Generators, TriangularGrid) {
    EXPECT_EQ(triangular_grid(1).vertex_count(), 1);
    EXPECT_EQ(triangular_grid(1).edge_count(), 0u);
    EXPECT_EQ(triangular_grid(2).vertex_count(), 4);
    EXPECT_EQ(triangular_grid(2).edge_count(), 5u);
    EXPECT_EQ(triangular_grid(3).vertex_count(), 9);
    EXPECT_EQ(triangular_grid(3).edge_count(), 16u);
    // interior vertices of the triangulated grid have degree 6
    EXPECT_EQ(triangular_grid(5).max_degree(), 6);
}

TEST(KTree, MinimalIsAClique) {
    auto kt = random_ktree(4, 3, 1);
    EXPECT_EQ(kt.graph.edge_count(), 6u);
    EXPECT_EQ(kt.td.node_count, 1);
}

TEST(KTree, ValidAndDeterministic) {
    for (int w = 1; w <= 3; ++w)
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto a = random_ktree(40, w, seed, 0.3);
            auto b = random_ktree(40, w, seed, 0.3);
            EXPECT_EQ(a.graph.edges(), b.graph.edges());
            EXPECT_EQ(a.td.bags, b.td.bags);
            EXPECT_TRUE(validate_tree_decomposition(a.graph, a.td).ok);
            EXPECT_LE(width(a.td), w);
        }
    EXPECT_NE(random_ktree(40, 2, 1).graph.edges(), random_ktree(40, 2, 2).graph.edges());
    EXPECT_THROW(random_ktree(2, 2, 0), ParameterError);
}

TEST(BipartiteGadget, PetersenK1) {
    auto go = build_bipartite_gadget(petersen(), 1);
    EXPECT_EQ(go.graph.vertex_count(), 25);
    EXPECT_EQ(go.graph.max_degree(), 3);
    for (Vertex v = 0; v < 25; ++v) EXPECT_EQ(go.lists.at(v), (ColorList{1}));
}

TEST(BipartiteGadget, C6K1) {
    auto go = build_bipartite_gadget(cycle_graph(6), 1);
    EXPECT_EQ(go.graph.vertex_count(), 12);
    EXPECT_EQ(go.graph.max_degree(), 2);
}

TEST(BipartiteGadget, Invariants) {
    for (const auto& [name, host] : std::vector<std::pair<std::string, Graph>>{
             {"C6", cycle_graph(6)}, {"C8", cycle_graph(8)}, {"petersen", petersen()}, {"cube", hypercube(3)}})
        for (int k = 1; k <= 2; ++k) {
            auto go = build_bipartite_gadget(host, k);
            const int d = host.degree(0);
            int kk = 1;
            for (int i = 0; i < k; ++i) kk *= k;
            EXPECT_LE(go.graph.max_degree(), d * kk) << name << " k=" << k;
            EXPECT_EQ(go.graph.vertex_count(), host.vertex_count() * k + static_cast<int>(host.edge_count()) * kk);
            for (Vertex v = 0; v < go.lists.size(); ++v) EXPECT_EQ(static_cast<int>(go.lists.at(v).size()), k);
            // recorded bipartition is proper
            std::vector<int> side(static_cast<std::size_t>(go.graph.vertex_count()), -1);
            for (Vertex v : go.bipartition.side0) side[static_cast<std::size_t>(v)] = 0;
            for (Vertex v : go.bipartition.side1) side[static_cast<std::size_t>(v)] = 1;
            for (auto [u, v] : go.graph.edges()) EXPECT_NE(side[static_cast<std::size_t>(u)], side[static_cast<std::size_t>(v)]);
            for (int s : side) EXPECT_GE(s, 0);
            // q*_{v,i} carries the colors (i-1)k+1..ik
            for (std::size_t v = 0; v < go.provenance.size(); ++v) {
                const auto& o = go.provenance[v];
                if (o.is_edge_copy) {
                    EXPECT_EQ(static_cast<int>(o.type.size()), k);
                    EXPECT_EQ(go.graph.degree(static_cast<Vertex>(v)), 2 * k);
                    continue;
                }
                EXPECT_EQ(go.graph.degree(static_cast<Vertex>(v)), d * kk);
                EXPECT_EQ(go.lists.at(static_cast<Vertex>(v)).front(), (o.layer - 1) * k + 1);
            }
        }
}

TEST(BipartiteGadget, RejectsBadHosts) {
    EXPECT_THROW(build_bipartite_gadget(path_graph(4), 1), InputError);
    EXPECT_THROW(build_bipartite_gadget(complete_graph(4), 1), InputError);
    EXPECT_THROW(build_bipartite_gadget(cycle_graph(6), 0), ParameterError);
}
