#include <gtest/gtest.h>

#include "support.hpp"

using namespace wdcolor;

namespace {

RootedTreeDecomposition make_td(std::vector<VertexSet> bags, std::vector<TreeEdge> edges, NodeId root = 0) {
    RootedTreeDecomposition td;
    td.node_count = static_cast<int>(bags.size());
    td.root = root;
    td.bags = std::move(bags);
    td.tree_edges = std::move(edges);
    return td;
}

}  // namespace

TEST(Decomposition, PathOfBagsIsValid) {
    Graph g = path_graph(4);
    auto td = make_td({{0, 1}, {1, 2}, {2, 3}}, {{0, 1}, {1, 2}});
    auto report = validate_tree_decomposition(g, td);
    EXPECT_TRUE(report.ok);
    EXPECT_EQ(width(td), 1);
    EXPECT_EQ(adhesion(td), 1);
}

TEST(Decomposition, MissingEdgeCoverage) {
    Graph g = cycle_graph(3);
    auto td = make_td({{0, 1}, {1, 2}}, {{0, 1}});
    auto report = validate_tree_decomposition(g, td);
    EXPECT_FALSE(report.ok);
    EXPECT_TRUE(report.has("edge-coverage"));
}

TEST(Decomposition, DisconnectedOccurrence) {
    Graph g = path_graph(3);
    auto td = make_td({{0, 1}, {1, 2}, {0}}, {{0, 1}, {1, 2}});
    auto report = validate_tree_decomposition(g, td);
    EXPECT_FALSE(report.ok);
    EXPECT_TRUE(report.has("connectivity"));
}

TEST(Decomposition, MissingVertex) {
    Graph g(3, {{0, 1}});
    auto td = make_td({{0, 1}}, {});
    EXPECT_FALSE(validate_tree_decomposition(g, td).ok);
}

TEST(Decomposition, NotATree) {
    Graph g = path_graph(2);
    auto td = make_td({{0, 1}, {0}, {1}}, {{0, 1}, {1, 2}, {2, 1}});
    EXPECT_FALSE(validate_tree_decomposition(g, td).ok);
}

TEST(Decomposition, EmptyGraphWithNoNodes) {
    Graph g(0, {});
    RootedTreeDecomposition td;
    EXPECT_TRUE(validate_tree_decomposition(g, td).ok);
}

TEST(Decomposition, TorsoCompletesAdhesions) {
    // path a-b-c with bags {a,b,c} and {a,c}: the torso of the big bag gains ac
    Graph g = path_graph(3);
    auto td = make_td({{0, 1, 2}, {0, 2}}, {{0, 1}});
    auto t = torso(g, td, 0);
    EXPECT_EQ(t.vertices, (VertexSet{0, 1, 2}));
    EXPECT_EQ(t.graph.edge_count(), 3u);
    EXPECT_TRUE(t.graph.adjacent(0, 2));
    auto leaf = torso(g, td, 1);
    EXPECT_EQ(leaf.graph.edge_count(), 1u);
}

TEST(Decomposition, TorsoOfSingleBagIsInducedGraph) {
    Graph g = path_graph(3);
    auto td = make_td({{0, 1, 2}}, {});
    auto t = torso(g, td, 0);
    EXPECT_EQ(t.graph.edge_count(), 2u);
    EXPECT_FALSE(t.graph.adjacent(0, 2));
}

TEST(Decomposition, Truncation) {
    auto td = make_td({{0, 1}, {1, 2}, {2, 3}, {1, 4}}, {{0, 1}, {1, 2}, {0, 3}});
    auto tr = truncation(td, {0, 1});
    // the new root carries X_0 ∩ X_1 = {1} and the subtree {1, 2} hangs below it
    EXPECT_EQ(tr.td.node_count, 3);
    EXPECT_EQ(tr.td.bags[static_cast<std::size_t>(tr.root)], (VertexSet{1}));
    EXPECT_EQ(tr.td.root, tr.root);
    int originals = 0;
    for (NodeId t : tr.original_node)
        if (t >= 0) ++originals;
    EXPECT_EQ(originals, 2);
    EXPECT_THROW(truncation(td, {1, 0}), InputError);
}

TEST(Decomposition, ConstructionAdhesionBound) {
    Graph g = complete_graph(4);
    auto td = make_td({{0, 1, 2, 3}, {0, 1, 2, 3}}, {{0, 1}});
    auto report = validate_construction(g, td, {1, 3});
    EXPECT_FALSE(report.ok);
    EXPECT_TRUE(report.has("adhesion"));
}

TEST(Decomposition, ConstructionRootBag) {
    Graph g = path_graph(3);
    auto td = make_td({{0, 1, 2}}, {});
    EXPECT_TRUE(validate_construction(g, td, {2, 3}).ok);
    EXPECT_TRUE(validate_construction(g, td, {2, 2}).has("C2-size"));
    EXPECT_TRUE(validate_construction(g, td, {3, 2}).has("params"));
}

TEST(Decomposition, ConstructionEmptyRootNeedsEtaZero) {
    Graph g = path_graph(2);
    auto td = make_td({{}, {0, 1}}, {{0, 1}});
    EXPECT_TRUE(validate_construction(g, td, {0, 2}).ok);
    EXPECT_TRUE(validate_construction(g, td, {1, 2}).has("C2"));
}

TEST(Decomposition, ConstructionHighAdhesionNeedsLeaf) {
    // adhesion 2 > eta = 1 with a child below: violates the childless condition
    Graph g = path_graph(5);
    auto td = make_td({{0, 1, 2}, {1, 2, 3}, {3, 4}}, {{0, 1}, {1, 2}});
    auto report = validate_construction(g, td, {1, 3});
    EXPECT_TRUE(report.has("C1-childless"));
    EXPECT_TRUE(validate_construction(g, td, {2, 3}).ok);
}

TEST(Decomposition, MakeTwConstruction) {
    auto kt = random_ktree(30, 2, 7);
    auto tw = make_tw_construction(kt.graph, kt.td, 2);
    EXPECT_EQ(tw.params.eta, 3);
    EXPECT_EQ(tw.params.theta, 3);
    EXPECT_TRUE(validate_construction(kt.graph, tw.td, tw.params).ok);
    EXPECT_FALSE(tw.td.bags[static_cast<std::size_t>(tw.td.root)].empty());
    EXPECT_THROW(make_tw_construction(kt.graph, kt.td, 1), InputError);
}

TEST(Decomposition, MakeTwConstructionPrunesEmptyBags) {
    Graph g = path_graph(2);
    auto td = make_td({{}, {0, 1}, {}}, {{0, 1}, {0, 2}});
    auto tw = make_tw_construction(g, td, 1);
    EXPECT_EQ(tw.td.node_count, 1);
    EXPECT_EQ(tw.td.bags[0], (VertexSet{0, 1}));
}

TEST(Decomposition, Reroot) {
    auto td = make_td({{0}, {0, 1}, {1, 2}}, {{0, 1}, {1, 2}});
    auto re = reroot(td, 2);
    EXPECT_EQ(re.root, 2);
    EXPECT_TRUE(validate_tree_decomposition(path_graph(3), re).ok);
    auto topo = topology(re);
    EXPECT_EQ(topo.parent[0], 1);
    EXPECT_EQ(topo.parent[1], 2);
}
