#include <gtest/gtest.h>

#include "support.hpp"

using namespace wdcolor;
using io::Json;

TEST(Io, GraphRoundTrip) {
    Graph g = petersen();
    Graph back = io::graph_from_json(io::parse_json(io::to_json(g).dump()));
    EXPECT_EQ(back.vertex_count(), 10);
    EXPECT_EQ(back.edges(), g.edges());
}

TEST(Io, DecompositionRoundTrip) {
    auto kt = random_ktree(12, 2, 3);
    auto back = io::td_from_json(io::parse_json(io::to_json(kt.td).dump()));
    EXPECT_EQ(back.node_count, kt.td.node_count);
    EXPECT_EQ(back.root, kt.td.root);
    EXPECT_EQ(back.bags, kt.td.bags);
    EXPECT_EQ(back.tree_edges, kt.td.tree_edges);
}

TEST(Io, ListsRoundTrip) {
    ListAssignment lists({1, 2, 3}, {{1, 2}, {3}, {2, 3}});
    auto j = io::to_json(lists);
    EXPECT_TRUE(j["lists"].is_object());
    EXPECT_EQ(io::lists_from_json(j), lists);
    EXPECT_EQ(io::lists_from_json(j, 3), lists);
    EXPECT_THROW(io::lists_from_json(j, 4), ParseError);
}

TEST(Io, ColoringRoundTrip) {
    Coloring c(4);
    c.set(0, 2);
    c.set(3, 1);
    auto back = io::coloring_from_json(io::to_json(c), 4);
    EXPECT_EQ(back.domain(), (VertexSet{0, 3}));
    EXPECT_EQ(back.at(3), 1);
}

TEST(Io, WitnessesAndApexSets) {
    WitnessMap w{{0, {{1, 4}, 2}}, {3, {{}, 0}}};
    auto back = io::witnesses_from_json(io::to_json(w));
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back.at(0).centers, (VertexSet{1, 4}));
    EXPECT_EQ(back.at(0).radius, 2);
    auto apex = io::apex_sets_from_json(io::parse_json(R"({"0": [3, 1], "2": []})"));
    EXPECT_EQ(apex.at(0), (VertexSet{1, 3}));
}

TEST(Io, BigValues) {
    BigInt huge = BigInt(1) << 100;
    EXPECT_TRUE(io::to_json(huge).is_string());
    EXPECT_EQ(io::to_json(BigInt(42)), Json(42));
    EXPECT_EQ(io::to_json(Distance::infinite()), Json("INFINITE"));
}

TEST(Io, MalformedInput) {
    EXPECT_THROW(io::parse_json("{not json"), ParseError);
    EXPECT_THROW(io::graph_from_json(io::parse_json(R"({"edges": []})")), ParseError);
    EXPECT_THROW(io::graph_from_json(io::parse_json(R"({"n": 2, "edges": [[0]]})")), ParseError);
    EXPECT_THROW(io::graph_from_json(io::parse_json(R"({"n": "two", "edges": []})")), ParseError);
    EXPECT_THROW(io::coloring_from_json(io::parse_json(R"({"colors": {"x": 1}})"), 2), ParseError);
    EXPECT_THROW(io::td_from_json(io::parse_json(R"({"root": 0, "nodes": [0, 2], "edges": [], "bags": {}})")), ParseError);
    EXPECT_THROW(io::lists_from_json(io::parse_json(R"({"palette": [1], "lists": [[1]]})")), ParseError);
    EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), ParseError);
}

TEST(Io, GadgetDocument) {
    auto j = io::to_json(build_bipartite_gadget(cycle_graph(6), 1));
    EXPECT_EQ(j["graph"]["n"], 12);
    EXPECT_EQ(j["bipartition"].size(), 2u);
    EXPECT_EQ(j["provenance"].size(), 12u);
}
