#ifndef WDCOLOR_IO_HPP
#define WDCOLOR_IO_HPP

#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "decomposition.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "legitimacy.hpp"

namespace wdcolor::io {

using Json = nlohmann::json;

inline Json parse_json(const std::string& text, const std::string& source = "input") {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str(), path);
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& what) {
    if (!j.is_object()) throw ParseError(what + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(what + ": missing field \"" + key + "\"");
    return *it;
}

inline int to_int(const Json& j, const std::string& what) {
    if (!j.is_number_integer()) throw ParseError(what + ": expected an integer");
    auto v = j.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) throw ParseError(what + ": integer out of range");
    return static_cast<int>(v);
}

inline int key_to_int(const std::string& key, const std::string& what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(key, &used);
    } catch (const std::exception&) {
        throw ParseError(what + ": key \"" + key + "\" is not an integer");
    }
    if (used != key.size()) throw ParseError(what + ": key \"" + key + "\" is not an integer");
    return v;
}

inline std::vector<int> to_ints(const Json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": expected an array");
    std::vector<int> out;
    for (const auto& x : j) out.push_back(to_int(x, what));
    return out;
}

}  // namespace detail

inline Json to_json(const BigInt& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) return Json(static_cast<std::int64_t>(x));
    return Json(x.str());
}

inline Json to_json(const Distance& d) { return d.is_finite() ? Json(d.value()) : Json("INFINITE"); }

inline Json to_json(const Graph& g) {
    Json edges = Json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return {{"n", g.vertex_count()}, {"edges", edges}};
}

inline Graph graph_from_json(const Json& j) {
    int n = detail::to_int(detail::field(j, "n", "graph"), "graph.n");
    const Json& edges = detail::field(j, "edges", "graph");
    if (!edges.is_array()) throw ParseError("graph.edges: expected an array");
    std::vector<Edge> list;
    for (const auto& e : edges) {
        auto ends = detail::to_ints(e, "graph.edges");
        if (ends.size() != 2) throw ParseError("graph.edges: each edge needs two endpoints");
        list.emplace_back(ends[0], ends[1]);
    }
    return Graph(n, list);
}

inline Json to_json(const Coloring& c) {
    Json colors = Json::object();
    for (Vertex v : c.domain()) colors[std::to_string(v)] = c.at(v);
    return {{"colors", colors}};
}

inline Coloring coloring_from_json(const Json& j, int vertex_count) {
    const Json& colors = detail::field(j, "colors", "coloring");
    if (!colors.is_object()) throw ParseError("coloring.colors: expected an object");
    Coloring out(vertex_count);
    for (const auto& [key, value] : colors.items()) out.set(detail::key_to_int(key, "coloring.colors"), detail::to_int(value, "coloring.colors"));
    return out;
}

inline Json to_json(const RootedTreeDecomposition& td) {
    Json nodes = Json::array();
    Json edges = Json::array();
    for (auto [p, c] : td.tree_edges) edges.push_back({p, c});
    Json bags = Json::object();
    for (NodeId t = 0; t < td.node_count; ++t) {
        nodes.push_back(t);
        bags[std::to_string(t)] = td.bags[static_cast<std::size_t>(t)];
    }
    return {{"root", td.root}, {"nodes", nodes}, {"edges", edges}, {"bags", bags}};
}

inline RootedTreeDecomposition td_from_json(const Json& j) {
    RootedTreeDecomposition td;
    auto nodes = wdcolor::detail::normalized(detail::to_ints(detail::field(j, "nodes", "td"), "td.nodes"));
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] != static_cast<int>(i)) throw ParseError("td.nodes: node ids must be 0, 1, ..., nodes - 1");
    td.node_count = static_cast<int>(nodes.size());
    const Json& root = detail::field(j, "root", "td");
    td.root = root.is_null() ? -1 : detail::to_int(root, "td.root");
    for (const auto& e : detail::field(j, "edges", "td")) {
        auto ends = detail::to_ints(e, "td.edges");
        if (ends.size() != 2) throw ParseError("td.edges: each edge needs a parent and a child");
        td.tree_edges.emplace_back(ends[0], ends[1]);
    }
    td.bags.assign(static_cast<std::size_t>(td.node_count), {});
    const Json& bags = detail::field(j, "bags", "td");
    if (!bags.is_object()) throw ParseError("td.bags: expected an object");
    for (const auto& [key, value] : bags.items()) {
        int t = detail::key_to_int(key, "td.bags");
        if (t < 0 || t >= td.node_count) throw ParseError("td.bags: node " + key + " is outside [0, nodes)");
        td.bags[static_cast<std::size_t>(t)] = wdcolor::detail::normalized(detail::to_ints(value, "td.bags"));
    }
    return td;
}

inline Json to_json(const ListAssignment& lists) {
    Json all = Json::object();
    for (Vertex v = 0; v < lists.size(); ++v) all[std::to_string(v)] = lists.at(v);
    return {{"palette", lists.palette()}, {"lists", all}};
}

/// Every vertex 0..n-1 must have a list; `vertex_count` < 0 takes n from the document.
inline ListAssignment lists_from_json(const Json& j, int vertex_count = -1) {
    auto palette = detail::to_ints(detail::field(j, "palette", "lists"), "lists.palette");
    const Json& all = detail::field(j, "lists", "lists");
    if (!all.is_object()) throw ParseError("lists.lists: expected an object keyed by vertex");
    std::map<int, ColorList> by_vertex;
    for (const auto& [key, value] : all.items()) by_vertex[detail::key_to_int(key, "lists.lists")] = detail::to_ints(value, "lists.lists");
    int n = vertex_count >= 0 ? vertex_count : static_cast<int>(by_vertex.size());
    std::vector<ColorList> lists;
    for (int v = 0; v < n; ++v) {
        auto it = by_vertex.find(v);
        if (it == by_vertex.end()) throw ParseError("lists.lists: vertex " + std::to_string(v) + " has no list");
        lists.push_back(it->second);
    }
    if (static_cast<int>(by_vertex.size()) != n) throw ParseError("lists.lists: lists for vertices outside [0, n)");
    return ListAssignment(palette, std::move(lists));
}

inline Json to_json(const WitnessMap& w) {
    Json out = Json::object();
    for (const auto& [t, c] : w) out[std::to_string(t)] = {{"centers", c.centers}, {"radius", c.radius}};
    return out;
}

inline WitnessMap witnesses_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("witnesses: expected an object");
    WitnessMap out;
    for (const auto& [key, value] : j.items()) {
        int t = detail::key_to_int(key, "witnesses");
        out[t] = {wdcolor::detail::normalized(detail::to_ints(detail::field(value, "centers", "witnesses"), "witnesses.centers")),
                  detail::to_int(detail::field(value, "radius", "witnesses"), "witnesses.radius")};
    }
    return out;
}

inline std::map<NodeId, VertexSet> apex_sets_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("apex sets: expected an object");
    std::map<NodeId, VertexSet> out;
    for (const auto& [key, value] : j.items()) out[detail::key_to_int(key, "apex sets")] = wdcolor::detail::normalized(detail::to_ints(value, "apex sets"));
    return out;
}

inline Json to_json(const ValidationReport& report) {
    Json violations = Json::array();
    for (const auto& v : report.violations) violations.push_back({{"rule", v.rule}, {"location", v.location}});
    return {{"ok", report.ok}, {"violations", violations}};
}

inline Json to_json(const GadgetOutput& go) {
    Json provenance = Json::object();
    for (std::size_t v = 0; v < go.provenance.size(); ++v) {
        const auto& o = go.provenance[v];
        if (o.is_edge_copy) provenance[std::to_string(v)] = {{"origin", "edge"}, {"host_edge", o.host_edge}, {"type", o.type}};
        else provenance[std::to_string(v)] = {{"origin", "vertex"}, {"host_vertex", o.host_vertex}, {"layer", o.layer}};
    }
    return {{"graph", to_json(go.graph)},
            {"lists", to_json(go.lists)},
            {"bipartition", {go.bipartition.side0, go.bipartition.side1}},
            {"provenance", provenance}};
}

}  // namespace wdcolor::io

#endif
