#ifndef WDCOLOR_COLORERS_HPP
#define WDCOLOR_COLORERS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "decomposition.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "legitimacy.hpp"
#include "oracles.hpp"

namespace wdcolor {

/// The precoloring handed to the treewidth colorer has a component wider than allowed.
class PrecoloringError : public InputError {
public:
    PrecoloringError(Vertex a, Vertex b, Distance distance, int k)
        : InputError("precoloring has vertices " + std::to_string(a) + " and " + std::to_string(b) + " in one component at distance " +
                     distance.to_string() + " > " + std::to_string(k)),
          a(a), b(b), distance(distance) {}
    Vertex a;
    Vertex b;
    Distance distance;
};

/// Smallest list color everywhere; the node is ignored.
inline Coloring arbitrary_local_colorer(const ChildExtension&, const ListAssignment& lists, NodeId) { return smallest_list_coloring(lists); }

inline LocalColorer make_arbitrary_colorer(const BigInt& guarantee) { return {arbitrary_local_colorer, guarantee}; }

/// Extends c0 to an L-coloring of a graph with a width-<= w decomposition, where every list has
/// two colors and c0 has weak diameter at most k.
inline ExtensionResult color_bounded_treewidth(const Graph& g, const RootedTreeDecomposition& td, int w, const ListAssignment& lists,
                                               const Coloring& c0, int k, const EngineOptions& options = {}) {
    if (w < 1 || k < 1) throw ParameterError("color_bounded_treewidth: need w >= 1 and k >= 1");
    if (lists.size() != g.vertex_count()) throw InputError("list assignment does not match the graph");
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (lists.at(v).size() != 2) throw InputError("vertex " + std::to_string(v) + " does not have a 2-list");
    Coloring pre = c0.size() == 0 ? Coloring(g.vertex_count()) : c0;
    if (pre.size() != g.vertex_count()) throw InputError("precoloring does not match the graph");
    for (Vertex v : pre.domain())
        if (!lists.allows(v, pre.at(v))) throw InputError("precolored vertex " + std::to_string(v) + " leaves its list");
    auto worst = worst_monochromatic_pair(g, pre);
    if (worst.a >= 0 && worst.distance > Distance(k)) throw PrecoloringError(worst.a, worst.b, worst.distance, k);

    auto tw = make_tw_construction(g, td, w);
    ExtensionResult result;
    result.bound = bound_tw(w, k);
    if (g.vertex_count() == 0) {
        result.coloring = Coloring(0);
        result.weak_diameter = Distance(0);
        return result;
    }
    ListAssignment forced = lists;
    for (Vertex v : pre.domain()) forced.set(v, {pre.at(v)});
    WitnessMap witnesses;
    VertexSet ones = pre.domain();
    for (NodeId t = 0; t < tw.td.node_count; ++t) {
        VertexSet centers = intersect(ones, tw.td.bags[static_cast<std::size_t>(t)]);
        if (!centers.empty()) witnesses[t] = {std::move(centers), 0};
    }
    EngineInstance inst{g,
                        tw.td,
                        tw.params,
                        forced,
                        {2, w + 1, 1, k},
                        std::move(witnesses),
                        make_arbitrary_colorer(std::max(bound_all_centered(w + 1, 2), BigInt(4))),
                        Coloring(g.vertex_count()),
                        tw.original_node};
    result = extend_coloring(inst, options);
    if (!within(result.weak_diameter, bound_tw(w, k))) throw EngineInvariantError("treewidth coloring exceeds its bound");
    return result;
}

/// g[s] plus, for every component C of g - s, a clique on N^{<=1}[C] ∩ s. Ids follow s.
inline InducedSubgraph contract_pendants(const Graph& g, const VertexSet& s) {
    detail::check_vertex_set(g, s);
    VertexSet keep = detail::normalized(s);
    InducedSubgraph base = induced_subgraph(g, keep);
    VertexSet all(static_cast<std::size_t>(g.vertex_count()));
    std::iota(all.begin(), all.end(), 0);
    auto rest = induced_subgraph(g, set_minus(all, keep));
    std::vector<Edge> edges = base.graph.edges();
    for (const auto& comp : connected_components(rest.graph)) {
        VertexSet touched;
        for (Vertex lv : comp)
            for (Vertex w : g.neighbors(rest.to_old[static_cast<std::size_t>(lv)]))
                if (base.to_new[static_cast<std::size_t>(w)] >= 0) touched.push_back(base.to_new[static_cast<std::size_t>(w)]);
        touched = detail::normalized(std::move(touched));
        for (std::size_t i = 0; i < touched.size(); ++i)
            for (std::size_t j = i + 1; j < touched.size(); ++j) edges.emplace_back(touched[i], touched[j]);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    base.graph = Graph(base.graph.vertex_count(), edges);
    return base;
}

struct SmallExtensionResult {
    Coloring coloring;
    Distance inner_weak_diameter;  // N, measured in the contracted graph
    Distance weak_diameter;
    BigInt bound;                  // (d+2)N + 2d + 2
};

/// Colors the contracted graph with `inner` and gives V(g) - s their smallest list colors.
/// `inner` receives the contracted graph, its vertex -> g map and the restricted lists.
inline SmallExtensionResult small_extension_color(
    const Graph& g, const VertexSet& s, const ListAssignment& lists, int d,
    const std::function<Coloring(const Graph&, const std::vector<Vertex>&, const ListAssignment&)>& inner) {
    if (d < 0) throw ParameterError("small_extension_color: d must be nonnegative");
    if (lists.size() != g.vertex_count()) throw InputError("list assignment does not match the graph");
    VertexSet keep = detail::normalized(s);
    VertexSet all(static_cast<std::size_t>(g.vertex_count()));
    std::iota(all.begin(), all.end(), 0);
    auto rest = induced_subgraph(g, set_minus(all, keep));
    for (const auto& comp : connected_components(rest.graph)) {
        auto piece = induced_subgraph(rest.graph, comp);
        VertexSet every(comp.size());
        std::iota(every.begin(), every.end(), 0);
        auto diameter = weak_diameter(piece.graph, every);
        if (!diameter.is_finite() || diameter.value() > d)
            throw InputError("component of g - s around vertex " + std::to_string(rest.to_old[static_cast<std::size_t>(comp.front())]) + " has diameter " +
                             diameter.to_string() + " > " + std::to_string(d));
    }
    auto contracted = contract_pendants(g, keep);
    ListAssignment inner_lists = lists.restricted(contracted.to_old);
    Coloring inside = inner(contracted.graph, contracted.to_old, inner_lists);
    if (inside.size() != contracted.graph.vertex_count()) throw ContractError("small extension: inner coloring has the wrong size");
    if (auto bad = first_list_violation(inside, inner_lists)) throw ContractError("small extension: inner coloring leaves the list of " + std::to_string(*bad));

    SmallExtensionResult out;
    out.inner_weak_diameter = coloring_weak_diameter(contracted.graph, inside);
    if (!out.inner_weak_diameter.is_finite()) throw ContractError("small extension: inner coloring has unbounded weak diameter");
    out.bound = bound_small_extension(d, out.inner_weak_diameter.value());
    out.coloring = Coloring(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) out.coloring.set(v, lists.at(v).front());
    for (std::size_t i = 0; i < contracted.to_old.size(); ++i) out.coloring.set(contracted.to_old[i], inside.at(static_cast<Vertex>(i)));
    out.weak_diameter = coloring_weak_diameter(g, out.coloring);
    if (!within(out.weak_diameter, out.bound)) throw EngineInvariantError("small extension exceeds (d+2)N + 2d + 2");
    return out;
}

/// Colors subgraphs of torsos. `original` maps the subgraph's vertices to vertices of the input
/// graph; `node` is the decomposition node whose torso contains it.
struct TorsoOracle {
    std::function<Coloring(const Graph& w, const std::vector<Vertex>& original, const ListAssignment& lists, NodeId node)> color;
    BigInt guarantee;
};

/// Brute force on each torso subgraph. A monochromatic component is connected inside W, so the
/// largest bag size minus one is a valid guarantee.
inline TorsoOracle make_brute_torso_oracle(const RootedTreeDecomposition& td, std::int64_t cap = kDefaultEnumerationCap) {
    std::size_t largest = 0;
    for (const auto& bag : td.bags) largest = std::max(largest, bag.size());
    BigInt guarantee = std::max<std::int64_t>(1, static_cast<std::int64_t>(largest) - 1);
    auto color = [cap](const Graph& w, const std::vector<Vertex>&, const ListAssignment& lists, NodeId node) {
        auto found = brute_force_min_weak_diameter(w, lists, cap);
        if (found.status == SearchStatus::too_large) throw InputError("torso at node " + std::to_string(node) + " is too large for brute force");
        return found.witness;
    };
    return {color, guarantee};
}

/// Checks that every torso minus its apex set is bipartite.
inline void validate_apex_sets(const Graph& g, const RootedTreeDecomposition& td, const std::map<NodeId, VertexSet>& apex) {
    for (NodeId t = 0; t < td.node_count; ++t) {
        auto tor = torso(g, td, t);
        VertexSet z;
        if (auto it = apex.find(t); it != apex.end()) z = detail::normalized(it->second);
        VertexSet rest;
        for (std::size_t i = 0; i < tor.vertices.size(); ++i)
            if (!std::binary_search(z.begin(), z.end(), tor.vertices[i])) rest.push_back(static_cast<Vertex>(i));
        if (!is_bipartite(induced_subgraph(tor.graph, rest).graph))
            throw InputError("torso at node " + std::to_string(t) + " minus its apex set is not bipartite");
    }
}

/// Proper 2-coloring of w - z with palette[1], palette[2]; z gets palette[0]. Lists must be the
/// full 3-color palette.
inline Coloring bipartite_apex_torso_oracle(const Graph& w, const VertexSet& z, const ListAssignment& lists) {
    const auto& palette = lists.palette();
    if (palette.size() != 3) throw InputError("bipartite apex oracle needs a 3-color palette");
    for (Vertex v = 0; v < lists.size(); ++v)
        if (lists.at(v) != palette) throw InputError("bipartite apex oracle needs every list to be the palette");
    detail::check_vertex_set(w, z);
    VertexSet apex = detail::normalized(z);
    VertexSet all(static_cast<std::size_t>(w.vertex_count()));
    std::iota(all.begin(), all.end(), 0);
    auto rest = induced_subgraph(w, set_minus(all, apex));
    auto sides = is_bipartite(rest.graph);
    if (!sides) throw InputError("graph minus the apex set is not bipartite");
    Coloring out(w.vertex_count());
    for (Vertex v : apex) out.set(v, palette[0]);
    for (Vertex v : sides->side0) out.set(rest.to_old[static_cast<std::size_t>(v)], palette[1]);
    for (Vertex v : sides->side1) out.set(rest.to_old[static_cast<std::size_t>(v)], palette[2]);
    return out;
}

/// Torso oracle built on bipartite_apex_torso_oracle; apex sets are per node, in input-graph ids.
inline TorsoOracle make_bipartite_apex_oracle(std::map<NodeId, VertexSet> apex) {
    std::size_t xi = 0;
    for (auto& [t, z] : apex) {
        z = detail::normalized(z);
        xi = std::max(xi, z.size());
    }
    auto shared = std::make_shared<std::map<NodeId, VertexSet>>(std::move(apex));
    auto color = [shared](const Graph& w, const std::vector<Vertex>& original, const ListAssignment& lists, NodeId node) {
        VertexSet z;
        if (auto it = shared->find(node); it != shared->end())
            for (std::size_t i = 0; i < original.size(); ++i)
                if (std::binary_search(it->second.begin(), it->second.end(), original[i])) z.push_back(static_cast<Vertex>(i));
        return bipartite_apex_torso_oracle(w, z, lists);
    };
    return {color, bound_add_centered(static_cast<std::int64_t>(xi), 0, 1)};
}

/// Colors g from m-lists given an oracle for subgraphs of the torsos of a decomposition of
/// adhesion at most p. The result has weak diameter at most bound_torso(p, N).
namespace detail {

inline Coloring checked_oracle_call(const TorsoOracle& oracle, const Graph& w, const std::vector<Vertex>& original, const ListAssignment& lists, NodeId node) {
    Coloring c = oracle.color(w, original, lists, node);
    std::string where = "torso oracle at node " + std::to_string(node);
    if (c.size() != w.vertex_count()) throw ContractError(where + ": coloring has the wrong size");
    if (auto bad = first_list_violation(c, lists)) throw ContractError(where + ": vertex " + std::to_string(*bad) + " leaves its list");
    auto far = worst_monochromatic_pair(w, c);
    if (far.a >= 0 && !within(far.distance, oracle.guarantee))
        throw ContractError(where + ": vertices " + std::to_string(original[static_cast<std::size_t>(far.a)]) + " and " +
                            std::to_string(original[static_cast<std::size_t>(far.b)]) + " at distance " + far.distance.to_string() + " > " +
                            to_string(oracle.guarantee));
    return c;
}

}  // namespace detail

inline ExtensionResult color_with_torso_oracle(const Graph& g, const RootedTreeDecomposition& td, int p, const ListAssignment& lists,
                                               const TorsoOracle& oracle, const EngineOptions& options = {}) {
    if (p < 1) throw ParameterError("color_with_torso_oracle: p must be at least 1");
    if (oracle.guarantee < 1) throw ParameterError("color_with_torso_oracle: oracle guarantee must be at least 1");
    if (!oracle.color) throw ParameterError("color_with_torso_oracle: oracle is empty");
    auto report = validate_tree_decomposition(g, td);
    if (!report.ok) throw InputError("invalid tree decomposition: " + report.violations.front().rule + " (" + report.violations.front().location + ")");
    if (adhesion(td) > p) throw InputError("decomposition adhesion " + std::to_string(adhesion(td)) + " exceeds " + std::to_string(p));
    if (lists.size() != g.vertex_count()) throw InputError("list assignment does not match the graph");
    ExtensionResult result;
    result.bound = bound_torso(p, oracle.guarantee);
    if (g.vertex_count() == 0) {
        result.coloring = Coloring(0);
        result.weak_diameter = Distance(0);
        return result;
    }
    const int m = static_cast<int>(lists.at(0).size());
    if (m < 2) throw InputError("color_with_torso_oracle: lists need at least 2 colors");
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (static_cast<int>(lists.at(v).size()) != m) throw InputError("color_with_torso_oracle: lists must all have the same size");

    // A single bag is its own torso: the oracle colors the whole graph.
    if (td.node_count == 1) {
        auto tor = torso(g, td, 0);
        result.coloring = detail::checked_oracle_call(oracle, tor.graph, tor.vertices, lists.restricted(tor.vertices), 0);
        result.weak_diameter = coloring_weak_diameter(g, result.coloring);
        if (!within(result.weak_diameter, result.bound)) throw EngineInvariantError("torso combination exceeds its bound");
        return result;
    }

    // Root at the first nonempty bag and hang it below a new one-vertex root.
    NodeId t0 = -1;
    for (NodeId t = 0; t < td.node_count && t0 < 0; ++t)
        if (!td.bags[static_cast<std::size_t>(t)].empty()) t0 = t;
    RootedTreeDecomposition rooted = reroot(td, t0);
    NodeId top = rooted.node_count;
    rooted.bags.push_back({rooted.bags[static_cast<std::size_t>(t0)].front()});
    rooted.tree_edges.emplace_back(top, t0);
    rooted.root = top;
    ++rooted.node_count;
    std::vector<NodeId> origin(static_cast<std::size_t>(td.node_count));
    std::iota(origin.begin(), origin.end(), 0);
    origin.push_back(kArtificialNode);

    auto torsos = std::make_shared<std::map<NodeId, Torso>>();
    auto local = [&g, &td, torsos, oracle](const ChildExtension& ext, const ListAssignment& ext_lists, NodeId node) {
        auto it = torsos->find(node);
        if (it == torsos->end()) it = torsos->emplace(node, torso(g, td, node)).first;
        const Torso& tor = it->second;
        auto inner = [&](const Graph& w, const std::vector<Vertex>& ids, const ListAssignment& w_lists) {
            std::vector<Vertex> original;
            std::vector<Vertex> at_torso;
            for (Vertex v : ids) {
                Vertex o = ext.original[static_cast<std::size_t>(v)];
                auto pos = std::lower_bound(tor.vertices.begin(), tor.vertices.end(), o);
                if (o < 0 || pos == tor.vertices.end() || *pos != o)
                    throw EngineInvariantError("contracted bag vertex is not in the torso of node " + std::to_string(node));
                original.push_back(o);
                at_torso.push_back(static_cast<Vertex>(pos - tor.vertices.begin()));
            }
            for (auto [a, b] : w.edges())
                if (!tor.graph.adjacent(at_torso[static_cast<std::size_t>(a)], at_torso[static_cast<std::size_t>(b)]))
                    throw EngineInvariantError("contracted graph is not a subgraph of the torso of node " + std::to_string(node));
            return detail::checked_oracle_call(oracle, w, original, w_lists, node);
        };
        return small_extension_color(ext.graph, ext.bag, ext_lists, 1, inner).coloring;
    };
    EngineInstance inst{g, rooted, {p, p}, lists, {m, p, 1, 1}, {}, {local, 3 * oracle.guarantee + 4}, Coloring(g.vertex_count()), origin};
    result = extend_coloring(inst, options);
    if (!within(result.weak_diameter, bound_torso(p, oracle.guarantee))) throw EngineInvariantError("torso combination exceeds its bound");
    return result;
}

}  // namespace wdcolor

#endif
