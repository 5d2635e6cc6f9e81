#ifndef WDCOLOR_ENGINE_HPP
#define WDCOLOR_ENGINE_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "decomposition.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "legitimacy.hpp"

namespace wdcolor {

/// Node id used for engine-made nodes that have no counterpart in the colorer's decomposition.
inline constexpr NodeId kArtificialNode = -1;

/// A bag graph plus pendant pieces, handed to a local colorer.
struct ChildExtension {
    Graph graph;
    VertexSet bag;                 // vertices of `graph` that come from the bag
    std::vector<Vertex> original;  // vertex of `graph` -> vertex of the top-level input, -1 for gadget vertices
};

/// Colors child-extensions with a declared weak-diameter guarantee. `node` is a node of the
/// decomposition the colorer was built for.
struct LocalColorer {
    std::function<Coloring(const ChildExtension&, const ListAssignment&, NodeId node)> color;
    BigInt guarantee;
};

struct EngineOptions {
    bool strict_paper = false;  // one gadget per m-subset of the colors in use instead of per occurring list
    bool level_checks = true;   // per-level structural assertions (the final bound check always runs)
};

struct EngineStats {
    std::int64_t calls = 0;
    std::int64_t base_cases = 0;
    std::int64_t component_splits = 0;
    std::int64_t normalizations = 0;
    std::int64_t descents = 0;
    std::int64_t branch_recursions = 0;
    std::int64_t local_calls = 0;
    std::int64_t gadget_vertices = 0;
    std::int64_t gadget_checks = 0;
    std::int64_t descent_checks = 0;
    std::int64_t measure_checks = 0;
    std::int64_t bound_checks = 0;
    int max_depth = 0;
};

struct EngineInstance {
    Graph graph;
    RootedTreeDecomposition td;
    ConstructionParams params;
    ListAssignment lists;
    LegitimacyParams legit;
    WitnessMap witnesses;
    LocalColorer colorer;
    Coloring precoloring;        // c_Z; an empty Coloring means Z is empty
    std::vector<NodeId> origin;  // td node -> colorer node; empty means the identity
};

struct ExtensionResult {
    Coloring coloring;
    Distance weak_diameter;
    BigInt bound;
    EngineStats stats;
};

inline Coloring smallest_list_coloring(const ListAssignment& lists) {
    Coloring out(lists.size());
    for (Vertex v = 0; v < lists.size(); ++v) out.set(v, lists.at(v).front());
    return out;
}

/// Calls `colorer` and verifies lists and guarantee; any breach is a ContractError naming the call.
inline Coloring checked_local_call(const LocalColorer& colorer, const ChildExtension& ext, const ListAssignment& lists, NodeId node,
                                   const std::string& caller) {
    if (!colorer.color) throw ContractError(caller + ": local colorer is empty");
    Coloring c = colorer.color(ext, lists, node);
    std::string where = caller + " at node " + std::to_string(node);
    if (c.size() != ext.graph.vertex_count()) throw ContractError(where + ": coloring has the wrong size");
    if (auto bad = first_list_violation(c, lists))
        throw ContractError(where + ": vertex " + std::to_string(*bad) + " is uncolored or leaves its list");
    auto worst = worst_monochromatic_pair(ext.graph, c);
    if (worst.a >= 0 && !within(worst.distance, colorer.guarantee))
        throw ContractError(where + ": vertices " + std::to_string(worst.a) + " and " + std::to_string(worst.b) + " share a component at distance " +
                            worst.distance.to_string() + " > " + to_string(colorer.guarantee));
    return c;
}

/// Parts of x_e joined whenever two boundary vertices are within 2(k+2)(theta+1)+1 in g_e.
inline std::vector<VertexSet> partition_boundary(const Graph& g_e, const VertexSet& x_e, int k, int theta) {
    detail::check_vertex_set(g_e, x_e);
    if (k < 1 || theta < 0) throw ParameterError("partition_boundary: need k >= 1 and theta >= 0");
    const int reach = 2 * (k + 2) * (theta + 1) + 1;
    std::vector<int> part(x_e.size());
    std::iota(part.begin(), part.end(), 0);
    std::function<int(int)> find = [&](int i) { return part[static_cast<std::size_t>(i)] == i ? i : part[static_cast<std::size_t>(i)] = find(part[static_cast<std::size_t>(i)]); };
    for (std::size_t i = 0; i < x_e.size(); ++i) {
        auto dist = detail::bfs(g_e, std::span<const Vertex>(&x_e[i], 1), reach);
        for (std::size_t j = i + 1; j < x_e.size(); ++j)
            if (dist[static_cast<std::size_t>(x_e[j])] != detail::kUnreached) part[static_cast<std::size_t>(find(static_cast<int>(j)))] = find(static_cast<int>(i));
    }
    std::map<int, VertexSet> groups;
    for (std::size_t i = 0; i < x_e.size(); ++i) groups[find(static_cast<int>(i))].push_back(x_e[i]);
    std::vector<VertexSet> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

/// One edge of U_E: the subtree below it and what the engine needs to know about it.
struct BoundaryEdge {
    TreeEdge edge;                 // (end inside T_0, end outside)
    VertexSet branch;              // X_{T_e}, ids of the level graph
    VertexSet adhesion;            // X_e
    InducedSubgraph local;         // G_e
    std::vector<VertexSet> parts;  // P_e, level ids
    std::vector<int> depth;        // per local vertex: distance from X_e in G_e if <= (k+2)(theta+1), else -1
    std::vector<int> part_of;      // per local vertex within that radius: index of the unique part it is near
};

struct LevelSplit {
    VertexSet ball;              // Z = N^{<=(k+2)(theta+1)}[X_root]
    std::vector<NodeId> core;    // T_0
    VertexSet core_vertices;     // V(G_0)
    std::vector<BoundaryEdge> boundary;
};

/// Computes T_0, U_E, the graphs G_e and the partitions P_e for a connected level.
inline LevelSplit split_level(const Graph& g, const RootedTreeDecomposition& td, int theta, int k) {
    auto topo = topology(td);
    const int radius = (k + 2) * (theta + 1);
    LevelSplit out;
    out.ball = ball(g, td.bags.at(static_cast<std::size_t>(td.root)), radius);
    std::vector<char> in_core(static_cast<std::size_t>(td.node_count), 0);
    for (NodeId t = 0; t < td.node_count; ++t) {
        if (!intersect(td.bags[static_cast<std::size_t>(t)], out.ball).empty()) {
            in_core[static_cast<std::size_t>(t)] = 1;
            out.core.push_back(t);
            out.core_vertices = unite(out.core_vertices, td.bags[static_cast<std::size_t>(t)]);
        }
    }
    if (!in_core[static_cast<std::size_t>(td.root)]) throw EngineInvariantError("root is outside T_0");
    std::vector<TreeEdge> edges = td.tree_edges;
    std::sort(edges.begin(), edges.end());
    for (auto [p, c] : edges) {
        if (!in_core[static_cast<std::size_t>(p)] || in_core[static_cast<std::size_t>(c)]) continue;
        BoundaryEdge b;
        b.edge = {p, c};
        std::vector<NodeId> stack{c};
        while (!stack.empty()) {
            NodeId t = stack.back();
            stack.pop_back();
            if (in_core[static_cast<std::size_t>(t)]) throw EngineInvariantError("T_0 is not a subtree");
            b.branch = unite(b.branch, td.bags[static_cast<std::size_t>(t)]);
            for (NodeId child : topo.children[static_cast<std::size_t>(t)]) stack.push_back(child);
        }
        b.adhesion = intersect(td.bags[static_cast<std::size_t>(p)], td.bags[static_cast<std::size_t>(c)]);
        if (b.adhesion.empty()) throw EngineInvariantError("empty adhesion on a boundary edge");
        if (!intersect(b.branch, out.ball).empty()) throw EngineInvariantError("precolored ball reaches below T_0");
        b.local = induced_subgraph(g, b.branch);
        VertexSet local_adhesion;
        for (Vertex v : b.adhesion) local_adhesion.push_back(b.local.to_new[static_cast<std::size_t>(v)]);
        for (const auto& part : partition_boundary(b.local.graph, local_adhesion, k, theta)) {
            VertexSet level;
            for (Vertex v : part) level.push_back(b.local.to_old[static_cast<std::size_t>(v)]);
            b.parts.push_back(std::move(level));
        }
        b.depth = detail::bfs(b.local.graph, local_adhesion, radius);
        b.part_of.assign(b.local.to_old.size(), -1);
        for (std::size_t i = 0; i < b.parts.size(); ++i) {
            VertexSet sources;
            for (Vertex v : b.parts[i]) sources.push_back(b.local.to_new[static_cast<std::size_t>(v)]);
            auto near = detail::bfs(b.local.graph, sources, radius);
            for (std::size_t v = 0; v < near.size(); ++v) {
                if (near[v] == detail::kUnreached) continue;
                if (b.part_of[v] >= 0) throw EngineInvariantError("vertex near two parts of one boundary partition");
                b.part_of[v] = static_cast<int>(i);
            }
        }
        out.boundary.push_back(std::move(b));
    }
    return out;
}

enum class GadgetKind { Part, Forced, Partner };

struct GadgetInfo {
    GadgetKind kind;
    int boundary;   // index into LevelSplit::boundary
    int part;       // index into parts (Part gadgets), else -1
    int component;  // index of the forced-coloring component (Forced/Partner), else -1
};

/// H: G_0 followed by the gadget vertices, with L_H and provenance.
struct GadgetGraph {
    Graph graph;
    ListAssignment lists;
    std::vector<Vertex> host;                   // H vertex -> level vertex, -1 for gadgets
    std::vector<Vertex> to_h;                   // level vertex -> H vertex, -1 outside G_0
    int core_size = 0;                          // H vertices [0, core_size) are G_0
    std::vector<GadgetInfo> gadgets;            // H vertex core_size + i
    std::vector<VertexSet> leaf_gadgets;        // per boundary edge, its gadget vertices
    std::map<std::tuple<int, int, ColorList>, Vertex> part_gadget;  // (boundary, part, list) -> H vertex
};

namespace detail {

inline void m_subsets(const ColorList& palette, int m, std::size_t from, ColorList& current, std::vector<ColorList>& out) {
    if (static_cast<int>(current.size()) == m) {
        out.push_back(current);
        return;
    }
    for (std::size_t i = from; i < palette.size(); ++i) {
        current.push_back(palette[i]);
        m_subsets(palette, m, i + 1, current, out);
        current.pop_back();
    }
}

inline ColorList normalized_colors(const ColorList& a, const ColorList& b) {
    ColorList out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline ColorList first_colors(const ColorList& palette, int m) {
    if (static_cast<int>(palette.size()) < m) throw InputError("palette has fewer than m colors");
    return ColorList(palette.begin(), palette.begin() + m);
}

}  // namespace detail

inline GadgetGraph build_gadget_graph(const Graph& g, const ListAssignment& lists, const LevelSplit& split, const LegitimacyParams& p,
                                      bool strict_paper = false) {
    GadgetGraph out;
    out.to_h.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    for (Vertex v : split.core_vertices) {
        out.to_h[static_cast<std::size_t>(v)] = static_cast<Vertex>(out.host.size());
        out.host.push_back(v);
    }
    out.core_size = static_cast<int>(out.host.size());
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) {
        Vertex a = out.to_h[static_cast<std::size_t>(u)], b = out.to_h[static_cast<std::size_t>(v)];
        if (a >= 0 && b >= 0) edges.emplace_back(a, b);
    }
    std::vector<ColorList> h_lists;
    for (Vertex v : split.core_vertices) h_lists.push_back(lists.at(v));

    const ColorList& palette = lists.palette();
    std::vector<ColorList> every_subset;
    if (strict_paper) {
        ColorList universe, scratch;
        for (Vertex v = 0; v < lists.size(); ++v) universe = detail::normalized_colors(universe, lists.at(v));
        detail::m_subsets(universe, p.m, 0, scratch, every_subset);
    }
    auto forced = forced_coloring(lists);
    auto components = monochromatic_components(g, forced);
    std::vector<int> component_of(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < components.size(); ++i)
        for (Vertex v : components[i].vertices) component_of[static_cast<std::size_t>(v)] = static_cast<int>(i);

    auto add_gadget = [&](GadgetInfo info, ColorList list, const VertexSet& neighbors_h) {
        Vertex id = static_cast<Vertex>(out.host.size());
        out.host.push_back(-1);
        out.gadgets.push_back(info);
        h_lists.push_back(std::move(list));
        for (Vertex w : neighbors_h) edges.emplace_back(w, id);
        out.leaf_gadgets[static_cast<std::size_t>(info.boundary)].push_back(id);
        return id;
    };

    out.leaf_gadgets.resize(split.boundary.size());
    for (std::size_t e = 0; e < split.boundary.size(); ++e) {
        const auto& b = split.boundary[e];
        std::vector<std::vector<ColorList>> wanted(b.parts.size());
        for (std::size_t i = 0; i < b.parts.size(); ++i) {
            if (strict_paper) {
                wanted[i] = every_subset;
            } else {
                wanted[i].push_back(detail::first_colors(palette, p.m));
            }
        }
        if (!strict_paper) {
            for (std::size_t v = 0; v < b.depth.size(); ++v) {
                int d = b.depth[v];
                if (d <= 0 || d > p.k + 2) continue;
                Vertex level = b.local.to_old[v];
                if (lists.at(level).size() == 1) continue;
                if (b.part_of[v] < 0) throw EngineInvariantError("Z_1 vertex without a boundary part");
                wanted[static_cast<std::size_t>(b.part_of[v])].push_back(lists.at(level));
            }
        }
        for (std::size_t i = 0; i < b.parts.size(); ++i) {
            auto& lists_i = wanted[i];
            std::sort(lists_i.begin(), lists_i.end());
            lists_i.erase(std::unique(lists_i.begin(), lists_i.end()), lists_i.end());
            VertexSet nbrs;
            for (Vertex v : b.parts[i]) nbrs.push_back(out.to_h[static_cast<std::size_t>(v)]);
            for (const auto& list : lists_i) {
                Vertex id = add_gadget({GadgetKind::Part, static_cast<int>(e), static_cast<int>(i), -1}, list, nbrs);
                out.part_gadget[{static_cast<int>(e), static_cast<int>(i), list}] = id;
            }
        }
        // Forced components touching N^{<=1}[X_e] - X_e get a u/u' pair.
        std::vector<int> touching;
        for (std::size_t v = 0; v < b.depth.size(); ++v)
            if (b.depth[v] == 1 && component_of[static_cast<std::size_t>(b.local.to_old[v])] >= 0)
                touching.push_back(component_of[static_cast<std::size_t>(b.local.to_old[v])]);
        std::sort(touching.begin(), touching.end());
        touching.erase(std::unique(touching.begin(), touching.end()), touching.end());
        for (int comp : touching) {
            VertexSet inside;  // V(M) ∩ X_{T_e} - X_e, local ids
            for (Vertex v : components[static_cast<std::size_t>(comp)].vertices) {
                Vertex lv = b.local.to_new[static_cast<std::size_t>(v)];
                if (lv >= 0 && b.depth[static_cast<std::size_t>(lv)] != 0) inside.push_back(lv);
            }
            auto near1 = detail::bfs(b.local.graph, inside, 1);
            auto neark = detail::bfs(b.local.graph, inside, p.k);
            VertexSet nbr_u, nbr_partner;
            for (Vertex x : b.adhesion) {
                Vertex lx = b.local.to_new[static_cast<std::size_t>(x)];
                if (near1[static_cast<std::size_t>(lx)] != detail::kUnreached) nbr_u.push_back(out.to_h[static_cast<std::size_t>(x)]);
                if (neark[static_cast<std::size_t>(lx)] != detail::kUnreached) nbr_partner.push_back(out.to_h[static_cast<std::size_t>(x)]);
            }
            Vertex u = add_gadget({GadgetKind::Forced, static_cast<int>(e), -1, comp}, {components[static_cast<std::size_t>(comp)].color}, nbr_u);
            Vertex partner = add_gadget({GadgetKind::Partner, static_cast<int>(e), -1, comp}, detail::first_colors(palette, p.m), nbr_partner);
            edges.emplace_back(u, partner);
        }
    }
    out.graph = Graph(static_cast<int>(out.host.size()), edges);
    out.lists = ListAssignment(palette, std::move(h_lists));
    return out;
}

/// Role of a descent-level node inside the wrapped colorer.
struct WrappedRole {
    enum Kind { Delegate, GadgetLeaf, Arbitrary } kind = Arbitrary;
    NodeId parent_node = kArtificialNode;  // node of the parent colorer (Delegate only)
};

/// The colorer used one level down: small bags and gadget leaves are colored with smallest
/// list colors, original nodes delegate to `parent` on m-enlarged bag lists and then restore
/// the forced colors.
inline LocalColorer wrap_local_colorer(LocalColorer parent, std::vector<WrappedRole> roles, const BoundParams& bp, int m) {
    BigInt guarantee = FStar{bp}.n1() + FStar{bp}.f2(parent.guarantee);
    auto shared_parent = std::make_shared<LocalColorer>(std::move(parent));
    auto shared_roles = std::make_shared<std::vector<WrappedRole>>(std::move(roles));
    auto color = [shared_parent, shared_roles, m](const ChildExtension& ext, const ListAssignment& lists, NodeId node) {
        if (node < 0 || node >= static_cast<NodeId>(shared_roles->size())) throw EngineInvariantError("wrapped colorer: unknown node " + std::to_string(node));
        const auto& role = (*shared_roles)[static_cast<std::size_t>(node)];
        if (ext.bag.size() <= 1 || role.kind != WrappedRole::Delegate) return smallest_list_coloring(lists);
        if (role.parent_node == kArtificialNode) throw EngineInvariantError("wrapped colorer: engine-made node with a large bag");
        ListAssignment enlarged = lists;
        VertexSet changed;
        for (Vertex v : ext.bag) {
            if (static_cast<int>(lists.at(v).size()) >= m) continue;
            enlarged.set(v, lists.enlarged(lists.at(v), m));
            changed.push_back(v);
        }
        Coloring c = checked_local_call(*shared_parent, ext, enlarged, role.parent_node, "delegated call");
        for (Vertex v : changed) c.set(v, lists.at(v).front());
        return c;
    };
    return {color, guarantee};
}

struct Descent {
    InducedSubgraph graph;              // H - Z, with ids relative to H
    RootedTreeDecomposition td;         // (T'', X'')
    ListAssignment lists;               // L_H'
    WitnessMap witnesses;
    std::vector<WrappedRole> roles;     // per node of td
    VertexSet enlarged;                 // H vertices whose list was enlarged
};

/// Builds (T'', X'') over H - Z with L_H' and per-node witnesses.
inline Descent build_descent_construction(const RootedTreeDecomposition& td, const WitnessMap& witnesses, const std::vector<NodeId>& origin,
                                          const LevelSplit& split, const GadgetGraph& h, const LegitimacyParams& p, int eta) {
    if (eta < 1) throw EngineInvariantError("descent needs eta >= 1");
    const Graph& hg = h.graph;
    VertexSet z;
    for (Vertex v : split.ball) z.push_back(h.to_h[static_cast<std::size_t>(v)]);
    std::sort(z.begin(), z.end());
    VertexSet all(static_cast<std::size_t>(hg.vertex_count()));
    std::iota(all.begin(), all.end(), 0);
    Descent out;
    out.graph = induced_subgraph(hg, set_minus(all, z));

    // L_H': enlarge lists near Z.
    auto near = detail::bfs(hg, z, p.k + p.r);
    std::vector<ColorList> new_lists;
    for (Vertex v : out.graph.to_old) {
        ColorList list = h.lists.at(v);
        if (near[static_cast<std::size_t>(v)] != detail::kUnreached && static_cast<int>(list.size()) < p.m) {
            list = h.lists.enlarged(list, p.m);
            out.enlarged.push_back(v);
        }
        new_lists.push_back(std::move(list));
    }
    out.lists = ListAssignment(h.lists.palette(), std::move(new_lists));

    // T': T_0 plus one leaf per boundary edge.
    auto [core_td, kept] = induced_subtree(td, split.core, td.root);
    const int core_nodes = core_td.node_count;
    RootedTreeDecomposition tp = core_td;
    for (auto& bag : tp.bags) {
        VertexSet mapped;
        for (Vertex v : bag) mapped.push_back(h.to_h[static_cast<std::size_t>(v)]);
        bag = detail::normalized(std::move(mapped));
    }
    std::vector<NodeId> rename(static_cast<std::size_t>(td.node_count), -1);
    for (std::size_t i = 0; i < kept.size(); ++i) rename[static_cast<std::size_t>(kept[i])] = static_cast<NodeId>(i);
    for (std::size_t e = 0; e < split.boundary.size(); ++e) {
        const auto& b = split.boundary[e];
        VertexSet bag;
        for (Vertex v : b.adhesion) bag.push_back(h.to_h[static_cast<std::size_t>(v)]);
        for (Vertex v : h.leaf_gadgets[e]) bag.push_back(v);
        tp.bags.push_back(detail::normalized(std::move(bag)));
        tp.tree_edges.emplace_back(rename[static_cast<std::size_t>(b.edge.first)], static_cast<NodeId>(tp.node_count));
        ++tp.node_count;
    }
    // Bags minus Z, in ids of H - Z.
    RootedTreeDecomposition tz = relabel_bags(tp, out.graph.to_new);
    out.roles.resize(static_cast<std::size_t>(tz.node_count));
    for (NodeId t = 0; t < tz.node_count; ++t) {
        if (t < core_nodes) out.roles[static_cast<std::size_t>(t)] = {WrappedRole::Delegate, origin.at(static_cast<std::size_t>(kept[static_cast<std::size_t>(t)]))};
        else out.roles[static_cast<std::size_t>(t)] = {WrappedRole::GadgetLeaf, kArtificialNode};
    }
    auto witness_for = [&](NodeId t) -> std::optional<CenteredWitness> {
        const auto& bag = out.td.bags[static_cast<std::size_t>(t)];
        if (bag.size() <= 1) return CenteredWitness{bag, 0};
        if (t >= core_nodes) {
            VertexSet centers;
            for (Vertex v : split.boundary[static_cast<std::size_t>(t - core_nodes)].adhesion)
                centers.push_back(out.graph.to_new[static_cast<std::size_t>(h.to_h[static_cast<std::size_t>(v)])]);
            return CenteredWitness{detail::normalized(std::move(centers)), 1};
        }
        auto it = witnesses.find(kept[static_cast<std::size_t>(t)]);
        if (it == witnesses.end()) return std::nullopt;
        VertexSet centers;
        for (Vertex v : it->second.centers) {
            Vertex hv = h.to_h[static_cast<std::size_t>(v)];
            if (hv >= 0 && out.graph.to_new[static_cast<std::size_t>(hv)] >= 0) centers.push_back(out.graph.to_new[static_cast<std::size_t>(hv)]);
        }
        return CenteredWitness{detail::normalized(std::move(centers)), it->second.radius};
    };

    if (eta - 1 == 0) {
        out.td = std::move(tz);
    } else {
        // Thread {v_0} from a new root down to the nonempty node t_0 closest to the old root.
        auto topo = topology(tz);
        std::vector<int> depth(static_cast<std::size_t>(tz.node_count), 0);
        for (NodeId t : topo.preorder)
            if (topo.parent[static_cast<std::size_t>(t)] >= 0) depth[static_cast<std::size_t>(t)] = depth[static_cast<std::size_t>(topo.parent[static_cast<std::size_t>(t)])] + 1;
        NodeId t0 = -1;
        for (NodeId t = 0; t < tz.node_count; ++t) {
            if (tz.bags[static_cast<std::size_t>(t)].empty()) continue;
            if (t0 < 0 || depth[static_cast<std::size_t>(t)] < depth[static_cast<std::size_t>(t0)]) t0 = t;
        }
        if (t0 < 0) throw EngineInvariantError("descent graph has no vertex");
        Vertex v0 = tz.bags[static_cast<std::size_t>(t0)].front();
        for (NodeId t = t0; t >= 0; t = topo.parent[static_cast<std::size_t>(t)]) tz.bags[static_cast<std::size_t>(t)] = unite(tz.bags[static_cast<std::size_t>(t)], {v0});
        NodeId new_root = tz.node_count;
        tz.bags.push_back({v0});
        tz.tree_edges.emplace_back(new_root, tz.root);
        tz.root = new_root;
        ++tz.node_count;
        out.roles.push_back({WrappedRole::Arbitrary, kArtificialNode});
        out.td = std::move(tz);
    }
    for (NodeId t = 0; t < out.td.node_count; ++t)
        if (auto w = witness_for(t)) out.witnesses[t] = *w;
    return out;
}

/// c_{theta+1}: the coloring of Z_{theta+1} that separates each branch from its boundary.
inline Coloring define_buffer_coloring(const Graph& g, const ListAssignment& lists, const LevelSplit& split, const GadgetGraph& h,
                                       const Coloring& c_h, int k) {
    Coloring out(g.vertex_count());
    for (std::size_t e = 0; e < split.boundary.size(); ++e) {
        const auto& b = split.boundary[e];
        for (std::size_t lv = 0; lv < b.depth.size(); ++lv) {
            int d = b.depth[lv];
            if (d < 0) continue;
            Vertex u = b.local.to_old[lv];
            const auto& list = lists.at(u);
            if (d == 0) {
                out.set(u, c_h.at(h.to_h[static_cast<std::size_t>(u)]));
            } else if (list.size() == 1) {
                out.set(u, list.front());
            } else if (d <= k + 2) {
                auto it = h.part_gadget.find({static_cast<int>(e), b.part_of[lv], list});
                if (b.part_of[lv] < 0 || it == h.part_gadget.end())
                    throw EngineInvariantError("no gadget carries the list of vertex " + std::to_string(u));
                out.set(u, c_h.at(it->second));
            } else {
                int ring = (d + k + 1) / (k + 2) - 1;  // u in Z_{ring+1} - Z_ring
                Color avoid = Coloring::kNone;
                if (static_cast<int>(b.adhesion.size()) >= ring) avoid = c_h.at(h.to_h[static_cast<std::size_t>(b.adhesion[static_cast<std::size_t>(ring - 1)])]);
                auto pick = std::find_if(list.begin(), list.end(), [&](Color c) { return c != avoid; });
                out.set(u, *pick);
            }
        }
    }
    return out;
}

namespace detail {

struct Measure {
    int eta;
    std::int64_t size;
    int nodes;
    friend auto operator<=>(const Measure&, const Measure&) = default;
};

struct Frame {
    Graph g;
    RootedTreeDecomposition td;
    ListAssignment lists;
    WitnessMap witnesses;
    std::vector<NodeId> origin;  // td node -> colorer node
    std::vector<Vertex> source;  // g vertex -> top-level vertex, -1 for gadgets
    Coloring cz;
    int eta = 0;
};

class Engine {
public:
    Engine(int theta, LegitimacyParams p, EngineOptions options, EngineStats& stats) : theta_(theta), p_(p), options_(options), stats_(stats) {}

    BoundParams bound_params() const { return {theta_, p_.s, p_.r, p_.k}; }
    int radius() const { return (p_.k + 2) * (theta_ + 1); }

    Coloring extend(const Frame& f, const LocalColorer& colorer, std::optional<Measure> caller, int depth) {
        ++stats_.calls;
        stats_.max_depth = std::max(stats_.max_depth, depth);
        Measure me{f.eta, 2 * static_cast<std::int64_t>(f.g.vertex_count()) - static_cast<std::int64_t>(f.cz.domain().size()), f.td.node_count};
        if (caller) {
            if (!(me < *caller)) throw EngineInvariantError("recursion measure did not decrease");
            ++stats_.measure_checks;
        }
        Coloring c = dispatch(f, colorer, me, depth);
        verify(f, c, colorer.guarantee);
        return c;
    }

private:
    void verify(const Frame& f, const Coloring& c, const BigInt& n) {
        if (c.size() != f.g.vertex_count() || !c.is_total()) throw EngineInvariantError("level result is not total");
        if (auto bad = first_list_violation(c, f.lists)) throw EngineInvariantError("level result leaves the list of vertex " + std::to_string(*bad));
        for (Vertex v : f.cz.domain())
            if (c.at(v) != f.cz.at(v)) throw EngineInvariantError("level result changes the precoloring at vertex " + std::to_string(v));
        BigInt bound = bound_fstar(bound_params(), f.eta, n);
        auto worst = worst_monochromatic_pair(f.g, c);
        if (worst.a >= 0 && !within(worst.distance, bound))
            throw EngineInvariantError("level bound exceeded: vertices " + std::to_string(worst.a) + " and " + std::to_string(worst.b) + " at distance " +
                                       worst.distance.to_string());
        ++stats_.bound_checks;
    }

    Coloring dispatch(const Frame& f, const LocalColorer& colorer, const Measure& me, int depth) {
        const int n = f.g.vertex_count();
        if (n == 0) return Coloring(0);
        if (static_cast<int>(f.cz.domain().size()) == n) return f.cz;
        if (f.eta == 0) return base_case(f, colorer);
        bool empty_bag = std::any_of(f.td.bags.begin(), f.td.bags.end(), [](const VertexSet& b) { return b.empty(); });
        auto components = connected_components(f.g);
        if (components.size() > 1 || empty_bag) return split_components(f, colorer, components, me, depth);
        const auto& root_bag = f.td.bags[static_cast<std::size_t>(f.td.root)];
        VertexSet full = ball(f.g, root_bag, radius());
        if (f.cz.domain() != full) {
            ++stats_.normalizations;
            Frame next = f;
            for (Vertex v : full)
                if (!next.cz.has(v)) next.cz.set(v, f.lists.at(v).front());
            return extend(next, colorer, me, depth);
        }
        return main_step(f, colorer, me, depth);
    }

    Coloring local_call(const Frame& f, const LocalColorer& colorer, const VertexSet& vertices, NodeId center) {
        auto sub = induced_subgraph(f.g, vertices);
        ChildExtension ext;
        ext.graph = sub.graph;
        for (Vertex v : f.td.bags[static_cast<std::size_t>(center)]) ext.bag.push_back(sub.to_new[static_cast<std::size_t>(v)]);
        for (Vertex v : sub.to_old) ext.original.push_back(f.source[static_cast<std::size_t>(v)]);
        ListAssignment lists = f.lists.restricted(sub.to_old);
        NodeId node = f.origin[static_cast<std::size_t>(center)];
        Coloring local;
        if (node == kArtificialNode) {
            if (ext.bag.size() > 1) throw EngineInvariantError("engine-made node with more than one bag vertex");
            local = smallest_list_coloring(lists);
            auto worst = worst_monochromatic_pair(ext.graph, local);
            if (worst.a >= 0 && !within(worst.distance, colorer.guarantee)) throw EngineInvariantError("star around a one-vertex bag is too wide");
        } else {
            ++stats_.local_calls;
            local = checked_local_call(colorer, ext, lists, node, "local colorer");
        }
        Coloring out(f.g.vertex_count());
        for (std::size_t i = 0; i < sub.to_old.size(); ++i) out.set(sub.to_old[i], local.at(static_cast<Vertex>(i)));
        return out;
    }

    // eta = 0: every component of T minus the empty-adhesion edges is a star.
    Coloring base_case(const Frame& f, const LocalColorer& colorer) {
        ++stats_.base_cases;
        auto topo = topology(f.td);
        std::vector<NodeId> top(static_cast<std::size_t>(f.td.node_count), -1);
        for (NodeId t : topo.preorder) {
            NodeId p = topo.parent[static_cast<std::size_t>(t)];
            bool joined = p >= 0 && !intersect(f.td.bags[static_cast<std::size_t>(p)], f.td.bags[static_cast<std::size_t>(t)]).empty();
            top[static_cast<std::size_t>(t)] = joined ? top[static_cast<std::size_t>(p)] : t;
        }
        Coloring out(f.g.vertex_count());
        for (NodeId center = 0; center < f.td.node_count; ++center) {
            if (top[static_cast<std::size_t>(center)] != center) continue;
            VertexSet vertices = f.td.bags[static_cast<std::size_t>(center)];
            for (NodeId leaf : topo.children[static_cast<std::size_t>(center)]) {
                if (top[static_cast<std::size_t>(leaf)] != center) continue;
                if (!topo.children[static_cast<std::size_t>(leaf)].empty()) throw EngineInvariantError("eta = 0 piece is not a star");
                vertices = unite(vertices, f.td.bags[static_cast<std::size_t>(leaf)]);
            }
            if (vertices.empty()) continue;
            Coloring piece = local_call(f, colorer, vertices, center);
            for (Vertex v : vertices) {
                if (out.has(v)) throw EngineInvariantError("stars overlap at vertex " + std::to_string(v));
                out.set(v, piece.at(v));
            }
        }
        for (Vertex v : f.cz.domain()) out.set(v, f.cz.at(v));
        return out;
    }

    Coloring split_components(const Frame& f, const LocalColorer& colorer, const std::vector<VertexSet>& components, const Measure& me, int depth) {
        ++stats_.component_splits;
        auto topo = topology(f.td);
        std::vector<int> node_depth(static_cast<std::size_t>(f.td.node_count), 0);
        for (NodeId t : topo.preorder)
            if (topo.parent[static_cast<std::size_t>(t)] >= 0) node_depth[static_cast<std::size_t>(t)] = node_depth[static_cast<std::size_t>(topo.parent[static_cast<std::size_t>(t)])] + 1;
        Coloring out(f.g.vertex_count());
        for (const auto& comp : components) {
            std::vector<NodeId> nodes;
            NodeId top = -1;
            for (NodeId t = 0; t < f.td.node_count; ++t) {
                if (intersect(f.td.bags[static_cast<std::size_t>(t)], comp).empty()) continue;
                nodes.push_back(t);
                if (top < 0 || node_depth[static_cast<std::size_t>(t)] < node_depth[static_cast<std::size_t>(top)]) top = t;
            }
            auto [sub_td, kept] = induced_subtree(f.td, nodes, top);
            auto sub = induced_subgraph(f.g, comp);
            Frame next;
            next.g = sub.graph;
            next.td = relabel_bags(sub_td, sub.to_new);
            next.lists = f.lists.restricted(sub.to_old);
            next.eta = f.eta;
            for (std::size_t i = 0; i < kept.size(); ++i) {
                next.origin.push_back(f.origin[static_cast<std::size_t>(kept[i])]);
                auto it = f.witnesses.find(kept[i]);
                if (it == f.witnesses.end()) continue;
                VertexSet centers;
                for (Vertex v : it->second.centers)
                    if (sub.to_new[static_cast<std::size_t>(v)] >= 0) centers.push_back(sub.to_new[static_cast<std::size_t>(v)]);
                next.witnesses[static_cast<NodeId>(i)] = {detail::normalized(std::move(centers)), it->second.radius};
            }
            for (Vertex v : sub.to_old) next.source.push_back(f.source[static_cast<std::size_t>(v)]);
            next.cz = Coloring(sub.graph.vertex_count());
            for (std::size_t i = 0; i < sub.to_old.size(); ++i)
                if (f.cz.has(sub.to_old[i])) next.cz.set(static_cast<Vertex>(i), f.cz.at(sub.to_old[i]));
            if (top != f.td.root) {
                // The component misses the root bag: hang it below a one-vertex root.
                Vertex v = next.td.bags[static_cast<std::size_t>(next.td.root)].front();
                NodeId new_root = next.td.node_count;
                next.td.bags.push_back({v});
                next.td.tree_edges.emplace_back(new_root, next.td.root);
                next.td.root = new_root;
                ++next.td.node_count;
                next.origin.push_back(kArtificialNode);
                next.witnesses[new_root] = {{v}, 0};
            }
            Coloring part = extend(next, colorer, me, depth);
            for (std::size_t i = 0; i < sub.to_old.size(); ++i) out.set(sub.to_old[i], part.at(static_cast<Vertex>(i)));
        }
        return out;
    }

    Coloring main_step(const Frame& f, const LocalColorer& colorer, const Measure& me, int depth) {
        ++stats_.descents;
        LevelSplit split = split_level(f.g, f.td, theta_, p_.k);
        GadgetGraph h = build_gadget_graph(f.g, f.lists, split, p_, options_.strict_paper);
        stats_.gadget_vertices += static_cast<std::int64_t>(h.gadgets.size());
        if (options_.level_checks) {
            auto worst = worst_monochromatic_pair(h.graph, forced_coloring(h.lists));
            if (worst.a >= 0 && worst.distance > Distance(p_.k))
                throw EngineInvariantError("gadget graph forced coloring reaches distance " + worst.distance.to_string());
            ++stats_.gadget_checks;
        }
        Descent down = build_descent_construction(f.td, f.witnesses, f.origin, split, h, p_, f.eta);
        if (options_.level_checks) {
            auto report = validate_construction(down.graph.graph, down.td, {f.eta - 1, theta_});
            report.merge(check_legitimate(down.graph.graph, down.td, down.lists, p_, down.witnesses));
            if (!report.ok) throw EngineInvariantError("descent check failed: " + report.violations.front().rule + " (" + report.violations.front().location + ")");
            ++stats_.descent_checks;
        }

        Frame next;
        next.g = down.graph.graph;
        next.td = down.td;
        next.lists = down.lists;
        next.witnesses = down.witnesses;
        next.origin.resize(static_cast<std::size_t>(down.td.node_count));
        std::iota(next.origin.begin(), next.origin.end(), 0);
        for (Vertex hv : down.graph.to_old) {
            Vertex level = h.host[static_cast<std::size_t>(hv)];
            next.source.push_back(level >= 0 ? f.source[static_cast<std::size_t>(level)] : -1);
        }
        next.cz = Coloring(next.g.vertex_count());
        next.eta = f.eta - 1;
        LocalColorer wrapped = wrap_local_colorer(colorer, down.roles, bound_params(), p_.m);
        Coloring below = extend(next, wrapped, me, depth + 1);

        // c_H = c_H' ∪ c_Z, then Z' takes its L_H colors back.
        Coloring c_h(h.graph.vertex_count());
        for (Vertex v : split.ball) c_h.set(h.to_h[static_cast<std::size_t>(v)], f.cz.at(v));
        for (std::size_t i = 0; i < down.graph.to_old.size(); ++i) c_h.set(down.graph.to_old[i], below.at(static_cast<Vertex>(i)));
        for (Vertex v : down.enlarged) c_h.set(v, h.lists.at(v).front());
        if (options_.level_checks) {
            FStar fs{bound_params()};
            BigInt bound = fs.f3(fs.f1(fs(f.eta - 1, fs.n1() + fs.f2(colorer.guarantee))));
            auto worst = worst_monochromatic_pair(h.graph, c_h);
            if (worst.a >= 0 && !within(worst.distance, bound)) throw EngineInvariantError("gadget graph coloring exceeds its bound");
            ++stats_.bound_checks;
        }

        Coloring buffer = define_buffer_coloring(f.g, f.lists, split, h, c_h, p_.k);
        Coloring out(f.g.vertex_count());
        for (Vertex v : split.core_vertices) out.set(v, c_h.at(h.to_h[static_cast<std::size_t>(v)]));
        for (const auto& b : split.boundary) {
            ++stats_.branch_recursions;
            auto cut = truncation(f.td, b.edge);
            Frame branch;
            branch.g = b.local.graph;
            branch.td = relabel_bags(cut.td, b.local.to_new);
            branch.eta = f.eta;
            std::vector<ColorList> lists;
            branch.cz = Coloring(branch.g.vertex_count());
            for (std::size_t i = 0; i < b.local.to_old.size(); ++i) {
                Vertex v = b.local.to_old[i];
                ColorList list = f.lists.at(v);
                if (buffer.has(v)) {
                    if (static_cast<int>(list.size()) < p_.m) list = f.lists.enlarged(list, p_.m);
                    branch.cz.set(static_cast<Vertex>(i), buffer.at(v));
                }
                lists.push_back(std::move(list));
                branch.source.push_back(f.source[static_cast<std::size_t>(v)]);
            }
            branch.lists = ListAssignment(f.lists.palette(), std::move(lists));
            for (NodeId t = 0; t < branch.td.node_count; ++t) {
                NodeId old = cut.original_node[static_cast<std::size_t>(t)];
                branch.origin.push_back(f.origin[static_cast<std::size_t>(old >= 0 ? old : b.edge.first)]);
                if (old < 0) continue;
                auto it = f.witnesses.find(old);
                if (it == f.witnesses.end()) continue;
                VertexSet centers;
                for (Vertex v : it->second.centers) centers.push_back(b.local.to_new[static_cast<std::size_t>(v)]);
                branch.witnesses[t] = {detail::normalized(std::move(centers)), it->second.radius};
            }
            Coloring part = extend(branch, colorer, me, depth);
            for (std::size_t i = 0; i < b.local.to_old.size(); ++i) {
                Vertex v = b.local.to_old[i];
                Color c = part.at(static_cast<Vertex>(i));
                if (out.has(v) && out.at(v) != c) throw EngineInvariantError("branch disagrees with the core at vertex " + std::to_string(v));
                out.set(v, c);
            }
        }
        return out;
    }

    int theta_;
    LegitimacyParams p_;
    EngineOptions options_;
    EngineStats& stats_;
};

}  // namespace detail

/// Extends the precoloring of an (eta, theta)-construction to a full list-coloring whose weak
/// diameter is at most f*(eta, N), N being the local colorer's guarantee.
inline ExtensionResult extend_coloring(const EngineInstance& inst, const EngineOptions& options = {}) {
    const auto& g = inst.graph;
    const auto& p = inst.legit;
    const int theta = inst.params.theta;
    if (p.m < 2 || p.r < 1 || p.k < 1 || p.s < theta) throw ParameterError("engine needs m >= 2, r >= 1, k >= 1 and s >= theta");
    if (inst.colorer.guarantee < 4) throw ParameterError("local colorer guarantee must be at least 4");
    if (!inst.colorer.color) throw ParameterError("local colorer is empty");
    auto report = validate_construction(g, inst.td, inst.params);
    if (!report.ok) throw InputError("not an (eta, theta)-construction: " + report.violations.front().rule + " (" + report.violations.front().location + ")");
    if (inst.lists.size() != g.vertex_count()) throw InputError("list assignment does not match the graph");
    if (static_cast<int>(inst.lists.palette().size()) < p.m) throw InputError("palette has fewer than m colors");
    auto legit = check_legitimate(g, inst.td, inst.lists, p, inst.witnesses);
    if (!legit.ok) throw InputError("list assignment is not legitimate: " + legit.violations.front().rule + " (" + legit.violations.front().location + ")");

    Coloring cz = inst.precoloring.size() == 0 ? Coloring(g.vertex_count()) : inst.precoloring;
    if (cz.size() != g.vertex_count()) throw InputError("precoloring does not match the graph");
    if (!cz.empty()) {
        VertexSet allowed = ball(g, inst.td.bags.at(static_cast<std::size_t>(inst.td.root)), (p.k + 2) * (theta + 1));
        for (Vertex v : cz.domain()) {
            if (!std::binary_search(allowed.begin(), allowed.end(), v)) throw InputError("precolored vertex " + std::to_string(v) + " is outside the root ball");
            if (!inst.lists.allows(v, cz.at(v))) throw InputError("precolored vertex " + std::to_string(v) + " leaves its list");
        }
    }

    detail::Frame top;
    top.g = g;
    top.td = inst.td;
    top.lists = inst.lists;
    top.witnesses = inst.witnesses;
    top.origin = inst.origin;
    if (top.origin.empty()) {
        top.origin.resize(static_cast<std::size_t>(inst.td.node_count));
        std::iota(top.origin.begin(), top.origin.end(), 0);
    }
    if (static_cast<int>(top.origin.size()) != inst.td.node_count) throw InputError("origin map does not match the decomposition");
    top.source.resize(static_cast<std::size_t>(g.vertex_count()));
    std::iota(top.source.begin(), top.source.end(), 0);
    top.cz = cz;
    top.eta = inst.params.eta;

    ExtensionResult result;
    detail::Engine engine(theta, p, options, result.stats);
    result.coloring = engine.extend(top, inst.colorer, std::nullopt, 0);
    result.weak_diameter = coloring_weak_diameter(g, result.coloring);
    result.bound = bound_fstar({theta, p.s, p.r, p.k}, inst.params.eta, inst.colorer.guarantee);
    return result;
}

}  // namespace wdcolor

#endif
