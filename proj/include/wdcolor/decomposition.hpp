#ifndef WDCOLOR_DECOMPOSITION_HPP
#define WDCOLOR_DECOMPOSITION_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace wdcolor {

using NodeId = int;
using TreeEdge = std::pair<NodeId, NodeId>;  // (parent, child)

/// Rooted tree of bags over a graph. Nodes are [0, node_count); a decomposition of
/// the empty graph may have no nodes, in which case root is -1.
struct RootedTreeDecomposition {
    int node_count = 0;
    NodeId root = -1;
    std::vector<TreeEdge> tree_edges;
    std::vector<VertexSet> bags;
};

struct ConstructionParams {
    int eta = 0;
    int theta = 0;
};

struct Violation {
    std::string rule;
    std::string location;
    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    void add(std::string rule, std::string location) {
        ok = false;
        violations.push_back({std::move(rule), std::move(location)});
    }
    void merge(const ValidationReport& other) {
        for (const auto& v : other.violations) add(v.rule, v.location);
    }
    bool has(const std::string& rule) const {
        return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
    }
};

/// Parent/children view of a well-formed rooted tree.
struct TreeTopology {
    std::vector<NodeId> parent;  // -1 at the root
    std::vector<std::vector<NodeId>> children;
    std::vector<NodeId> preorder;
};

namespace detail {

inline std::string node_label(NodeId t) { return "node " + std::to_string(t); }

inline std::string shape_problem(const RootedTreeDecomposition& td) {
    if (td.node_count < 0) return "negative node count";
    if (static_cast<int>(td.bags.size()) != td.node_count) return "bag count differs from node count";
    if (td.node_count == 0) return td.tree_edges.empty() ? std::string{} : "edges without nodes";
    if (td.root < 0 || td.root >= td.node_count) return "root out of range";
    if (static_cast<int>(td.tree_edges.size()) != td.node_count - 1) return "edge count is not node count - 1";
    std::vector<int> indegree(static_cast<std::size_t>(td.node_count), 0);
    for (auto [p, c] : td.tree_edges) {
        if (p < 0 || c < 0 || p >= td.node_count || c >= td.node_count) return "tree edge endpoint out of range";
        if (p == c) return "tree self-loop";
        ++indegree[static_cast<std::size_t>(c)];
    }
    for (NodeId t = 0; t < td.node_count; ++t) {
        int want = t == td.root ? 0 : 1;
        if (indegree[static_cast<std::size_t>(t)] != want) return "in-degree of " + node_label(t) + " is not " + std::to_string(want);
    }
    return {};
}

}  // namespace detail

/// Throws InputError if `td` is not a rooted tree.
inline TreeTopology topology(const RootedTreeDecomposition& td) {
    if (auto problem = detail::shape_problem(td); !problem.empty()) throw InputError("not a rooted tree: " + problem);
    TreeTopology out;
    const auto n = static_cast<std::size_t>(td.node_count);
    out.parent.assign(n, -1);
    out.children.assign(n, {});
    for (auto [p, c] : td.tree_edges) {
        out.parent[static_cast<std::size_t>(c)] = p;
        out.children[static_cast<std::size_t>(p)].push_back(c);
    }
    for (auto& list : out.children) std::sort(list.begin(), list.end());
    if (n == 0) return out;
    std::vector<NodeId> stack{td.root};
    while (!stack.empty()) {
        NodeId t = stack.back();
        stack.pop_back();
        out.preorder.push_back(t);
        const auto& kids = out.children[static_cast<std::size_t>(t)];
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    if (out.preorder.size() != n) throw InputError("not a rooted tree: some node is unreachable from the root");
    return out;
}

inline VertexSet intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet unite(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Checks rooted-tree shape and the three tree-decomposition axioms; every violation is reported.
inline ValidationReport validate_tree_decomposition(const Graph& g, const RootedTreeDecomposition& td) {
    ValidationReport report;
    if (auto problem = detail::shape_problem(td); !problem.empty()) {
        report.add("tree-shape", problem);
        return report;
    }
    try {
        topology(td);
    } catch (const InputError& e) {
        report.add("tree-shape", e.what());
        return report;
    }
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<std::vector<NodeId>> holders(n);
    for (NodeId t = 0; t < td.node_count; ++t) {
        const auto& bag = td.bags[static_cast<std::size_t>(t)];
        if (!std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end())
            report.add("bag-format", detail::node_label(t) + " bag is not sorted and duplicate-free");
        for (Vertex v : bag) {
            if (!g.contains(v)) {
                report.add("bag-vertex", detail::node_label(t) + " holds invalid vertex " + std::to_string(v));
                continue;
            }
            holders[static_cast<std::size_t>(v)].push_back(t);
        }
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (holders[static_cast<std::size_t>(v)].empty()) report.add("vertex-coverage", "vertex " + std::to_string(v) + " is in no bag");
    for (auto [u, v] : g.edges()) {
        const auto& hu = holders[static_cast<std::size_t>(u)];
        const auto& hv = holders[static_cast<std::size_t>(v)];
        bool covered = std::any_of(hu.begin(), hu.end(), [&](NodeId t) { return std::find(hv.begin(), hv.end(), t) != hv.end(); });
        if (!covered) report.add("edge-coverage", "edge (" + std::to_string(u) + "," + std::to_string(v) + ") lies in no bag");
    }
    // Nodes holding v form a subtree iff exactly one of them has a parent not holding v.
    std::vector<NodeId> parent(static_cast<std::size_t>(td.node_count), -1);
    for (auto [p, c] : td.tree_edges) parent[static_cast<std::size_t>(c)] = p;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const auto& hv = holders[static_cast<std::size_t>(v)];
        int tops = 0;
        for (NodeId t : hv) {
            NodeId p = parent[static_cast<std::size_t>(t)];
            if (p < 0 || !std::binary_search(td.bags[static_cast<std::size_t>(p)].begin(), td.bags[static_cast<std::size_t>(p)].end(), v)) ++tops;
        }
        if (tops > 1) report.add("connectivity", "bags holding vertex " + std::to_string(v) + " are not connected in the tree");
    }
    return report;
}

inline int adhesion(const RootedTreeDecomposition& td) {
    int best = 0;
    for (auto [p, c] : td.tree_edges)
        best = std::max(best, static_cast<int>(intersect(td.bags.at(static_cast<std::size_t>(p)), td.bags.at(static_cast<std::size_t>(c))).size()));
    return best;
}

/// Largest bag size minus one (-1 when every bag is empty or there are no nodes).
inline int width(const RootedTreeDecomposition& td) {
    int best = -1;
    for (const auto& bag : td.bags) best = std::max(best, static_cast<int>(bag.size()) - 1);
    return best;
}

/// Same tree with every bag intersected with `s` (vertex ids unchanged).
inline RootedTreeDecomposition restrict_bags(const RootedTreeDecomposition& td, std::span<const Vertex> s) {
    VertexSet keep = detail::normalized({s.begin(), s.end()});
    RootedTreeDecomposition out = td;
    for (auto& bag : out.bags) bag = intersect(bag, keep);
    return out;
}

/// Renames bag vertices through `to_new` (entries < 0 are dropped).
inline RootedTreeDecomposition relabel_bags(const RootedTreeDecomposition& td, const std::vector<Vertex>& to_new) {
    RootedTreeDecomposition out = td;
    for (auto& bag : out.bags) {
        VertexSet renamed;
        for (Vertex v : bag) {
            Vertex w = to_new.at(static_cast<std::size_t>(v));
            if (w >= 0) renamed.push_back(w);
        }
        bag = detail::normalized(std::move(renamed));
    }
    return out;
}

struct Torso {
    Graph graph;        // on positions 0..|X_t|-1
    VertexSet vertices; // position -> vertex of the host graph
};

/// G[X_t] with X_t ∩ X_t' completed to a clique for every tree neighbour t'.
inline Torso torso(const Graph& g, const RootedTreeDecomposition& td, NodeId t) {
    if (t < 0 || t >= td.node_count) throw InputError("torso: invalid node " + std::to_string(t));
    const auto& bag = td.bags[static_cast<std::size_t>(t)];
    auto induced = induced_subgraph(g, bag);
    std::vector<Edge> edges = induced.graph.edges();
    for (auto [p, c] : td.tree_edges) {
        if (p != t && c != t) continue;
        VertexSet shared = intersect(td.bags[static_cast<std::size_t>(p)], td.bags[static_cast<std::size_t>(c)]);
        for (std::size_t i = 0; i < shared.size(); ++i)
            for (std::size_t j = i + 1; j < shared.size(); ++j)
                edges.emplace_back(induced.to_new[static_cast<std::size_t>(shared[i])], induced.to_new[static_cast<std::size_t>(shared[j])]);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return {Graph(static_cast<int>(bag.size()), edges), induced.to_old};
}

struct Truncation {
    RootedTreeDecomposition td;
    NodeId root = -1;                  // the new node t*_e
    std::vector<NodeId> original_node; // node of td -> node of the input (-1 for the new root)
};

/// The side of T - e away from the root, hung below a new root whose bag is the adhesion set of e.
inline Truncation truncation(const RootedTreeDecomposition& td, TreeEdge e) {
    auto topo = topology(td);
    if (std::find(td.tree_edges.begin(), td.tree_edges.end(), e) == td.tree_edges.end())
        throw InputError("truncation: (" + std::to_string(e.first) + "," + std::to_string(e.second) + ") is not a tree edge");
    std::vector<NodeId> below;
    std::vector<NodeId> stack{e.second};
    while (!stack.empty()) {
        NodeId t = stack.back();
        stack.pop_back();
        below.push_back(t);
        for (NodeId c : topo.children[static_cast<std::size_t>(t)]) stack.push_back(c);
    }
    std::sort(below.begin(), below.end());
    std::map<NodeId, NodeId> rename;
    Truncation out;
    for (NodeId t : below) {
        rename[t] = static_cast<NodeId>(out.original_node.size());
        out.original_node.push_back(t);
        out.td.bags.push_back(td.bags[static_cast<std::size_t>(t)]);
    }
    out.root = static_cast<NodeId>(below.size());
    out.original_node.push_back(-1);
    out.td.bags.push_back(intersect(td.bags[static_cast<std::size_t>(e.first)], td.bags[static_cast<std::size_t>(e.second)]));
    out.td.node_count = static_cast<int>(out.td.bags.size());
    out.td.root = out.root;
    out.td.tree_edges.emplace_back(out.root, rename.at(e.second));
    for (auto [p, c] : td.tree_edges)
        if (rename.count(p) && rename.count(c)) out.td.tree_edges.emplace_back(rename.at(p), rename.at(c));
    return out;
}

/// Checks the (eta, theta)-construction conditions on top of a valid rooted decomposition.
inline ValidationReport validate_construction(const Graph& g, const RootedTreeDecomposition& td, ConstructionParams p) {
    ValidationReport report;
    if (p.eta < 0 || p.eta > p.theta) {
        report.add("params", "need 0 <= eta <= theta");
        return report;
    }
    auto base = validate_tree_decomposition(g, td);
    if (!base.ok) return base;
    auto topo = topology(td);
    for (auto [parent, child] : td.tree_edges) {
        const auto& up = td.bags[static_cast<std::size_t>(parent)];
        const auto& down = td.bags[static_cast<std::size_t>(child)];
        auto shared = intersect(up, down);
        std::string where = "edge (" + std::to_string(parent) + "," + std::to_string(child) + ")";
        if (static_cast<int>(shared.size()) > p.theta) report.add("adhesion", where + " has adhesion " + std::to_string(shared.size()));
        if (static_cast<int>(shared.size()) <= p.eta) continue;
        if (!topo.children[static_cast<std::size_t>(child)].empty()) report.add("C1-childless", where + ": no childless end");
        auto rest = induced_subgraph(g, set_minus(down, up));
        for (const auto& comp : connected_components(rest.graph))
            if (comp.size() > 2) {
                report.add("C1-components", where + ": residual component with " + std::to_string(comp.size()) + " vertices");
                break;
            }
    }
    if (td.node_count > 0) {
        const auto& root_bag = td.bags[static_cast<std::size_t>(td.root)];
        if (static_cast<int>(root_bag.size()) > p.theta) report.add("C2-size", "root bag has " + std::to_string(root_bag.size()) + " vertices");
        if (p.eta > 0 && root_bag.empty()) report.add("C2", "root bag is empty while eta > 0");
    }
    return report;
}

/// Re-roots the underlying tree at `new_root`; bags and node ids are unchanged.
inline RootedTreeDecomposition reroot(const RootedTreeDecomposition& td, NodeId new_root) {
    topology(td);
    if (new_root < 0 || new_root >= td.node_count) throw InputError("reroot: invalid node");
    std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(td.node_count));
    for (auto [p, c] : td.tree_edges) {
        adj[static_cast<std::size_t>(p)].push_back(c);
        adj[static_cast<std::size_t>(c)].push_back(p);
    }
    RootedTreeDecomposition out = td;
    out.root = new_root;
    out.tree_edges.clear();
    std::vector<char> seen(static_cast<std::size_t>(td.node_count), 0);
    std::vector<NodeId> queue{new_root};
    seen[static_cast<std::size_t>(new_root)] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        NodeId t = queue[head];
        auto nbrs = adj[static_cast<std::size_t>(t)];
        std::sort(nbrs.begin(), nbrs.end());
        for (NodeId u : nbrs) {
            if (seen[static_cast<std::size_t>(u)]) continue;
            seen[static_cast<std::size_t>(u)] = 1;
            out.tree_edges.emplace_back(t, u);
            queue.push_back(u);
        }
    }
    return out;
}

/// Keeps the nodes in `keep` (which must induce a subtree containing `new_root`), renumbered
/// in ascending order. Returns the new decomposition and the kept-node list (new id -> old id).
inline std::pair<RootedTreeDecomposition, std::vector<NodeId>> induced_subtree(const RootedTreeDecomposition& td,
                                                                               std::vector<NodeId> keep, NodeId new_root) {
    std::sort(keep.begin(), keep.end());
    std::vector<NodeId> rename(static_cast<std::size_t>(td.node_count), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) rename[static_cast<std::size_t>(keep[i])] = static_cast<NodeId>(i);
    RootedTreeDecomposition sub;
    sub.node_count = static_cast<int>(keep.size());
    for (NodeId t : keep) sub.bags.push_back(td.bags[static_cast<std::size_t>(t)]);
    for (auto [p, c] : td.tree_edges)
        if (rename[static_cast<std::size_t>(p)] >= 0 && rename[static_cast<std::size_t>(c)] >= 0)
            sub.tree_edges.emplace_back(rename[static_cast<std::size_t>(p)], rename[static_cast<std::size_t>(c)]);
    sub.root = keep.empty() ? -1 : rename.at(static_cast<std::size_t>(new_root));
    if (!keep.empty()) sub = reroot(sub, sub.root);
    return {std::move(sub), std::move(keep)};
}

struct TwConstruction {
    RootedTreeDecomposition td;
    ConstructionParams params;
    std::vector<NodeId> original_node;  // node of td -> node of the input decomposition
};

/// Normalizes a width-<=w decomposition into a (w+1, w+1)-construction: empty-bag subtrees
/// are pruned and the root moves to the smallest nonempty bag when the current root bag is empty.
inline TwConstruction make_tw_construction(const Graph& g, const RootedTreeDecomposition& td, int w) {
    if (w < 0) throw ParameterError("width bound must be nonnegative");
    auto report = validate_tree_decomposition(g, td);
    if (!report.ok) throw InputError("invalid tree decomposition: " + report.violations.front().rule + " (" + report.violations.front().location + ")");
    if (width(td) > w) throw InputError("decomposition width " + std::to_string(width(td)) + " exceeds " + std::to_string(w));
    TwConstruction out;
    out.params = {w + 1, w + 1};
    if (g.vertex_count() == 0) return out;  // zero-node construction of the empty graph
    std::vector<NodeId> nonempty;
    for (NodeId t = 0; t < td.node_count; ++t)
        if (!td.bags[static_cast<std::size_t>(t)].empty()) nonempty.push_back(t);
    if (nonempty.empty()) throw InputError("invalid decomposition: nonempty graph but every bag is empty");

    NodeId root = td.bags[static_cast<std::size_t>(td.root)].empty() ? nonempty.front() : td.root;
    auto rooted = reroot(td, root);
    auto topo = topology(rooted);
    // A node survives iff its subtree holds some vertex.
    std::vector<char> alive(static_cast<std::size_t>(rooted.node_count), 0);
    for (auto it = topo.preorder.rbegin(); it != topo.preorder.rend(); ++it) {
        NodeId t = *it;
        bool any = !rooted.bags[static_cast<std::size_t>(t)].empty();
        for (NodeId c : topo.children[static_cast<std::size_t>(t)]) any = any || alive[static_cast<std::size_t>(c)];
        alive[static_cast<std::size_t>(t)] = any;
    }
    std::vector<NodeId> keep;
    for (NodeId t = 0; t < rooted.node_count; ++t)
        if (alive[static_cast<std::size_t>(t)]) keep.push_back(t);
    auto [pruned, kept] = induced_subtree(rooted, keep, root);
    out.td = std::move(pruned);
    out.original_node = std::move(kept);
    return out;
}

}  // namespace wdcolor

#endif
