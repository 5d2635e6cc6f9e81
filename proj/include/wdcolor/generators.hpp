#ifndef WDCOLOR_GENERATORS_HPP
#define WDCOLOR_GENERATORS_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "legitimacy.hpp"

namespace wdcolor {

inline Graph path_graph(int n) {
    if (n < 0) throw ParameterError("path_graph: n must be nonnegative");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, edges);
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw ParameterError("cycle_graph: n must be at least 3");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, edges);
}

inline Graph complete_graph(int n) {
    if (n < 0) throw ParameterError("complete_graph: n must be nonnegative");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(n, edges);
}

/// K_{a,b} with sides [0,a) and [a,a+b).
inline Graph complete_bipartite(int a, int b) {
    if (a < 0 || b < 0) throw ParameterError("complete_bipartite: sides must be nonnegative");
    std::vector<Edge> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
    return Graph(a + b, edges);
}

inline Graph hypercube(int dim) {
    if (dim < 0 || dim > 20) throw ParameterError("hypercube: dimension must be in [0, 20]");
    const int n = 1 << dim;
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v)
        for (int b = 0; b < dim; ++b)
            if (!(v & (1 << b))) edges.emplace_back(v, v | (1 << b));
    return Graph(n, edges);
}

/// Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram 5+i -- 5+(i+2)%5.
inline Graph petersen() {
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return Graph(10, edges);
}

/// The Möbius ladder on 8 vertices: C8 plus the four long diagonals.
inline Graph wagner() {
    std::vector<Edge> edges;
    for (int i = 0; i < 8; ++i) edges.emplace_back(i, (i + 1) % 8);
    for (int i = 0; i < 4; ++i) edges.emplace_back(i, i + 4);
    return Graph(8, edges);
}

/// rows x cols square grid, row-major.
inline Graph grid_graph(int rows, int cols) {
    if (rows < 0 || cols < 0) throw ParameterError("grid_graph: dimensions must be nonnegative");
    std::vector<Edge> edges;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph(rows * cols, edges);
}

/// n x n square grid plus the diagonal (r,c)--(r+1,c+1) of every cell, row-major.
inline Graph triangular_grid(int n) {
    if (n < 1) throw ParameterError("triangular_grid: n must be at least 1");
    std::vector<Edge> edges = grid_graph(n, n).edges();
    for (int r = 0; r + 1 < n; ++r)
        for (int c = 0; c + 1 < n; ++c) edges.emplace_back(r * n + c, (r + 1) * n + c + 1);
    return Graph(n * n, edges);
}

struct KTree {
    Graph graph;
    RootedTreeDecomposition td;
};

/// Random partial w-tree with its width-w decomposition. Each new vertex attaches to w vertices
/// of a bag picked among the few most recent ones, so the instances are long and thin.
/// Edges are then dropped independently with probability drop_prob.
inline KTree random_ktree(int n, int w, std::uint64_t seed, double drop_prob = 0.0, int window = 3) {
    if (w < 0 || n < w + 1) throw ParameterError("random_ktree: need w >= 0 and n >= w + 1");
    if (drop_prob < 0.0 || drop_prob > 1.0) throw ParameterError("random_ktree: drop probability outside [0, 1]");
    if (window < 1) throw ParameterError("random_ktree: window must be at least 1");
    std::mt19937_64 rng(seed);
    auto below = [&rng](std::uint64_t bound) { return static_cast<int>(rng() % bound); };

    KTree out;
    std::vector<Edge> edges;
    VertexSet first;
    for (int v = 0; v <= w; ++v) {
        first.push_back(v);
        for (int u = 0; u < v; ++u) edges.emplace_back(u, v);
    }
    out.td.bags.push_back(first);
    out.td.root = 0;
    for (Vertex v = w + 1; v < n; ++v) {
        int count = static_cast<int>(out.td.bags.size());
        int lo = std::max(0, count - window);
        NodeId parent = lo + below(static_cast<std::uint64_t>(count - lo));
        VertexSet attach = out.td.bags[static_cast<std::size_t>(parent)];
        attach.erase(attach.begin() + below(attach.size()));
        for (Vertex u : attach) edges.emplace_back(u, v);
        attach.push_back(v);
        out.td.bags.push_back(detail::normalized(std::move(attach)));
        out.td.tree_edges.emplace_back(parent, static_cast<NodeId>(out.td.bags.size() - 1));
    }
    out.td.node_count = static_cast<int>(out.td.bags.size());
    if (drop_prob > 0.0) {
        std::vector<Edge> kept;
        for (auto e : edges)
            if (static_cast<double>(rng() >> 11) * 0x1.0p-53 >= drop_prob) kept.push_back(e);
        edges = std::move(kept);
    }
    out.graph = Graph(n, edges);
    return out;
}

struct GadgetOrigin {
    bool is_edge_copy = false;
    Vertex host_vertex = -1;  // q*_{v,i}: v
    int layer = 0;            // q*_{v,i}: i (1-based)
    int host_edge = -1;       // e^t: index into host.edges()
    std::vector<Color> type;  // e^t: t
};

struct GadgetOutput {
    Graph graph;
    ListAssignment lists;
    Bipartition bipartition;  // side0 = the q* vertices, side1 = the edge copies
    std::vector<GadgetOrigin> provenance;
    int host_degree = 0;
};

/// The bipartite k-list gadget over a regular host of girth >= 4: one vertex q*_{v,i} per host
/// vertex and layer, one copy e^t of every host edge per type t, with q*_{v,i} ~ e^t whenever
/// v is an end of e. Colors are 1-based.
inline GadgetOutput build_bipartite_gadget(const Graph& h, int k) {
    if (k < 1) throw ParameterError("build_bipartite_gadget: k must be at least 1");
    if (h.vertex_count() == 0) throw InputError("build_bipartite_gadget: host is empty");
    const int d = h.degree(0);
    for (Vertex v = 0; v < h.vertex_count(); ++v)
        if (h.degree(v) != d) throw InputError("build_bipartite_gadget: host is not regular");
    auto g = girth(h);
    if (g.is_finite() && g.value() < 4) throw InputError("build_bipartite_gadget: host girth is below 4");

    std::int64_t type_count = 1;
    for (int i = 0; i < k; ++i) type_count *= k;
    const auto host_edges = h.edges();
    if (type_count * static_cast<std::int64_t>(host_edges.size()) > 10'000'000) throw ParameterError("build_bipartite_gadget: output too large");

    std::vector<std::vector<Color>> types;
    std::vector<Color> current(static_cast<std::size_t>(k));
    for (std::int64_t code = 0; code < type_count; ++code) {
        std::int64_t rest = code;
        for (int i = k - 1; i >= 0; --i) {
            current[static_cast<std::size_t>(i)] = static_cast<Color>(i * k + 1 + rest % k);
            rest /= k;
        }
        types.push_back(current);
    }

    GadgetOutput out;
    out.host_degree = d;
    const int n = h.vertex_count();
    auto q = [k](Vertex v, int i) { return v * k + (i - 1); };
    std::vector<ColorList> lists;
    for (Vertex v = 0; v < n; ++v)
        for (int i = 1; i <= k; ++i) {
            ColorList interval;
            for (int c = (i - 1) * k + 1; c <= i * k; ++c) interval.push_back(c);
            lists.push_back(interval);
            out.provenance.push_back({false, v, i, -1, {}});
            out.bipartition.side0.push_back(q(v, i));
        }
    std::vector<Edge> edges;
    for (std::size_t e = 0; e < host_edges.size(); ++e) {
        auto [a, b] = host_edges[e];
        for (const auto& t : types) {
            Vertex copy = static_cast<Vertex>(lists.size());
            lists.push_back(t);
            out.provenance.push_back({true, -1, 0, static_cast<int>(e), t});
            out.bipartition.side1.push_back(copy);
            for (int i = 1; i <= k; ++i) {
                edges.emplace_back(q(a, i), copy);
                edges.emplace_back(q(b, i), copy);
            }
        }
    }
    ColorList palette;
    for (int c = 1; c <= k * k; ++c) palette.push_back(c);
    out.graph = Graph(static_cast<int>(lists.size()), edges);
    out.lists = ListAssignment(palette, std::move(lists));
    return out;
}

}  // namespace wdcolor

#endif
