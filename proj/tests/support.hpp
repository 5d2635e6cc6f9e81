// Fixtures and reference checks shared by the unit suite and the acceptance binary.
// The reference checks deliberately avoid the library's BFS and component code.
#ifndef WDCOLOR_TESTS_SUPPORT_HPP
#define WDCOLOR_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "wdcolor.hpp"

namespace wdtest {

using namespace wdcolor;

inline constexpr std::int64_t kFar = std::int64_t{1} << 40;

// Floyd-Warshall over the edge list.
inline std::vector<std::vector<std::int64_t>> all_pairs(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, kFar));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (auto [u, v] : g.edges()) d[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = d[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
    return d;
}

// Union-find over monochromatic edges, then the largest pairwise distance inside a class.
// Returns -1 when two vertices of one component are disconnected in g.
inline std::int64_t reference_weak_diameter(const Graph& g, const Coloring& c) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<std::size_t> up(n);
    std::iota(up.begin(), up.end(), 0);
    auto find = [&](std::size_t x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    };
    for (auto [u, v] : g.edges())
        if (c.has(u) && c.has(v) && c.at(u) == c.at(v)) up[find(static_cast<std::size_t>(u))] = find(static_cast<std::size_t>(v));
    auto d = all_pairs(g);
    std::int64_t best = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!c.has(static_cast<Vertex>(i)) || !c.has(static_cast<Vertex>(j)) || find(i) != find(j)) continue;
            if (d[i][j] >= kFar) return -1;
            best = std::max(best, d[i][j]);
        }
    return best;
}

inline bool respects(const Coloring& c, const ListAssignment& lists) {
    if (c.size() != lists.size()) return false;
    for (Vertex v = 0; v < lists.size(); ++v) {
        if (!c.has(v)) return false;
        const auto& l = lists.at(v);
        if (std::find(l.begin(), l.end(), c.at(v)) == l.end()) return false;
    }
    return true;
}

inline bool extends(const Coloring& c, const Coloring& pre) {
    for (Vertex v = 0; v < pre.size(); ++v)
        if (pre.has(v) && (!c.has(v) || c.at(v) != pre.at(v))) return false;
    return true;
}

// Plain int64 arithmetic for the base formulas, written out from their definitions.
inline std::int64_t reference_all_centered(std::int64_t k, std::int64_t r) {
    std::int64_t total = 2 * r;
    for (std::int64_t i = 1; i < k; ++i) total += 2 * r + 1;
    return total;
}

inline std::int64_t reference_add_centered(std::int64_t k, std::int64_t r, std::int64_t n) { return reference_all_centered(k, n + r + 1); }

inline std::vector<ColorList> random_lists(int n, const ColorList& palette, int size, std::mt19937_64& rng) {
    std::vector<ColorList> out;
    for (int v = 0; v < n; ++v) {
        ColorList l = palette;
        std::shuffle(l.begin(), l.end(), rng);
        l.resize(static_cast<std::size_t>(size));
        std::sort(l.begin(), l.end());
        out.push_back(l);
    }
    return out;
}

// Paints a few balls of radius floor(k/2) with one color each, keeping a ball only if the
// result still has weak diameter at most k.
inline Coloring ball_painted_precoloring(const Graph& g, const ListAssignment& lists, int k, int balls, std::mt19937_64& rng) {
    Coloring c(g.vertex_count());
    if (g.vertex_count() == 0) return c;
    for (int b = 0; b < balls; ++b) {
        Vertex center = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(g.vertex_count()));
        const auto& l = lists.at(center);
        Color color = l[rng() % l.size()];
        Coloring before = c;
        for (Vertex u : ball(g, std::vector<Vertex>{center}, k / 2))
            if (!c.has(u) && lists.allows(u, color)) c.set(u, color);
        auto d = reference_weak_diameter(g, c);
        if (d < 0 || d > k) c = before;
    }
    return c;
}

struct GluedFixture {
    Graph graph;
    RootedTreeDecomposition td;
    int p = 1;
};

// Cycles of length `size` glued along p consecutive vertices, each child attached opposite to
// where its parent was attached, so chains of torsos have a large diameter.
inline GluedFixture glued_cycles(int p, int torsos, int size, double chord_prob, std::mt19937_64& rng) {
    GluedFixture out;
    out.p = p;
    std::vector<std::vector<Vertex>> order;  // cycle order of every torso, glue first
    std::vector<Edge> edges;
    int n = 0;
    std::bernoulli_distribution chord(chord_prob);
    for (int t = 0; t < torsos; ++t) {
        std::vector<Vertex> cyc;
        if (t > 0) {
            NodeId parent = (rng() % 3 == 0) ? static_cast<NodeId>(rng() % static_cast<std::uint64_t>(t)) : t - 1;
            const auto& pc = order[static_cast<std::size_t>(parent)];
            std::size_t at = pc.size() / 2;
            for (int i = 0; i < p; ++i) cyc.push_back(pc[(at + static_cast<std::size_t>(i)) % pc.size()]);
            out.td.tree_edges.emplace_back(parent, t);
        }
        while (static_cast<int>(cyc.size()) < size) cyc.push_back(n++);
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            Vertex a = cyc[i], b = cyc[(i + 1) % cyc.size()];
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        for (std::size_t i = 0; i < cyc.size(); ++i)
            for (std::size_t j = i + 2; j < cyc.size(); ++j)
                if (chord(rng)) edges.emplace_back(std::min(cyc[i], cyc[j]), std::max(cyc[i], cyc[j]));
        out.td.bags.push_back(detail::normalized(cyc));
        order.push_back(std::move(cyc));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    out.td.node_count = torsos;
    out.td.root = 0;
    out.graph = Graph(n, edges);
    return out;
}

// Graph with every vertex within r of one of `centers` (the first vertices): trees hung from
// the centers layer by layer, plus random extra edges.
inline Graph centered_graph(int n, int centers, int r, double extra, std::mt19937_64& rng) {
    std::vector<Edge> edges;
    std::vector<int> depth(static_cast<std::size_t>(n), 0);
    for (Vertex v = centers; v < n; ++v) {
        std::vector<Vertex> parents;
        for (Vertex u = 0; u < v; ++u)
            if (depth[static_cast<std::size_t>(u)] < r) parents.push_back(u);
        if (parents.empty()) {
            depth[static_cast<std::size_t>(v)] = 0;
            continue;
        }
        Vertex u = parents[rng() % parents.size()];
        depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(u)] + 1;
        edges.emplace_back(u, v);
    }
    std::bernoulli_distribution add(extra);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (add(rng)) edges.emplace_back(u, v);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph(n, edges);
}

inline Coloring random_coloring(int n, int colors, std::mt19937_64& rng) {
    Coloring c(n);
    for (Vertex v = 0; v < n; ++v) c.set(v, 1 + static_cast<Color>(rng() % static_cast<std::uint64_t>(colors)));
    return c;
}

// Small graphs of girth >= 4 used for the cycle-distance checks.
inline std::vector<std::pair<std::string, Graph>> girth_fixtures() {
    std::vector<std::pair<std::string, Graph>> out;
    for (int n = 4; n <= 12; ++n) out.emplace_back("C" + std::to_string(n), cycle_graph(n));
    out.emplace_back("petersen", petersen());
    out.emplace_back("cube", hypercube(3));
    out.emplace_back("K33", complete_bipartite(3, 3));
    out.emplace_back("K34", complete_bipartite(3, 4));
    out.emplace_back("wagner", wagner());
    out.emplace_back("grid3x3", grid_graph(3, 3));
    out.emplace_back("grid3x4", grid_graph(3, 4));
    return out;
}

}  // namespace wdtest

#endif
