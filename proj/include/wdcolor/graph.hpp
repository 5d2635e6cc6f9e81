#ifndef WDCOLOR_GRAPH_HPP
#define WDCOLOR_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace wdcolor {

using Vertex = int;
using Color = int;
/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

/// Hop distance, or the distinguished value INFINITE (compares above every finite value).
class Distance {
public:
    constexpr Distance() = default;
    constexpr explicit Distance(std::int64_t v) : value_(v) {}

    static constexpr Distance infinite() { return Distance{}; }

    constexpr bool is_finite() const { return value_.has_value(); }
    constexpr std::int64_t value() const {
        if (!value_) throw std::logic_error("value() of infinite distance");
        return *value_;
    }

    friend constexpr bool operator==(const Distance&, const Distance&) = default;
    friend constexpr std::strong_ordering operator<=>(const Distance& a, const Distance& b) {
        if (a.value_ && b.value_) return *a.value_ <=> *b.value_;
        if (!a.value_ && !b.value_) return std::strong_ordering::equal;
        return a.value_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    std::string to_string() const { return value_ ? std::to_string(*value_) : "INFINITE"; }

private:
    std::optional<std::int64_t> value_;
};

/// Undirected simple graph on vertices [0, n). Adjacency lists are sorted.
class Graph {
public:
    Graph() = default;

    explicit Graph(int vertex_count, std::span<const Edge> edges = {}) : adjacency_(checked_count(vertex_count)) {
        edges_.reserve(edges.size());
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
                throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") has an invalid endpoint");
            if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
            edges_.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(edges_.begin(), edges_.end());
        if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end())
            throw InputError("duplicate edge (" + std::to_string(dup->first) + "," + std::to_string(dup->second) + ")");
        for (auto [u, v] : edges_) {
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        for (auto& list : adjacency_) std::sort(list.begin(), list.end());
    }

    Graph(int vertex_count, std::initializer_list<Edge> edges)
        : Graph(vertex_count, std::span<const Edge>(edges.begin(), edges.size())) {}

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const VertexSet& neighbors(Vertex v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
    bool contains(Vertex v) const { return v >= 0 && v < vertex_count(); }
    bool adjacent(Vertex u, Vertex v) const {
        const auto& list = neighbors(u);
        return std::binary_search(list.begin(), list.end(), v);
    }
    int max_degree() const {
        int best = 0;
        for (Vertex v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
        return best;
    }

private:
    static std::size_t checked_count(int n) {
        if (n < 0) throw InputError("negative vertex count");
        return static_cast<std::size_t>(n);
    }

    std::vector<VertexSet> adjacency_;
    std::vector<Edge> edges_;
};

/// Partial or total assignment vertex -> color over a graph with `size()` vertices.
class Coloring {
public:
    static constexpr Color kNone = -1;

    Coloring() = default;
    explicit Coloring(int vertex_count) : colors_(static_cast<std::size_t>(vertex_count), kNone) {}

    int size() const { return static_cast<int>(colors_.size()); }
    bool has(Vertex v) const { return v >= 0 && v < size() && colors_[static_cast<std::size_t>(v)] != kNone; }
    Color at(Vertex v) const {
        if (!has(v)) throw InputError("vertex " + std::to_string(v) + " is not colored");
        return colors_[static_cast<std::size_t>(v)];
    }
    Color get_or(Vertex v, Color fallback) const { return has(v) ? colors_[static_cast<std::size_t>(v)] : fallback; }
    void set(Vertex v, Color c) {
        if (v < 0 || v >= size()) throw InputError("vertex " + std::to_string(v) + " out of range for coloring");
        if (c < 0) throw InputError("colors are nonnegative");
        colors_[static_cast<std::size_t>(v)] = c;
    }
    void erase(Vertex v) { colors_.at(static_cast<std::size_t>(v)) = kNone; }

    VertexSet domain() const {
        VertexSet out;
        for (Vertex v = 0; v < size(); ++v)
            if (has(v)) out.push_back(v);
        return out;
    }
    bool is_total() const {
        return std::none_of(colors_.begin(), colors_.end(), [](Color c) { return c == kNone; });
    }
    bool empty() const {
        return std::all_of(colors_.begin(), colors_.end(), [](Color c) { return c == kNone; });
    }

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    std::vector<Color> colors_;
};

struct MonochromaticComponent {
    Color color;
    VertexSet vertices;
};

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_new;  // old id -> new id, -1 when absent
    std::vector<Vertex> to_old;  // new id -> old id
};

struct Bipartition {
    VertexSet side0;  // contains the lowest vertex of every component
    VertexSet side1;
};

namespace detail {

inline constexpr int kUnreached = -1;

inline void check_vertex_set(const Graph& g, std::span<const Vertex> s) {
    for (Vertex v : s)
        if (!g.contains(v)) throw InputError("vertex " + std::to_string(v) + " is not in the graph");
}

/// Multi-source BFS. Distances beyond `limit` (when >= 0) are left unreached.
inline std::vector<int> bfs(const Graph& g, std::span<const Vertex> sources, int limit = -1) {
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), kUnreached);
    std::vector<Vertex> queue;
    queue.reserve(static_cast<std::size_t>(g.vertex_count()));
    for (Vertex s : sources) {
        if (dist[static_cast<std::size_t>(s)] == kUnreached) {
            dist[static_cast<std::size_t>(s)] = 0;
            queue.push_back(s);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        int du = dist[static_cast<std::size_t>(u)];
        if (limit >= 0 && du >= limit) continue;
        for (Vertex w : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] == kUnreached) {
                dist[static_cast<std::size_t>(w)] = du + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

inline VertexSet normalized(std::vector<Vertex> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

/// Largest pairwise distance within `members`; -1 encodes INFINITE.
inline std::int64_t pairwise_max(const Graph& g, std::span<const Vertex> members) {
    if (members.size() <= 1) return 0;
    std::vector<char> wanted(static_cast<std::size_t>(g.vertex_count()), 0);
    for (Vertex v : members) wanted[static_cast<std::size_t>(v)] = 1;
    std::int64_t best = 0;
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), kUnreached);
    std::vector<Vertex> queue;
    for (Vertex source : members) {
        std::fill(dist.begin(), dist.end(), kUnreached);
        queue.assign(1, source);
        dist[static_cast<std::size_t>(source)] = 0;
        std::size_t remaining = members.size() - 1;
        for (std::size_t head = 0; head < queue.size() && remaining > 0; ++head) {
            Vertex u = queue[head];
            for (Vertex w : g.neighbors(u)) {
                if (dist[static_cast<std::size_t>(w)] != kUnreached) continue;
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(w);
                if (wanted[static_cast<std::size_t>(w)]) {
                    best = std::max<std::int64_t>(best, dist[static_cast<std::size_t>(w)]);
                    --remaining;
                }
            }
        }
        if (remaining > 0) return -1;
    }
    return best;
}

}  // namespace detail

/// Exact hop distance from the nearest source; INFINITE where unreachable.
inline std::vector<Distance> bfs_distances(const Graph& g, std::span<const Vertex> sources) {
    detail::check_vertex_set(g, sources);
    auto raw = detail::bfs(g, sources);
    std::vector<Distance> out;
    out.reserve(raw.size());
    for (int d : raw) out.push_back(d == detail::kUnreached ? Distance::infinite() : Distance(d));
    return out;
}

/// {v : dist(v, s) <= r}.
inline VertexSet ball(const Graph& g, std::span<const Vertex> s, int r) {
    detail::check_vertex_set(g, s);
    if (r < 0) throw InputError("ball radius must be nonnegative");
    auto dist = detail::bfs(g, s, r);
    VertexSet out;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (dist[static_cast<std::size_t>(v)] != detail::kUnreached) out.push_back(v);
    return out;
}

/// Maximum distance in the whole graph `g` between two members of `s`.
inline Distance weak_diameter(const Graph& g, std::span<const Vertex> s) {
    detail::check_vertex_set(g, s);
    auto members = detail::normalized({s.begin(), s.end()});
    auto d = detail::pairwise_max(g, members);
    return d < 0 ? Distance::infinite() : Distance(d);
}

inline void check_coloring_domain(const Graph& g, const Coloring& c) {
    if (c.size() > g.vertex_count()) {
        for (Vertex v = g.vertex_count(); v < c.size(); ++v)
            if (c.has(v)) throw InputError("coloring assigns vertex " + std::to_string(v) + " outside the graph");
    }
}

/// Components of g[{v : c(v) = i}] for every color i, ordered by smallest vertex.
inline std::vector<MonochromaticComponent> monochromatic_components(const Graph& g, const Coloring& c) {
    check_coloring_domain(g, c);
    std::vector<MonochromaticComponent> out;
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (Vertex start = 0; start < g.vertex_count(); ++start) {
        if (!c.has(start) || seen[static_cast<std::size_t>(start)]) continue;
        Color color = c.at(start);
        VertexSet part{start};
        seen[static_cast<std::size_t>(start)] = 1;
        for (std::size_t head = 0; head < part.size(); ++head) {
            for (Vertex w : g.neighbors(part[head])) {
                if (seen[static_cast<std::size_t>(w)] || c.get_or(w, Coloring::kNone) != color) continue;
                seen[static_cast<std::size_t>(w)] = 1;
                part.push_back(w);
            }
        }
        std::sort(part.begin(), part.end());
        out.push_back({color, std::move(part)});
    }
    return out;
}

/// Max over monochromatic components of their weak diameter in g.
inline Distance coloring_weak_diameter(const Graph& g, const Coloring& c) {
    std::int64_t best = 0;
    for (const auto& comp : monochromatic_components(g, c)) {
        auto d = detail::pairwise_max(g, comp.vertices);
        if (d < 0) return Distance::infinite();
        best = std::max(best, d);
    }
    return Distance(best);
}

inline std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<VertexSet> out;
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (Vertex start = 0; start < g.vertex_count(); ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        VertexSet part{start};
        seen[static_cast<std::size_t>(start)] = 1;
        for (std::size_t head = 0; head < part.size(); ++head) {
            for (Vertex w : g.neighbors(part[head])) {
                if (seen[static_cast<std::size_t>(w)]) continue;
                seen[static_cast<std::size_t>(w)] = 1;
                part.push_back(w);
            }
        }
        std::sort(part.begin(), part.end());
        out.push_back(std::move(part));
    }
    return out;
}

/// g[s] with an order-preserving relabelling.
inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s) {
    detail::check_vertex_set(g, s);
    InducedSubgraph out;
    out.to_old = detail::normalized({s.begin(), s.end()});
    out.to_new.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < out.to_old.size(); ++i) out.to_new[static_cast<std::size_t>(out.to_old[i])] = static_cast<Vertex>(i);
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) {
        Vertex a = out.to_new[static_cast<std::size_t>(u)], b = out.to_new[static_cast<std::size_t>(v)];
        if (a >= 0 && b >= 0) edges.emplace_back(a, b);
    }
    out.graph = Graph(static_cast<int>(out.to_old.size()), edges);
    return out;
}

/// 2-coloring witness, or nullopt when g has an odd cycle.
inline std::optional<Bipartition> is_bipartite(const Graph& g) {
    std::vector<int> side(static_cast<std::size_t>(g.vertex_count()), -1);
    for (Vertex start = 0; start < g.vertex_count(); ++start) {
        if (side[static_cast<std::size_t>(start)] >= 0) continue;
        side[static_cast<std::size_t>(start)] = 0;
        std::vector<Vertex> queue{start};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex u = queue[head];
            for (Vertex w : g.neighbors(u)) {
                if (side[static_cast<std::size_t>(w)] < 0) {
                    side[static_cast<std::size_t>(w)] = 1 - side[static_cast<std::size_t>(u)];
                    queue.push_back(w);
                } else if (side[static_cast<std::size_t>(w)] == side[static_cast<std::size_t>(u)]) {
                    return std::nullopt;
                }
            }
        }
    }
    Bipartition out;
    for (Vertex v = 0; v < g.vertex_count(); ++v) (side[static_cast<std::size_t>(v)] == 0 ? out.side0 : out.side1).push_back(v);
    return out;
}

/// Length of a shortest cycle; INFINITE for forests.
inline Distance girth(const Graph& g) {
    std::int64_t best = -1;
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<int> dist(n), parent(n);
    for (Vertex root = 0; root < g.vertex_count(); ++root) {
        std::fill(dist.begin(), dist.end(), detail::kUnreached);
        std::fill(parent.begin(), parent.end(), -1);
        dist[static_cast<std::size_t>(root)] = 0;
        std::vector<Vertex> queue{root};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex u = queue[head];
            for (Vertex w : g.neighbors(u)) {
                if (dist[static_cast<std::size_t>(w)] == detail::kUnreached) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    parent[static_cast<std::size_t>(w)] = u;
                    queue.push_back(w);
                } else if (parent[static_cast<std::size_t>(u)] != w) {
                    std::int64_t len = dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(w)] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
    }
    return best < 0 ? Distance::infinite() : Distance(best);
}

}  // namespace wdcolor

#endif
