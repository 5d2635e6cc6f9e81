#ifndef WDCOLOR_ORACLES_HPP
#define WDCOLOR_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "legitimacy.hpp"

namespace wdcolor {

inline constexpr std::int64_t kDefaultEnumerationCap = std::int64_t{1} << 24;

enum class SearchStatus { ok, too_large };

struct BruteForceResult {
    SearchStatus status = SearchStatus::ok;
    Distance value;    // minimum weak diameter over all L-colorings (INFINITE if some pair is disconnected)
    Coloring witness;  // first coloring in lexicographic order achieving `value`
    std::int64_t explored = 0;
};

/// Product of list sizes, saturating just above `cap`.
inline std::int64_t list_product(const ListAssignment& lists, std::int64_t cap) {
    std::int64_t product = 1;
    for (Vertex v = 0; v < lists.size(); ++v) {
        product *= static_cast<std::int64_t>(lists.at(v).size());
        if (product > cap) return cap + 1;
    }
    return product;
}

namespace detail {

// Lexicographic search (vertex 0 most significant, colors ascending). A branch is cut once its
// partial weak diameter reaches the best value found, which can only grow as vertices are added,
// so the first optimal coloring is still the one reported.
class MinWeakDiameterSearch {
public:
    MinWeakDiameterSearch(const Graph& g, const ListAssignment& lists, std::optional<std::int64_t> stop_at)
        : g_(g), lists_(lists), stop_at_(stop_at), n_(g.vertex_count()), colors_(static_cast<std::size_t>(n_), Coloring::kNone) {
        dist_.resize(static_cast<std::size_t>(n_));
        for (Vertex v = 0; v < n_; ++v) dist_[static_cast<std::size_t>(v)] = bfs(g, std::span<const Vertex>(&v, 1));
    }

    BruteForceResult run() {
        BruteForceResult out;
        walk(0, 0, out);
        out.value = best_ < kInfinite ? Distance(best_) : Distance::infinite();
        out.witness = Coloring(n_);
        for (Vertex v = 0; v < n_; ++v) out.witness.set(v, best_colors_[static_cast<std::size_t>(v)]);
        return out;
    }

private:
    static constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max();

    // Largest pairwise distance in the monochromatic component of v among colored vertices.
    std::int64_t component_spread(Vertex v) const {
        Color c = colors_[static_cast<std::size_t>(v)];
        std::vector<Vertex> comp{v};
        std::vector<char> seen(static_cast<std::size_t>(n_), 0);
        seen[static_cast<std::size_t>(v)] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head)
            for (Vertex w : g_.neighbors(comp[head]))
                if (!seen[static_cast<std::size_t>(w)] && colors_[static_cast<std::size_t>(w)] == c) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    comp.push_back(w);
                }
        std::int64_t spread = 0;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (std::size_t j = i + 1; j < comp.size(); ++j) {
                int d = dist_[static_cast<std::size_t>(comp[i])][static_cast<std::size_t>(comp[j])];
                if (d == kUnreached) return kInfinite;
                spread = std::max<std::int64_t>(spread, d);
            }
        return spread;
    }

    bool done() const { return stop_at_ && found_ && best_ <= *stop_at_; }

    void walk(Vertex v, std::int64_t partial, BruteForceResult& out) {
        if (v == n_) {
            ++out.explored;
            if (!found_ || partial < best_) {
                found_ = true;
                best_ = partial;
                best_colors_ = colors_;
            }
            return;
        }
        for (Color c : lists_.at(v)) {
            colors_[static_cast<std::size_t>(v)] = c;
            std::int64_t next = std::max(partial, component_spread(v));
            if (!found_ || next < best_) walk(v + 1, next, out);
            if (done()) break;
        }
        colors_[static_cast<std::size_t>(v)] = Coloring::kNone;
    }

    const Graph& g_;
    const ListAssignment& lists_;
    std::optional<std::int64_t> stop_at_;
    int n_;
    std::vector<Color> colors_;
    std::vector<Color> best_colors_;
    std::vector<std::vector<int>> dist_;
    bool found_ = false;
    std::int64_t best_ = kInfinite;
};

}  // namespace detail

/// Exhaustive minimum of coloring_weak_diameter over all L-colorings.
inline BruteForceResult brute_force_min_weak_diameter(const Graph& g, const ListAssignment& lists, std::int64_t cap = kDefaultEnumerationCap) {
    if (lists.size() != g.vertex_count()) throw InputError("list assignment does not match the graph");
    BruteForceResult out;
    if (list_product(lists, cap) > cap) {
        out.status = SearchStatus::too_large;
        return out;
    }
    return detail::MinWeakDiameterSearch(g, lists, std::nullopt).run();
}

struct GadgetClaim {
    std::int64_t threshold = 0;  // 2*floor(g/4) - 3
    SearchStatus status = SearchStatus::ok;
    bool verdict = false;        // every L-coloring has a component wider than threshold
    Distance best;               // smallest weak diameter found (meaningful when the search ran)
};

/// Checks whether every L-coloring of the gadget has a monochromatic component of weak
/// diameter above 2*floor(g/4) - 3, g being the host girth.
inline GadgetClaim gadget_weak_diameter_claim(const GadgetOutput& go, std::int64_t host_girth, std::int64_t cap = kDefaultEnumerationCap) {
    if (host_girth < 4) throw InputError("gadget claim needs host girth >= 4");
    GadgetClaim out;
    out.threshold = 2 * (host_girth / 4) - 3;
    if (list_product(go.lists, cap) > cap) {
        out.status = SearchStatus::too_large;
        return out;
    }
    auto found = detail::MinWeakDiameterSearch(go.graph, go.lists, out.threshold).run();
    out.best = found.value;
    out.verdict = go.graph.vertex_count() > 0 && found.value > Distance(out.threshold);
    return out;
}

struct GirthFarResult {
    Vertex x = -1;
    Vertex y = -1;
    std::int64_t distance = 0;
    std::int64_t bound = 0;  // floor(girth / 4)
    bool holds = false;
};

/// Farthest pair of cycle vertices in g, compared against floor(girth(g)/4).
inline GirthFarResult girth_far_check(const Graph& g, const std::vector<Vertex>& cycle) {
    detail::check_vertex_set(g, cycle);
    if (cycle.size() < 3) throw InputError("girth_far_check: a cycle needs at least 3 vertices");
    if (detail::normalized(cycle).size() != cycle.size()) throw InputError("girth_far_check: cycle repeats a vertex");
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!g.adjacent(cycle[i], cycle[(i + 1) % cycle.size()])) throw InputError("girth_far_check: consecutive vertices are not adjacent");
    auto gi = girth(g);
    if (gi.is_finite() && gi.value() < 4) throw InputError("girth_far_check: graph girth is below 4");
    GirthFarResult out;
    out.bound = gi.value() / 4;
    for (Vertex a : cycle) {
        auto dist = detail::bfs(g, std::span<const Vertex>(&a, 1));
        for (Vertex b : cycle) {
            if (b <= a) continue;
            if (out.x < 0 || dist[static_cast<std::size_t>(b)] > out.distance) {
                out.x = a;
                out.y = b;
                out.distance = dist[static_cast<std::size_t>(b)];
            }
        }
    }
    out.holds = out.distance >= out.bound;
    return out;
}

/// Every simple cycle once, starting at its smallest vertex and oriented so that the second
/// vertex is smaller than the last.
inline std::vector<std::vector<Vertex>> enumerate_simple_cycles(const Graph& g, std::size_t limit = 1'000'000) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> path;
    std::vector<char> on_path(static_cast<std::size_t>(g.vertex_count()), 0);
    auto extend = [&](auto&& self, Vertex start, Vertex v) -> void {
        for (Vertex w : g.neighbors(v)) {
            if (out.size() >= limit) throw InputError("enumerate_simple_cycles: more cycles than the limit");
            if (w == start && path.size() >= 3 && path[1] < path.back()) out.push_back(path);
            if (w <= start || on_path[static_cast<std::size_t>(w)]) continue;
            on_path[static_cast<std::size_t>(w)] = 1;
            path.push_back(w);
            self(self, start, w);
            path.pop_back();
            on_path[static_cast<std::size_t>(w)] = 0;
        }
    };
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        path = {s};
        on_path[static_cast<std::size_t>(s)] = 1;
        extend(extend, s, s);
        on_path[static_cast<std::size_t>(s)] = 0;
    }
    return out;
}

}  // namespace wdcolor

#endif
