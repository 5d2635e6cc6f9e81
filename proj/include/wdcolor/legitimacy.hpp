#ifndef WDCOLOR_LEGITIMACY_HPP
#define WDCOLOR_LEGITIMACY_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "graph.hpp"

namespace wdcolor {

using ColorList = std::vector<Color>;  // sorted, duplicate-free

/// Per-vertex nonempty color lists drawn from a palette.
class ListAssignment {
public:
    ListAssignment() = default;

    ListAssignment(ColorList palette, std::vector<ColorList> lists) : palette_(std::move(palette)), lists_(std::move(lists)) {
        palette_ = normalize(std::move(palette_));
        for (std::size_t v = 0; v < lists_.size(); ++v) {
            lists_[v] = normalize(std::move(lists_[v]));
            if (lists_[v].empty()) throw InputError("empty list at vertex " + std::to_string(v));
            if (!std::includes(palette_.begin(), palette_.end(), lists_[v].begin(), lists_[v].end()))
                throw InputError("list of vertex " + std::to_string(v) + " leaves the palette");
        }
    }

    static ListAssignment uniform(int vertex_count, const ColorList& list) {
        return ListAssignment(list, std::vector<ColorList>(static_cast<std::size_t>(vertex_count), list));
    }

    int size() const { return static_cast<int>(lists_.size()); }
    const ColorList& palette() const { return palette_; }
    const ColorList& at(Vertex v) const { return lists_.at(static_cast<std::size_t>(v)); }
    bool allows(Vertex v, Color c) const {
        const auto& list = at(v);
        return std::binary_search(list.begin(), list.end(), c);
    }
    void set(Vertex v, ColorList list) {
        list = normalize(std::move(list));
        if (list.empty()) throw InputError("empty list at vertex " + std::to_string(v));
        if (!std::includes(palette_.begin(), palette_.end(), list.begin(), list.end()))
            throw InputError("list of vertex " + std::to_string(v) + " leaves the palette");
        lists_.at(static_cast<std::size_t>(v)) = std::move(list);
    }

    /// Lists of `vertices` (old ids) in order, as a list assignment of the induced subgraph.
    ListAssignment restricted(std::span<const Vertex> vertices) const {
        std::vector<ColorList> out;
        out.reserve(vertices.size());
        for (Vertex v : vertices) out.push_back(at(v));
        return ListAssignment(palette_, std::move(out));
    }

    /// Smallest-first completion of `list` to `m` palette colors.
    ColorList enlarged(const ColorList& list, int m) const {
        ColorList out = list;
        for (Color c : palette_) {
            if (static_cast<int>(out.size()) >= m) break;
            if (!std::binary_search(list.begin(), list.end(), c)) out.push_back(c);
        }
        std::sort(out.begin(), out.end());
        if (static_cast<int>(out.size()) < m) throw InputError("palette has fewer than m colors");
        return out;
    }

    friend bool operator==(const ListAssignment&, const ListAssignment&) = default;

private:
    static ColorList normalize(ColorList list) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        return list;
    }

    ColorList palette_;
    std::vector<ColorList> lists_;
};

struct CenteredWitness {
    VertexSet centers;
    int radius = 0;
};

using WitnessMap = std::map<NodeId, CenteredWitness>;

struct LegitimacyParams {
    int m = 2;
    int s = 0;
    int r = 1;
    int k = 1;
};

/// Vertices whose list is a single color.
inline VertexSet one_list_set(const ListAssignment& lists) {
    VertexSet out;
    for (Vertex v = 0; v < lists.size(); ++v)
        if (lists.at(v).size() == 1) out.push_back(v);
    return out;
}

/// The unique coloring of the singleton-list vertices.
inline Coloring forced_coloring(const ListAssignment& lists) {
    Coloring out(lists.size());
    for (Vertex v = 0; v < lists.size(); ++v)
        if (lists.at(v).size() == 1) out.set(v, lists.at(v).front());
    return out;
}

/// True iff z lies in the radius-ball around the witness centers.
inline bool check_centered(const Graph& g, std::span<const Vertex> z, const CenteredWitness& w) {
    detail::check_vertex_set(g, w.centers);
    detail::check_vertex_set(g, z);
    if (w.radius < 0) return false;
    auto dist = detail::bfs(g, w.centers, w.radius);
    return std::all_of(z.begin(), z.end(), [&](Vertex v) { return dist[static_cast<std::size_t>(v)] != detail::kUnreached; });
}

/// Checks that `c` colors every vertex from its list. Returns the first offender, if any.
inline std::optional<Vertex> first_list_violation(const Coloring& c, const ListAssignment& lists) {
    for (Vertex v = 0; v < lists.size(); ++v)
        if (!c.has(v) || !lists.allows(v, c.at(v))) return v;
    return std::nullopt;
}

struct FarPair {
    Vertex a = -1;
    Vertex b = -1;
    Distance distance;
};

/// The monochromatic pair realizing the weak diameter of `c` (a = b = -1 for the empty coloring).
inline FarPair worst_monochromatic_pair(const Graph& g, const Coloring& c) {
    FarPair best{-1, -1, Distance(0)};
    for (const auto& comp : monochromatic_components(g, c)) {
        for (Vertex a : comp.vertices) {
            auto dist = detail::bfs(g, std::span<const Vertex>(&a, 1));
            for (Vertex b : comp.vertices) {
                if (b <= a) continue;
                int d = dist[static_cast<std::size_t>(b)];
                Distance here = d == detail::kUnreached ? Distance::infinite() : Distance(d);
                if (best.a < 0 || here > best.distance) best = {a, b, here};
            }
        }
    }
    return best;
}

/// Checks (L1)-(L3) against supplied per-bag centered witnesses.
inline ValidationReport check_legitimate(const Graph& g, const RootedTreeDecomposition& td, const ListAssignment& lists,
                                         const LegitimacyParams& p, const WitnessMap& witnesses) {
    ValidationReport report;
    if (lists.size() != g.vertex_count()) {
        report.add("lists", "list assignment covers " + std::to_string(lists.size()) + " of " + std::to_string(g.vertex_count()) + " vertices");
        return report;
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto size = static_cast<int>(lists.at(v).size());
        if (size != 1 && size != p.m) report.add("L1", "vertex " + std::to_string(v) + " has a list of size " + std::to_string(size));
    }
    VertexSet ones = one_list_set(lists);
    for (NodeId t = 0; t < td.node_count; ++t) {
        const auto& bag = td.bags.at(static_cast<std::size_t>(t));
        VertexSet need = intersect(ones, bag);
        if (need.empty()) continue;
        std::string where = detail::node_label(t);
        auto it = witnesses.find(t);
        if (it == witnesses.end()) {
            report.add("witness-required", where);
            continue;
        }
        const auto& w = it->second;
        if (static_cast<int>(w.centers.size()) > p.s) report.add("L2-size", where + " uses " + std::to_string(w.centers.size()) + " centers");
        if (w.radius > p.r || w.radius < 0) report.add("L2-radius", where + " uses radius " + std::to_string(w.radius));
        if (!std::includes(bag.begin(), bag.end(), w.centers.begin(), w.centers.end())) {
            report.add("L2-centers", where + " has centers outside the bag");
            continue;
        }
        auto inside = induced_subgraph(g, bag);
        VertexSet local_centers, local_need;
        for (Vertex v : w.centers) local_centers.push_back(inside.to_new[static_cast<std::size_t>(v)]);
        for (Vertex v : need) local_need.push_back(inside.to_new[static_cast<std::size_t>(v)]);
        if (!check_centered(inside.graph, local_need, {local_centers, std::max(w.radius, 0)}))
            report.add("L2-coverage", where + ": singleton-list vertices are not covered by the witness");
    }
    auto worst = worst_monochromatic_pair(g, forced_coloring(lists));
    if (worst.a >= 0 && worst.distance > Distance(p.k))
        report.add("L3", "vertices " + std::to_string(worst.a) + " and " + std::to_string(worst.b) + " at distance " + worst.distance.to_string());
    return report;
}

}  // namespace wdcolor

#endif
