#ifndef WDCOLOR_TOOLS_CLI_HPP
#define WDCOLOR_TOOLS_CLI_HPP

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wdcolor.hpp"

namespace wdcolor::cli {

enum ExitCode { kOk = 0, kValidation = 1, kContract = 2, kIo = 3 };

namespace detail {

using io::Json;

inline Json stats_json(const EngineStats& s) {
    return {{"calls", s.calls},
            {"base_cases", s.base_cases},
            {"component_splits", s.component_splits},
            {"normalizations", s.normalizations},
            {"descents", s.descents},
            {"branch_recursions", s.branch_recursions},
            {"local_calls", s.local_calls},
            {"gadget_vertices", s.gadget_vertices},
            {"gadget_checks", s.gadget_checks},
            {"descent_checks", s.descent_checks},
            {"measure_checks", s.measure_checks},
            {"bound_checks", s.bound_checks},
            {"max_depth", s.max_depth}};
}

inline Json extension_json(const ExtensionResult& r) {
    return {{"coloring", io::to_json(r.coloring)},
            {"weak_diameter", io::to_json(r.weak_diameter)},
            {"bound", io::to_json(r.bound)},
            {"stats", stats_json(r.stats)}};
}

inline Graph host_graph(const std::string& name) {
    if (name == "petersen") return petersen();
    if (name == "c6") return cycle_graph(6);
    if (name == "c8") return cycle_graph(8);
    if (name == "cube") return hypercube(3);
    return io::graph_from_json(io::read_json_file(name));
}

}  // namespace detail

/// Runs one command line; the JSON report goes to `out`, human-readable notes to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    using detail::Json;
    CLI::App app{"Clustered coloring with bounded weak diameter"};
    app.require_subcommand(1);

    std::string graph_path, td_path, lists_path, coloring_path, witness_path, apex_path, host = "petersen", oracle = "brute", formula;
    int k = 1, w = -1, p = -1, eta = -1, theta = -1, m = -1, s = -1, r = 1, n = 0, d = 0, seed_window = 3;
    std::int64_t cap = kDefaultEnumerationCap;
    std::uint64_t seed = 0;
    double drop = 0.0;
    std::string big_n = "4";
    bool strict = false, fast = false;

    auto* validate = app.add_subcommand("validate", "check a decomposition, construction, list assignment or coloring");
    validate->add_option("--graph", graph_path, "graph JSON")->required();
    validate->add_option("--td", td_path, "tree decomposition JSON");
    validate->add_option("--eta", eta, "construction parameter eta");
    validate->add_option("--theta", theta, "construction parameter theta");
    validate->add_option("--lists", lists_path, "list assignment JSON");
    validate->add_option("--witnesses", witness_path, "per-bag centered witnesses JSON");
    validate->add_option("--m", m, "list size m");
    validate->add_option("--s", s, "witness center count s");
    validate->add_option("--r", r, "witness radius r");
    validate->add_option("--k", k, "weak diameter bound k");
    validate->add_option("--coloring", coloring_path, "coloring JSON");
    validate->add_option("--bound", big_n, "weak diameter bound for --coloring");

    auto* color_tw = app.add_subcommand("color-tw", "extend a precoloring on a bounded-treewidth graph");
    color_tw->add_option("--graph", graph_path)->required();
    color_tw->add_option("--td", td_path)->required();
    color_tw->add_option("--lists", lists_path)->required();
    color_tw->add_option("--precoloring", coloring_path);
    color_tw->add_option("--k", k, "precoloring weak diameter bound");
    color_tw->add_option("--w", w, "width bound (default: the width of --td)");
    color_tw->add_flag("--strict-paper", strict, "one gadget per m-subset of the colors in use");
    color_tw->add_flag("--fast", fast, "skip per-level assertions");

    auto* color_torso = app.add_subcommand("color-torso", "combine a torso oracle along a decomposition");
    color_torso->add_option("--graph", graph_path)->required();
    color_torso->add_option("--td", td_path)->required();
    color_torso->add_option("--lists", lists_path)->required();
    color_torso->add_option("--oracle", oracle)->check(CLI::IsMember({"brute", "bipartite-apex"}));
    color_torso->add_option("--apex-sets", apex_path, "node -> apex vertices JSON");
    color_torso->add_option("--p", p, "adhesion bound (default: the adhesion of --td, at least 1)");
    color_torso->add_option("--cap", cap, "enumeration cap of the brute oracle");
    color_torso->add_flag("--strict-paper", strict);
    color_torso->add_flag("--fast", fast);

    auto* brute = app.add_subcommand("brute", "exhaustive minimum weak diameter");
    brute->add_option("--graph", graph_path)->required();
    brute->add_option("--lists", lists_path)->required();
    brute->add_option("--cap", cap);

    auto* gadget = app.add_subcommand("gadget", "bipartite list gadget over a regular host");
    gadget->add_option("--host", host, "petersen, c6, c8, cube or a graph JSON file");
    gadget->add_option("--k", k);

    auto* grid = app.add_subcommand("grid", "triangular grid");
    grid->add_option("--n", n)->required();

    auto* bounds = app.add_subcommand("bounds", "evaluate a bound formula");
    bounds->add_option("--formula", formula)->required()->check(CLI::IsMember({"all-centered", "add-centered", "fstar", "tw", "small-ext", "torso"}));
    bounds->add_option("--k", k);
    bounds->add_option("--r", r);
    bounds->add_option("--n", big_n, "N (arbitrary precision)");
    bounds->add_option("--theta", theta);
    bounds->add_option("--s", s);
    bounds->add_option("--eta", eta);
    bounds->add_option("--w", w);
    bounds->add_option("--d", d);
    bounds->add_option("--p", p);

    auto* ktree = app.add_subcommand("ktree", "random partial k-tree with its decomposition");
    ktree->add_option("--n", n)->required();
    ktree->add_option("--w", w)->required();
    ktree->add_option("--seed", seed);
    ktree->add_option("--drop", drop, "edge drop probability");
    ktree->add_option("--window", seed_window, "number of recent bags a new vertex may attach to");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kValidation;
    }

    auto load_graph = [&] { return io::graph_from_json(io::read_json_file(graph_path)); };
    auto load_td = [&] { return io::td_from_json(io::read_json_file(td_path)); };
    auto load_lists = [&](int vertices) { return io::lists_from_json(io::read_json_file(lists_path), vertices); };
    auto emit = [&](const Json& doc) { out << doc.dump(2) << "\n"; };
    auto big = [&](const std::string& text) {
        try {
            return BigInt(text);
        } catch (const std::exception&) {
            throw ParameterError("not an integer: " + text);
        }
    };

    try {
        if (*validate) {
            Graph g = load_graph();
            Json doc = Json::object();
            bool ok = true;
            std::optional<RootedTreeDecomposition> td;
            if (!td_path.empty()) {
                td = load_td();
                auto report = validate_tree_decomposition(g, *td);
                doc["tree_decomposition"] = io::to_json(report);
                ok = ok && report.ok;
                if (report.ok) {
                    doc["width"] = width(*td);
                    doc["adhesion"] = adhesion(*td);
                }
                if (eta >= 0 || theta >= 0) {
                    auto c = validate_construction(g, *td, {eta, theta});
                    doc["construction"] = io::to_json(c);
                    ok = ok && c.ok;
                }
            }
            if (!lists_path.empty()) {
                ListAssignment lists = load_lists(g.vertex_count());
                if (td && m >= 0) {
                    WitnessMap witnesses = witness_path.empty() ? WitnessMap{} : io::witnesses_from_json(io::read_json_file(witness_path));
                    auto report = check_legitimate(g, *td, lists, {m, s < 0 ? 0 : s, r, k}, witnesses);
                    doc["legitimacy"] = io::to_json(report);
                    ok = ok && report.ok;
                }
                if (!coloring_path.empty()) {
                    Coloring c = io::coloring_from_json(io::read_json_file(coloring_path), g.vertex_count());
                    auto bad = first_list_violation(c, lists);
                    doc["respects_lists"] = !bad.has_value();
                    ok = ok && !bad;
                }
            }
            if (!coloring_path.empty()) {
                Coloring c = io::coloring_from_json(io::read_json_file(coloring_path), g.vertex_count());
                auto worst = worst_monochromatic_pair(g, c);
                doc["weak_diameter"] = io::to_json(coloring_weak_diameter(g, c));
                if (validate->count("--bound")) {
                    bool within_bound = worst.a < 0 || within(worst.distance, big(big_n));
                    doc["within_bound"] = within_bound;
                    ok = ok && within_bound;
                    if (!within_bound)
                        err << "vertices " << worst.a << " and " << worst.b << " share a component at distance " << worst.distance.to_string() << "\n";
                }
            }
            doc["ok"] = ok;
            emit(doc);
            err << (ok ? "valid\n" : "invalid\n");
            return ok ? kOk : kValidation;
        }
        if (*color_tw) {
            Graph g = load_graph();
            auto td = load_td();
            auto lists = load_lists(g.vertex_count());
            Coloring c0 = coloring_path.empty() ? Coloring(g.vertex_count()) : io::coloring_from_json(io::read_json_file(coloring_path), g.vertex_count());
            int width_bound = w >= 0 ? w : std::max(1, width(td));
            auto result = color_bounded_treewidth(g, td, width_bound, lists, c0, k, {strict, !fast});
            emit(detail::extension_json(result));
            err << "weak diameter " << result.weak_diameter.to_string() << " within bound " << to_string(result.bound) << "\n";
            return kOk;
        }
        if (*color_torso) {
            Graph g = load_graph();
            auto td = load_td();
            auto lists = load_lists(g.vertex_count());
            int adhesion_bound = p >= 1 ? p : std::max(1, adhesion(td));
            TorsoOracle torso_oracle;
            if (oracle == "brute") {
                torso_oracle = make_brute_torso_oracle(td, cap);
            } else {
                auto apex = apex_path.empty() ? std::map<NodeId, VertexSet>{} : io::apex_sets_from_json(io::read_json_file(apex_path));
                validate_apex_sets(g, td, apex);
                torso_oracle = make_bipartite_apex_oracle(apex);
            }
            auto result = color_with_torso_oracle(g, td, adhesion_bound, lists, torso_oracle, {strict, !fast});
            Json doc = detail::extension_json(result);
            doc["oracle_guarantee"] = io::to_json(torso_oracle.guarantee);
            emit(doc);
            err << "weak diameter " << result.weak_diameter.to_string() << " within bound " << to_string(result.bound) << "\n";
            return kOk;
        }
        if (*brute) {
            Graph g = load_graph();
            auto lists = load_lists(g.vertex_count());
            auto found = brute_force_min_weak_diameter(g, lists, cap);
            if (found.status == SearchStatus::too_large) {
                emit({{"status", "too_large"}});
                err << "list product exceeds the cap\n";
                return kOk;
            }
            emit({{"status", "ok"}, {"value", io::to_json(found.value)}, {"witness", io::to_json(found.witness)}, {"explored", found.explored}});
            return kOk;
        }
        if (*gadget) {
            Graph h = detail::host_graph(host);
            auto go = build_bipartite_gadget(h, k);
            Json doc = io::to_json(go);
            doc["max_degree"] = go.graph.max_degree();
            doc["host_degree"] = go.host_degree;
            doc["host_girth"] = io::to_json(girth(h));
            emit(doc);
            return kOk;
        }
        if (*grid) {
            emit(io::to_json(triangular_grid(n)));
            return kOk;
        }
        if (*bounds) {
            BigInt value;
            if (formula == "all-centered") value = bound_all_centered(k, r);
            else if (formula == "add-centered") value = bound_add_centered(k, r, big(big_n));
            else if (formula == "fstar") value = bound_fstar({theta, s, r, k}, eta, big(big_n));
            else if (formula == "tw") value = bound_tw(w, k);
            else if (formula == "small-ext") value = bound_small_extension(d, big(big_n));
            else value = bound_torso(p, big(big_n));
            emit({{"formula", formula}, {"value", io::to_json(value)}});
            return kOk;
        }
        if (*ktree) {
            auto kt = random_ktree(n, w, seed, drop, seed_window);
            emit({{"graph", io::to_json(kt.graph)}, {"td", io::to_json(kt.td)}});
            return kOk;
        }
    } catch (const ParseError& e) {
        err << "io error: " << e.what() << "\n";
        return kIo;
    } catch (const ContractError& e) {
        err << "contract violation: " << e.what() << "\n";
        return kContract;
    } catch (const EngineInvariantError& e) {
        err << "engine invariant violated: " << e.what() << "\n";
        return kContract;
    } catch (const InputError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kValidation;
    } catch (const ParameterError& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return kValidation;
    }
    return kValidation;
}

}  // namespace wdcolor::cli

#endif
