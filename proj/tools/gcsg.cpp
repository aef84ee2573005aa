#include "gcsg/enumeration.hpp"
#include "gcsg/graph.hpp"
#include "gcsg/harness.hpp"
#include "gcsg/io.hpp"
#include "gcsg/minor_free.hpp"
#include "gcsg/sat_reduction.hpp"
#include "gcsg/separator_solver.hpp"
#include "gcsg/tree_solver.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace gcsg;

constexpr int kExitInvalid = 1;
constexpr int kExitFormat = 2;
constexpr int kExitClass = 3;
constexpr int kExitBudget = 4;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

struct SolveOptions {
    std::string algorithm = "auto";
    double balance = 2.0 / 3.0;
    int base_threshold = 8;
    int cap = kDefaultEnumerationCap;
};

/// Solves one connected component (local ids) and returns the chosen
/// algorithm name; nullopt solution means the constraint is infeasible.
std::pair<std::optional<Solution>, std::string>
solve_component(const Graph &graph, ValuationPtr valuation, const std::string &algorithm,
                const BoundaryConstraint &constraint, const SolveOptions &opts) {
    std::string name = algorithm;
    if (algorithm == "auto") {
        if (!constraint.empty()) {
            name = "separator";
        } else {
            switch (classify_graph(graph)) {
            case GraphClass::Acyclic: name = "tree"; break;
            case GraphClass::K4MinorFree:
            case GraphClass::K23MinorFree: name = "minorfree"; break;
            case GraphClass::General: name = "separator"; break;
            }
        }
    }
    if (name == "bruteforce") {
        auto sol = solve_bruteforce(graph, *valuation, constraint.empty() ? nullptr : &constraint,
                                    opts.cap);
        return {sol, name};
    }
    if (name == "tree") {
        if (!constraint.empty())
            throw ClassError("tree solver does not support boundary constraints");
        return {solve_tree(graph, valuation), name};
    }
    if (name == "minorfree") {
        if (!constraint.empty())
            throw ClassError("minorfree solver does not support boundary constraints");
        GraphClass cls = classify_graph(graph);
        if (cls == GraphClass::General)
            throw ClassError("minorfree solver: graph is not K4- or K2,3-minor-free");
        if (cls == GraphClass::Acyclic) cls = GraphClass::K4MinorFree;
        return {solve_minor_free(graph, valuation, cls), name};
    }
    if (name == "separator") {
        SolverConfig cfg;
        cfg.balance = opts.balance;
        cfg.base_threshold = opts.base_threshold;
        cfg.enumeration_cap = opts.cap;
        return {solve_separator(graph, valuation, constraint, cfg), name};
    }
    throw CLI::ValidationError("--algorithm", "unknown algorithm: " + name);
}

/// Splits a graph per connected component, solves each, and merges. The
/// constraint is restricted per component; a constraint block spanning two
/// components is infeasible outright.
std::pair<std::optional<Solution>, std::string>
solve_instance(const WeightedGraph &wg, const std::string &algorithm,
               const BoundaryConstraint &constraint, const SolveOptions &opts) {
    auto comps = connected_components(wg.graph);
    ValuationPtr valuation = wg.valuation();
    if (comps.size() == 1) return solve_component(wg.graph, valuation, algorithm, constraint, opts);

    for (const auto &block : constraint.structure.blocks) {
        bool inside_one = false;
        for (const auto &comp : comps)
            if (block.is_subset_of(comp)) inside_one = true;
        if (!inside_one) return {std::nullopt, algorithm};
    }

    std::vector<NodeSet> blocks;
    Value total = 0;
    std::set<std::string> names;
    for (const auto &comp : comps) {
        Graph sub = wg.graph.induced(comp);
        ValuationPtr sub_val = remapped_valuation(valuation, comp.ids());
        std::vector<NodeId> g2l(wg.graph.node_count(), -1);
        for (std::size_t i = 0; i < comp.size(); ++i) g2l[comp.ids()[i]] = static_cast<NodeId>(i);
        std::vector<NodeSet> local_constraint;
        for (const auto &block : constraint.structure.blocks) {
            if (!block.is_subset_of(comp)) continue;
            std::vector<NodeId> ids;
            for (NodeId v : block) ids.push_back(g2l[v]);
            local_constraint.emplace_back(std::move(ids));
        }
        NodeSet local_domain;
        for (NodeId v : constraint.domain)
            if (comp.contains(v)) local_domain.insert(g2l[v]);
        BoundaryConstraint sub_constraint(local_domain,
                                          CoalitionStructure(std::move(local_constraint)));

        auto [sol, name] = solve_component(sub, sub_val, algorithm, sub_constraint, opts);
        names.insert(name);
        if (!sol) return {std::nullopt, name};
        total += sol->value;
        for (const auto &b : sol->structure.blocks) {
            std::vector<NodeId> ids;
            for (NodeId v : b) ids.push_back(comp.ids()[v]);
            blocks.emplace_back(std::move(ids));
        }
    }
    std::string name = names.size() == 1 ? *names.begin() : "mixed";
    return {std::optional<Solution>{Solution{CoalitionStructure(std::move(blocks)), total}}, name};
}

int run_solve(const std::string &graph_path, const std::string &algorithm,
              const std::string &constraint_path, const std::string &output_path,
              const SolveOptions &opts) {
    WeightedGraph wg = read_weighted_graph_file(graph_path);
    BoundaryConstraint constraint;
    if (!constraint_path.empty()) {
        CoalitionStructure ds = read_structure_file(constraint_path);
        NodeSet domain;
        for (const auto &b : ds.blocks) domain = domain.unite(b);
        constraint = BoundaryConstraint(domain, ds);
    }
    auto [sol, name] = solve_instance(wg, algorithm, constraint, opts);
    if (!sol) {
        std::cout << "value=infeasible algorithm=" << name << " nodes=" << wg.graph.node_count()
                  << " edges=" << wg.graph.edge_count() << "\n";
        return kExitInvalid;
    }
    std::string out = output_path.empty() ? graph_path + ".solution" : output_path;
    write_structure_file(out, sol->structure);
    std::cout << "value=" << sol->value << " algorithm=" << name
              << " nodes=" << wg.graph.node_count() << " edges=" << wg.graph.edge_count() << "\n";
    return 0;
}

int run_check(const std::string &graph_path, const std::string &structure_path) {
    WeightedGraph wg = read_weighted_graph_file(graph_path);
    CoalitionStructure cs = read_structure_file(structure_path);
    bool ok;
    try {
        ok = is_connected_structure(wg.graph, cs);
    } catch (const std::invalid_argument &ex) {
        std::cout << "invalid: " << ex.what() << "\n";
        return kExitInvalid;
    }
    Value v = structure_value(*wg.valuation(), cs);
    std::cout << "value=" << v << (ok ? "" : " disconnected") << "\n";
    return ok ? 0 : kExitInvalid;
}

int run_count(const std::string &graph_path, int cap) {
    WeightedGraph wg = read_weighted_graph_file(graph_path);
    std::cout << "count=" << count_connected_structures(wg.graph, cap)
              << " bound=" << structure_count_bound(wg.graph.node_count(), wg.graph.edge_count())
              << "\n";
    return 0;
}

int run_reduce(const std::string &cnf_path, const std::string &graph_path,
               const std::string &map_path) {
    Cnf3 cnf = read_dimacs_cnf_file(cnf_path);
    ReductionArtifact artifact = reduce_3sat(cnf);
    write_weighted_graph_file(graph_path, {artifact.graph, artifact.weights->edge_weights()});
    std::ofstream map_out(map_path);
    if (!map_out) throw FormatError("cannot write file: " + map_path);
    write_reduction_map(map_out, artifact);
    std::cout << "m=" << cnf.clause_count() << " nodes=" << artifact.graph.node_count() << "\n";
    return 0;
}

int run_bench(const std::string &suite, int min_n, int max_n, int count, std::uint64_t seed,
              int cap) {
    harness::Rng rng(seed);
    bool mismatch = false;
    if (suite == "reductions") {
        std::cout << "instance,m,vars,n,e,algorithm,value,satisfiable,wall_ms\n";
        for (int i = 0; i < count; ++i) {
            int m = static_cast<int>(rng.range(1, 4));
            int vars = static_cast<int>(rng.range(1, 6));
            Cnf3 cnf = harness::random_cnf3(vars, m, rng);
            ReductionArtifact artifact = reduce_3sat(cnf);
            auto start = std::chrono::steady_clock::now();
            auto sol = solve_bruteforce(artifact.graph, *artifact.weights);
            double ms = elapsed_ms(start);
            bool sat = harness::sat_bruteforce(cnf).has_value();
            if ((sol->value == m) != sat) mismatch = true;
            std::cout << i << ',' << m << ',' << vars << ',' << artifact.graph.node_count() << ','
                      << artifact.graph.edge_count() << ",bruteforce," << sol->value << ','
                      << (sat ? 1 : 0) << ',' << ms << "\n";
        }
        if (mismatch) std::cerr << "bench: reduction value/satisfiability mismatch\n";
        return mismatch ? kExitInvalid : 0;
    }

    bool sp_suite = suite == "sp";
    std::cout << (sp_suite ? "instance,n,e,algorithm,value,wall_ms,ms_per_n3\n"
                           : "instance,n,e,algorithm,value,wall_ms\n");
    for (int i = 0; i < count; ++i) {
        int n = static_cast<int>(rng.range(min_n, max_n));
        auto make_graph = [&]() -> Graph {
            if (suite == "trees") return harness::random_tree(n, rng);
            if (suite == "sp") return harness::random_series_parallel_graph(n, rng);
            if (suite == "planar-like") {
                int w = std::max(2, static_cast<int>(rng.range(2, std::max(2, n / 2))));
                int h = std::max(2, (n + w - 1) / w);
                return harness::random_grid_subgraph(w, h, 0.5, rng);
            }
            throw CLI::ValidationError("--suite", "unknown suite: " + suite);
        };
        WeightedGraph wg{make_graph(), {}};
        int gn = wg.graph.node_count();
        wg.weights.resize(wg.graph.edge_count());
        for (auto &w : wg.weights) w = rng.range(-5, 5);

        SolveOptions opts;
        opts.cap = cap;
        auto start = std::chrono::steady_clock::now();
        auto [sol, name] = solve_instance(wg, "auto", BoundaryConstraint{}, opts);
        double ms = elapsed_ms(start);

        if (gn <= cap) {
            auto comps = connected_components(wg.graph);
            if (comps.size() == 1) {
                auto reference = solve_bruteforce(wg.graph, *wg.valuation(), nullptr, cap);
                if (reference->value != sol->value) mismatch = true;
            }
        }
        std::cout << i << ',' << gn << ',' << wg.graph.edge_count() << ',' << name << ','
                  << sol->value << ',' << ms;
        if (sp_suite)
            std::cout << ',' << ms / (static_cast<double>(gn) * gn * gn);
        std::cout << "\n";
    }
    if (mismatch) std::cerr << "bench: solver/bruteforce value mismatch\n";
    return mismatch ? kExitInvalid : 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact solvers for coalition structure generation over graphs"};
    app.require_subcommand(1);

    std::string graph_path, structure_path, constraint_path, output_path;
    std::string cnf_path, map_path;
    SolveOptions opts;
    std::string suite = "trees";
    int min_n = 4, max_n = 8, count = 20;
    std::uint64_t seed = 1;
    int cap = kDefaultEnumerationCap;

    auto *solve = app.add_subcommand("solve", "Solve a weighted graph instance");
    solve->add_option("graph", graph_path, "weighted graph file")->required();
    solve->add_option("--algorithm", opts.algorithm,
                      "auto|bruteforce|tree|minorfree|separator")
        ->default_val("auto");
    solve->add_option("--constraint", constraint_path,
                      "boundary constraint (structure file over the domain)");
    solve->add_option("--output", output_path, "structure output path (default <graph>.solution)");
    solve->add_option("--balance", opts.balance, "separator balance fraction");
    solve->add_option("--base-threshold", opts.base_threshold, "separator base-case threshold");
    solve->add_option("--cap", opts.cap, "enumeration node cap");

    auto *check = app.add_subcommand("check", "Validate a structure file against a graph");
    check->add_option("graph", graph_path, "weighted graph file")->required();
    check->add_option("structure", structure_path, "structure file")->required();

    auto *cnt = app.add_subcommand("count", "Count connected coalition structures");
    cnt->add_option("graph", graph_path, "graph file")->required();
    cnt->add_option("--cap", cap, "enumeration node cap");

    auto *reduce = app.add_subcommand("reduce", "Reduce a DIMACS 3-CNF to a weighted graph");
    reduce->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
    reduce->add_option("graph-out", graph_path, "output weighted graph")->required();
    reduce->add_option("map-out", map_path, "output clause/position/node map")->required();

    auto *bench = app.add_subcommand("bench", "Seeded random benchmark suites");
    bench->add_option("--suite", suite, "trees|sp|planar-like|reductions")->default_val("trees");
    bench->add_option("--min-n", min_n, "minimum instance size");
    bench->add_option("--max-n", max_n, "maximum instance size");
    bench->add_option("--count", count, "number of instances");
    bench->add_option("--seed", seed, "random seed");
    bench->add_option("--cap", cap, "cross-check brute force up to this size");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return run_solve(graph_path, opts.algorithm, constraint_path, output_path, opts);
        if (check->parsed()) return run_check(graph_path, structure_path);
        if (cnt->parsed()) return run_count(graph_path, cap);
        if (reduce->parsed()) return run_reduce(cnf_path, graph_path, map_path);
        if (bench->parsed()) return run_bench(suite, min_n, max_n, count, seed, cap);
    } catch (const FormatError &ex) {
        std::cerr << "format error: " << ex.what() << "\n";
        return kExitFormat;
    } catch (const ClassError &ex) {
        std::cerr << "class error: " << ex.what() << "\n";
        return kExitClass;
    } catch (const BudgetError &ex) {
        std::cerr << "budget error: " << ex.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitFormat;
    }
    return 0;
}
