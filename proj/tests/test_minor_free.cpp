#include "gcsg/minor_free.hpp"

#include "gcsg/harness.hpp"
#include "gcsg/tree_solver.hpp"

#include <doctest.h>

#include <set>

using namespace gcsg;

namespace {

Graph cycle_graph(int n) {
    Graph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(i - 1, i);
    g.add_edge(0, n - 1);
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

bool is_valid_reducible_cycle(const Graph &g, const std::vector<NodeId> &cycle) {
    int m = static_cast<int>(cycle.size());
    if (m < 3) return false;
    std::set<NodeId> seen(cycle.begin(), cycle.end());
    if (static_cast<int>(seen.size()) != m) return false;
    int high = 0;
    for (NodeId v : cycle)
        if (g.degree(v) > 2) ++high;
    if (high > 2) return false;
    for (int i = 0; i < m; ++i)
        if (!g.has_edge(cycle[i], cycle[(i + 1) % m])) return false;
    // chordless
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            bool consecutive = (j == i + 1) || (i == 0 && j == m - 1);
            if (!consecutive && g.has_edge(cycle[i], cycle[j])) return false;
        }
    return true;
}

} // namespace

TEST_CASE("find_reducible_cycle") {
    SUBCASE("whole cycle when all degrees are 2") {
        Graph c5 = cycle_graph(5);
        auto cycle = find_reducible_cycle(c5);
        CHECK(cycle.size() == 5);
        CHECK(is_valid_reducible_cycle(c5, cycle));
    }
    SUBCASE("theta-like SP graph: face cycle with 2 high-degree nodes") {
        // u=0, v=1 joined by edge, plus 2-paths 0-2-1 and 0-3-1.
        Graph g(4);
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(1, 2);
        g.add_edge(0, 3);
        g.add_edge(1, 3);
        auto cycle = find_reducible_cycle(g);
        CHECK(is_valid_reducible_cycle(g, cycle));
        int high = 0;
        for (NodeId v : cycle)
            if (g.degree(v) > 2) ++high;
        CHECK(high == 2);
    }
    SUBCASE("K4 is rejected") {
        CHECK_THROWS_AS(find_reducible_cycle(complete_graph(4)), ClassError);
    }
}

TEST_CASE("solve_2connected_k4_free on cycles") {
    SUBCASE("C4 all-positive takes the grand coalition") {
        Graph c4 = cycle_graph(4);
        auto v = std::make_shared<EdgeSumValuation>(c4, std::vector<Value>{1, 1, 1, 1});
        auto sol = solve_2connected_k4_free(c4, v);
        CHECK(sol.value == 4);
        CHECK(sol.structure == CoalitionStructure({full_node_set(4)}));
    }
    SUBCASE("C4 with one negative edge cuts twice") {
        // Edges in order (0,1), (1,2), (2,3), (0,3): weights 1, 1, 1, -2.
        Graph c4(4);
        c4.add_edge(0, 1);
        c4.add_edge(1, 2);
        c4.add_edge(2, 3);
        c4.add_edge(0, 3);
        auto v = std::make_shared<EdgeSumValuation>(c4, std::vector<Value>{1, 1, 1, -2});
        auto sol = solve_2connected_k4_free(c4, v);
        CHECK(sol.value == 2);
        CHECK(sol.structure == CoalitionStructure({NodeSet({0, 1, 2}), NodeSet({3})}));
    }
    SUBCASE("class violations are rejected") {
        Graph k4 = complete_graph(4);
        auto v = std::make_shared<EdgeSumValuation>(k4, std::vector<Value>(6, 1));
        CHECK_THROWS_AS(solve_2connected_k4_free(k4, v), ClassError);
    }
}

TEST_CASE("solve_2connected_k4_free matches brute force on random SP graphs") {
    harness::Rng rng(211);
    for (int trial = 0; trial < 120; ++trial) {
        int n = static_cast<int>(rng.range(3, 9));
        Graph g = harness::random_series_parallel_2connected(n, rng);
        auto v = harness::random_idm_valuation(g, rng);
        auto sol = solve_2connected_k4_free(g, v);
        auto brute = solve_bruteforce(g, *v);
        CAPTURE(trial);
        CHECK(sol.value == brute->value);
        CHECK(is_connected_structure(g, sol.structure));
        CHECK(structure_value(*v, sol.structure) == sol.value);
    }
}

TEST_CASE("solve_minor_free on the bowtie") {
    // Triangles 0-1-2 and 2-3-4; left weights +1, right weights -1.
    Graph bowtie(5);
    bowtie.add_edge(0, 1);
    bowtie.add_edge(0, 2);
    bowtie.add_edge(1, 2);
    bowtie.add_edge(2, 3);
    bowtie.add_edge(2, 4);
    bowtie.add_edge(3, 4);
    auto v = std::make_shared<EdgeSumValuation>(bowtie,
                                                std::vector<Value>{1, 1, 1, -1, -1, -1});
    auto sol = solve_minor_free(bowtie, v, GraphClass::K4MinorFree);
    CHECK(sol.value == 3);
    CHECK(sol.structure ==
          CoalitionStructure({NodeSet({0, 1, 2}), NodeSet({3}), NodeSet({4})}));
}

TEST_CASE("solve_minor_free matches solve_tree on trees") {
    harness::Rng rng(223);
    for (int trial = 0; trial < 40; ++trial) {
        int n = static_cast<int>(rng.range(2, 8));
        Graph tree = harness::random_tree(n, rng);
        auto v = harness::random_idm_valuation(tree, rng);
        auto a = solve_minor_free(tree, v, GraphClass::K4MinorFree);
        auto b = solve_tree(tree, v);
        CHECK(a.value == b.value);
    }
}

TEST_CASE("solve_minor_free exhausts K4 blocks") {
    Graph k4 = complete_graph(4);
    std::vector<Value> w(6, 1);
    w[0] = -10; // edge (0,1)
    auto v = std::make_shared<EdgeSumValuation>(k4, w);
    auto sol = solve_minor_free(k4, v, GraphClass::K23MinorFree);
    auto brute = solve_bruteforce(k4, *v);
    CHECK(sol.value == brute->value);
    CHECK_THROWS_AS(solve_minor_free(k4, v, GraphClass::K4MinorFree), ClassError);
    CHECK_THROWS_AS(solve_minor_free(complete_graph(5), v, GraphClass::K23MinorFree), ClassError);
}

TEST_CASE("solve_minor_free matches brute force across the K2,3-free class") {
    harness::Rng rng(227);
    for (int trial = 0; trial < 80; ++trial) {
        Graph g = harness::random_k4_block_graph(static_cast<int>(rng.range(1, 2)), rng);
        if (g.node_count() > 9) continue;
        auto v = harness::random_idm_valuation(g, rng);
        auto sol = solve_minor_free(g, v, GraphClass::K23MinorFree);
        auto brute = solve_bruteforce(g, *v);
        CAPTURE(trial);
        CHECK(sol.value == brute->value);
        CHECK(structure_value(*v, sol.structure) == sol.value);
    }
}

TEST_CASE("solve_minor_free with cut vertices and mixed blocks") {
    harness::Rng rng(229);
    for (int trial = 0; trial < 60; ++trial) {
        int n = static_cast<int>(rng.range(3, 9));
        Graph g = harness::random_series_parallel_graph(n, rng);
        auto v = harness::random_idm_valuation(g, rng);
        auto sol = solve_minor_free(g, v, GraphClass::K23MinorFree);
        auto brute = solve_bruteforce(g, *v);
        CAPTURE(trial);
        CHECK(sol.value == brute->value);
        // Block sizes sum to at most 2n.
        std::size_t total = 0;
        for (const auto &b : biconnected_components(g)) total += b.size();
        CHECK(total <= 2 * static_cast<std::size_t>(n));
    }
}

TEST_CASE("solve_minor_free with nonzero singleton values") {
    harness::Rng rng(233);
    for (int trial = 0; trial < 25; ++trial) {
        int n = static_cast<int>(rng.range(3, 7));
        Graph g = harness::random_series_parallel_graph(n, rng);
        auto table = harness::random_idm_table_valuation(g, rng);
        auto sol = solve_minor_free(g, table, GraphClass::K23MinorFree);
        auto brute = solve_bruteforce(g, *table);
        CHECK(sol.value == brute->value);
    }
}
