#include "gcsg/tree_solver.hpp"

#include <algorithm>
#include <set>

namespace gcsg {

Solution solve_tree(const Graph &graph, ValuationPtr valuation, LeafOrder order) {
    int n = graph.node_count();
    if (n == 0) throw std::invalid_argument("solve_tree: empty graph");
    if (graph.edge_count() != n - 1 || !graph.is_connected())
        throw std::invalid_argument("solve_tree: graph is not a tree");

    if (n == 1) {
        CoalitionStructure cs({NodeSet::single(0)});
        return {cs, valuation->evaluate(NodeSet::single(0))};
    }

    auto [normalized, offset] = normalize_singletons(valuation, graph);

    // Peel leaves; each edge is decided exactly once, when its leaf endpoint
    // goes. Kept edges are replayed as components at the end.
    std::vector<int> degree(n);
    std::set<NodeId, std::less<NodeId>> leaves;
    for (NodeId v = 0; v < n; ++v) {
        degree[v] = graph.degree(v);
        if (degree[v] == 1) leaves.insert(v);
    }
    std::vector<char> removed(n, 0);
    std::vector<Edge> kept;
    int remaining = n;
    while (remaining > 1) {
        NodeId leaf = (order == LeafOrder::SmallestFirst) ? *leaves.begin() : *leaves.rbegin();
        leaves.erase(leaf);
        NodeId nbr = -1;
        for (NodeId w : graph.neighbors(leaf))
            if (!removed[w]) {
                nbr = w;
                break;
            }
        removed[leaf] = 1;
        --remaining;
        Value marginal = normalized->evaluate(NodeSet{{leaf, nbr}});
        if (marginal > 0) kept.emplace_back(std::min(leaf, nbr), std::max(leaf, nbr));
        if (--degree[nbr] == 1 && remaining > 1) leaves.insert(nbr);
    }

    Graph forest(n, kept);
    CoalitionStructure cs(connected_components(forest));
    return {cs, structure_value(*valuation, cs)};
}

} // namespace gcsg
