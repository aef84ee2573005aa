#include "gcsg/harness.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace gcsg::harness {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
    // Rejection sampling keeps the distribution uniform and the stream
    // implementation-independent.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

long long Rng::range(long long lo, long long hi) {
    if (lo > hi) throw std::invalid_argument("Rng::range: empty range");
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::vector<CoalitionStructure> all_set_partitions(int n) {
    std::vector<CoalitionStructure> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> assign(n, 0);
    std::function<void(int, int)> rec = [&](int i, int max_used) {
        if (i == n) {
            int blocks = max_used + 1;
            std::vector<std::vector<NodeId>> groups(blocks);
            for (int v = 0; v < n; ++v) groups[assign[v]].push_back(v);
            std::vector<NodeSet> sets;
            sets.reserve(groups.size());
            for (auto &g : groups) sets.emplace_back(std::move(g));
            out.emplace_back(std::move(sets));
            return;
        }
        for (int b = 0; b <= max_used + 1; ++b) {
            assign[i] = b;
            rec(i + 1, std::max(max_used, b));
        }
    };
    rec(1, 0);
    return out;
}

std::vector<CoalitionStructure> filter_oracle(const Graph &graph, int node_cap) {
    if (graph.node_count() > node_cap)
        throw BudgetError("filter_oracle: node count exceeds cap");
    std::vector<CoalitionStructure> out;
    for (auto &cs : all_set_partitions(graph.node_count()))
        if (is_connected_structure(graph, cs)) out.push_back(std::move(cs));
    return out;
}

Graph random_tree(int n, Rng &rng) {
    if (n < 1) throw std::invalid_argument("random_tree: need n >= 1");
    Graph g(n);
    if (n == 1) return g;
    if (n == 2) {
        g.add_edge(0, 1);
        return g;
    }
    std::vector<int> pruefer(n - 2);
    for (int &x : pruefer) x = static_cast<int>(rng.below(n));
    std::vector<int> degree(n, 1);
    for (int x : pruefer) ++degree[x];
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
        if (degree[v] == 1) leaves.insert(v);
    for (int x : pruefer) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        g.add_edge(std::min(leaf, x), std::max(leaf, x));
        if (--degree[x] == 1) leaves.insert(x);
    }
    int a = *leaves.begin(), b = *std::next(leaves.begin());
    g.add_edge(std::min(a, b), std::max(a, b));
    return g;
}

Graph random_connected_graph(int n, double density, Rng &rng) {
    Graph tree = random_tree(n, rng);
    Graph g(n, tree.edges());
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) {
            if (g.has_edge(u, v)) continue;
            if (static_cast<double>(rng.below(1u << 20)) / (1u << 20) < density) g.add_edge(u, v);
        }
    return g;
}

Graph random_series_parallel_2connected(int n, Rng &rng) {
    if (n < 3) throw std::invalid_argument("random_series_parallel_2connected: need n >= 3");
    // Start from a triangle; grow by subdividing an edge or adding a 2-path
    // parallel to an edge. Both preserve 2-connectedness and the SP class.
    std::vector<Edge> edges = {{0, 1}, {0, 2}, {1, 2}};
    int nodes = 3;
    while (nodes < n) {
        std::size_t ei = rng.below(edges.size());
        auto [u, v] = edges[ei];
        int x = nodes++;
        if (rng.below(2) == 0) {
            // Series: subdivide u-v into u-x-v.
            edges.erase(edges.begin() + static_cast<long>(ei));
            edges.push_back({std::min(u, x), std::max(u, x)});
            edges.push_back({std::min(x, v), std::max(x, v)});
        } else {
            // Parallel: add path u-x-v alongside the edge.
            edges.push_back({std::min(u, x), std::max(u, x)});
            edges.push_back({std::min(x, v), std::max(x, v)});
        }
    }
    return Graph(n, edges);
}

Graph random_series_parallel_graph(int n, Rng &rng) {
    if (n <= 2) return random_tree(n, rng);
    // First block on nodes 0..first-1, then glue further blocks (or pendant
    // edges) at random anchors until all n nodes are used.
    std::vector<Edge> edges;
    int first = static_cast<int>(rng.range(2, std::min(n, 6)));
    if (first >= 3) {
        Graph block = random_series_parallel_2connected(first, rng);
        for (auto [u, v] : block.edges()) edges.push_back({u, v});
    } else {
        edges.push_back({0, 1});
    }
    int used = first;
    while (used < n) {
        int anchor = static_cast<int>(rng.below(used));
        int fresh = static_cast<int>(rng.range(1, std::min(n - used, 5)));
        if (fresh == 1) {
            edges.push_back({std::min(anchor, used), std::max(anchor, used)});
            used += 1;
            continue;
        }
        std::vector<int> ids(fresh + 1);
        ids[0] = anchor;
        for (int i = 1; i <= fresh; ++i) ids[i] = used + i - 1;
        Graph block = random_series_parallel_2connected(fresh + 1, rng);
        for (auto [u, v] : block.edges())
            edges.push_back({std::min(ids[u], ids[v]), std::max(ids[u], ids[v])});
        used += fresh;
    }
    return Graph(n, edges);
}

Graph random_k4_block_graph(int blocks, Rng &rng) {
    if (blocks < 1) throw std::invalid_argument("random_k4_block_graph: need blocks >= 1");
    std::vector<Edge> edges;
    int used = 0;
    for (int b = 0; b < blocks; ++b) {
        bool make_k4 = (b == 0) || rng.below(2) == 0;
        int anchor = used == 0 ? -1 : static_cast<int>(rng.below(used));
        int fresh = make_k4 ? (anchor < 0 ? 4 : 3) : static_cast<int>(rng.range(2, 4));
        std::vector<int> ids;
        if (anchor >= 0) ids.push_back(anchor);
        for (int i = 0; i < fresh; ++i) ids.push_back(used + i);
        used += fresh;
        if (make_k4) {
            for (std::size_t i = 0; i < ids.size(); ++i)
                for (std::size_t j = i + 1; j < ids.size(); ++j)
                    edges.push_back({std::min(ids[i], ids[j]), std::max(ids[i], ids[j])});
        } else if (ids.size() == 2) {
            edges.push_back({std::min(ids[0], ids[1]), std::max(ids[0], ids[1])});
        } else {
            Graph block = random_series_parallel_2connected(static_cast<int>(ids.size()), rng);
            for (auto [u, v] : block.edges())
                edges.push_back({std::min(ids[u], ids[v]), std::max(ids[u], ids[v])});
        }
    }
    return Graph(used, edges);
}

Graph random_grid_subgraph(int width, int height, double extra_density, Rng &rng) {
    int n = width * height;
    auto id = [&](int r, int c) { return r * width + c; };
    std::vector<Edge> grid;
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) {
            if (c + 1 < width) grid.push_back({id(r, c), id(r, c + 1)});
            if (r + 1 < height) grid.push_back({id(r, c), id(r + 1, c)});
        }
    // Random spanning tree by randomized edge insertion (union-find).
    std::vector<std::size_t> order(grid.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    Graph g(n);
    std::vector<char> used(grid.size(), 0);
    for (std::size_t oi : order) {
        auto [u, v] = grid[oi];
        if (find(u) != find(v)) {
            parent[find(u)] = find(v);
            g.add_edge(u, v);
            used[oi] = 1;
        }
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (used[i]) continue;
        if (static_cast<double>(rng.below(1u << 20)) / (1u << 20) < extra_density)
            g.add_edge(grid[i].first, grid[i].second);
    }
    return g;
}

std::shared_ptr<EdgeSumValuation> random_idm_valuation(const Graph &graph, Rng &rng, Value lo,
                                                       Value hi) {
    std::vector<Value> weights(graph.edge_count());
    for (Value &w : weights) w = rng.range(lo, hi);
    return std::make_shared<EdgeSumValuation>(graph, std::move(weights));
}

std::shared_ptr<TableValuation> random_idm_table_valuation(const Graph &graph, Rng &rng, Value lo,
                                                           Value hi) {
    int n = graph.node_count();
    if (n > 10) throw BudgetError("random_idm_table_valuation: node count exceeds 10");
    auto edge_sum = random_idm_valuation(graph, rng, lo, hi);
    std::vector<Value> node_constant(n);
    for (Value &c : node_constant) c = rng.range(lo, hi);
    std::map<NodeSet, Value> table;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        NodeSet s = NodeSet::from_mask(mask);
        Value v = edge_sum->evaluate(s);
        for (NodeId i : s) v += node_constant[i];
        table.emplace(std::move(s), v);
    }
    return std::make_shared<TableValuation>(std::move(table));
}

Cnf3 random_cnf3(int variables, int clauses, Rng &rng) {
    Cnf3 cnf;
    cnf.variable_count = variables;
    for (int i = 0; i < clauses; ++i) {
        std::array<int, 3> clause;
        for (int j = 0; j < 3; ++j) {
            int var = static_cast<int>(rng.below(variables)) + 1;
            clause[j] = rng.below(2) == 0 ? var : -var;
        }
        cnf.clauses.push_back(clause);
    }
    return cnf;
}

std::optional<Assignment> sat_bruteforce(const Cnf3 &cnf, int variable_cap) {
    cnf.validate();
    if (cnf.variable_count > variable_cap)
        throw BudgetError("sat_bruteforce: variable count exceeds cap");
    int v = cnf.variable_count;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << v); ++mask) {
        Assignment a(v);
        for (int i = 0; i < v; ++i) a[i] = (mask >> i) & 1;
        if (satisfies(cnf, a)) return a;
    }
    return std::nullopt;
}

} // namespace gcsg::harness
