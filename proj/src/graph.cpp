#include "gcsg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stack>

namespace gcsg {

Graph::Graph(int node_count) {
    if (node_count < 0) throw std::invalid_argument("Graph: negative node count");
    adjacency_.resize(node_count);
}

Graph::Graph(int node_count, const std::vector<Edge> &edges) : Graph(node_count) {
    for (const auto &[u, v] : edges) add_edge(u, v);
}

void Graph::check_node(NodeId v) const {
    if (v < 0 || v >= node_count()) throw std::invalid_argument("Graph: node id out of range");
}

void Graph::add_edge(NodeId u, NodeId v) {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("Graph: self-loop");
    if (u > v) std::swap(u, v);
    if (has_edge(u, v)) throw std::invalid_argument("Graph: duplicate edge");
    edges_.emplace_back(u, v);
    auto &au = adjacency_[u];
    au.insert(std::lower_bound(au.begin(), au.end(), v), v);
    auto &av = adjacency_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    const auto &a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
    NodeId w = adjacency_[u].size() <= adjacency_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), w);
}

const std::vector<NodeId> &Graph::neighbors(NodeId v) const {
    check_node(v);
    return adjacency_[v];
}

bool Graph::is_connected() const {
    int n = node_count();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::queue<NodeId> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        for (NodeId w : adjacency_[u])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
    }
    return reached == n;
}

Graph Graph::induced(const NodeSet &nodes) const {
    std::vector<NodeId> local(node_count(), -1);
    int idx = 0;
    for (NodeId v : nodes) {
        check_node(v);
        local[v] = idx++;
    }
    Graph sub(idx);
    for (const auto &[u, v] : edges_)
        if (local[u] >= 0 && local[v] >= 0) sub.add_edge(local[u], local[v]);
    return sub;
}

std::vector<NodeSet> connected_components(const Graph &graph, const NodeSet &subset) {
    int n = graph.node_count();
    std::vector<char> member(n, 0), seen(n, 0);
    for (NodeId v : subset) {
        if (v < 0 || v >= n) throw std::invalid_argument("connected_components: node out of range");
        member[v] = 1;
    }
    std::vector<NodeSet> result;
    for (NodeId s : subset) {
        if (seen[s]) continue;
        std::vector<NodeId> comp;
        std::queue<NodeId> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            NodeId u = q.front();
            q.pop();
            comp.push_back(u);
            for (NodeId w : graph.neighbors(u))
                if (member[w] && !seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        result.emplace_back(std::move(comp));
    }
    // Seeds are scanned in ascending order, so components are already ordered
    // by minimum id.
    return result;
}

std::vector<NodeSet> connected_components(const Graph &graph) {
    return connected_components(graph, full_node_set(graph.node_count()));
}

bool is_connected_structure(const Graph &graph, const CoalitionStructure &cs) {
    if (!cs.is_partition_of(full_node_set(graph.node_count())))
        throw std::invalid_argument("is_connected_structure: not a partition of the node set");
    for (const auto &block : cs.blocks)
        if (connected_components(graph, block).size() != 1) return false;
    return true;
}

std::vector<NodeSet> biconnected_components(const Graph &graph) {
    if (!graph.is_connected())
        throw std::invalid_argument("biconnected_components: graph must be connected; "
                                    "split into components first");
    int n = graph.node_count();
    std::vector<NodeSet> blocks;
    if (n <= 1) return blocks;

    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1), next_child(n, 0);
    std::vector<Edge> edge_stack;
    std::stack<NodeId> dfs;
    int timer = 0;

    dfs.push(0);
    disc[0] = low[0] = timer++;
    while (!dfs.empty()) {
        NodeId u = dfs.top();
        bool descended = false;
        const auto &nbrs = graph.neighbors(u);
        while (next_child[u] < static_cast<int>(nbrs.size())) {
            NodeId w = nbrs[next_child[u]++];
            if (disc[w] < 0) {
                parent[w] = u;
                edge_stack.emplace_back(u, w);
                disc[w] = low[w] = timer++;
                dfs.push(w);
                descended = true;
                break;
            }
            if (w != parent[u] && disc[w] < disc[u]) {
                edge_stack.emplace_back(u, w);
                low[u] = std::min(low[u], disc[w]);
            }
        }
        if (descended) continue;
        dfs.pop();
        NodeId p = parent[u];
        if (p < 0) continue;
        low[p] = std::min(low[p], low[u]);
        if (low[u] >= disc[p]) {
            // p is an articulation point (or the root); pop the block's edges.
            NodeSet block;
            while (!edge_stack.empty()) {
                Edge e = edge_stack.back();
                edge_stack.pop_back();
                block.insert(e.first);
                block.insert(e.second);
                if (e == Edge{p, u}) break;
            }
            blocks.push_back(std::move(block));
        }
    }

    std::sort(blocks.begin(), blocks.end(),
              [](const NodeSet &a, const NodeSet &b) { return a.min_id() < b.min_id(); });
    return blocks;
}

bool SeparatorDecomposition::valid(const Graph &graph) const {
    int n = graph.node_count();
    if (!part_a.unite(part_b).is_subset_of(full_node_set(n))) return false;
    if (static_cast<int>(part_a.unite(part_b).size()) != n) return false;
    if (!(part_a.intersect(part_b) == separator)) return false;
    NodeSet only_a = part_a.subtract(part_b);
    NodeSet only_b = part_b.subtract(part_a);
    for (const auto &[u, v] : graph.edges()) {
        bool ua = only_a.contains(u), ub = only_b.contains(u);
        bool va = only_a.contains(v), vb = only_b.contains(v);
        if ((ua && vb) || (ub && va)) return false;
    }
    double limit = balance * n + 1e-9;
    return static_cast<double>(only_a.size()) <= limit &&
           static_cast<double>(only_b.size()) <= limit;
}

namespace {

bool size_ok(std::size_t s, double balance, int n) {
    return static_cast<double>(s) <= balance * n + 1e-9;
}

/// Assigns components to two nonempty sides, each within the balance limit.
/// Component 0 goes to side one; later components prefer side two, subject to
/// a suffix-feasibility check, so the result is deterministic.
bool assign_two_sided(const std::vector<NodeSet> &comps, double balance, int n,
                      std::vector<char> &to_side_one) {
    int m = static_cast<int>(comps.size());
    if (m < 2) return false;
    int total = 0;
    std::vector<int> sizes(m);
    for (int i = 0; i < m; ++i) {
        sizes[i] = static_cast<int>(comps[i].size());
        total += sizes[i];
    }
    // feasible[i] = sums attainable from comps i..m-1
    std::vector<std::vector<char>> feasible(m + 1, std::vector<char>(total + 1, 0));
    feasible[m][0] = 1;
    for (int i = m - 1; i >= 0; --i)
        for (int s = 0; s <= total; ++s)
            feasible[i][s] =
                feasible[i + 1][s] || (s >= sizes[i] && feasible[i + 1][s - sizes[i]]);

    auto completes = [&](int i, int cur) {
        for (int s = 0; cur + s <= total; ++s)
            if (feasible[i][s] && size_ok(cur + s, balance, n) &&
                size_ok(total - cur - s, balance, n))
                return true;
        return false;
    };

    to_side_one.assign(m, 0);
    to_side_one[0] = 1;
    int cur = sizes[0];
    if (!completes(1, cur)) return false;
    for (int i = 1; i < m; ++i) {
        // Prefer side two; fall back to side one when the remainder can no
        // longer balance.
        bool exclude_ok = false;
        {
            int c = cur;
            for (int s = 0; c + s <= total; ++s)
                if (feasible[i + 1][s] && size_ok(c + s, balance, n) &&
                    size_ok(total - c - s, balance, n)) {
                    exclude_ok = true;
                    break;
                }
        }
        if (!exclude_ok) {
            to_side_one[i] = 1;
            cur += sizes[i];
        }
    }
    if (cur == total) return false; // side two ended up empty
    return size_ok(cur, balance, n) && size_ok(total - cur, balance, n);
}

SeparatorDecomposition make_decomposition(const Graph &graph, const NodeSet &sep,
                                          const std::vector<NodeSet> &comps,
                                          const std::vector<char> &to_side_one,
                                          double balance) {
    NodeSet a = sep, b = sep;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (to_side_one[i])
            a = a.unite(comps[i]);
        else
            b = b.unite(comps[i]);
    }
    SeparatorDecomposition dec;
    dec.part_a = std::move(a);
    dec.part_b = std::move(b);
    dec.separator = sep;
    dec.balance = balance;
    (void)graph;
    return dec;
}

/// Scans k-subsets in lexicographic order; `degenerate` allows all components
/// on one side.
bool exhaustive_scan(const Graph &graph, double balance, int k, bool degenerate,
                     SeparatorDecomposition &out) {
    int n = graph.node_count();
    std::vector<NodeId> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    NodeSet all = full_node_set(n);
    while (true) {
        NodeSet sep{std::vector<NodeId>(pick.begin(), pick.end())};
        auto comps = connected_components(graph, all.subtract(sep));
        if (!degenerate) {
            std::vector<char> side;
            if (assign_two_sided(comps, balance, n, side)) {
                out = make_decomposition(graph, sep, comps, side, balance);
                return true;
            }
        } else {
            if (size_ok(n - k, balance, n)) {
                std::vector<char> side(comps.size(), 1);
                out = make_decomposition(graph, sep, comps, side, balance);
                return true;
            }
        }
        // next k-combination
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return false;
}

bool level_cut_scan(const Graph &graph, double balance, const SeparatorOptions &opts,
                    SeparatorDecomposition &out) {
    int n = graph.node_count();
    std::vector<NodeId> roots;
    if (n <= opts.heuristic_root_cap) {
        for (int i = 0; i < n; ++i) roots.push_back(i);
    } else {
        for (int i = 0; i < opts.heuristic_root_cap; ++i) {
            NodeId r = static_cast<NodeId>(static_cast<long long>(i) * n / opts.heuristic_root_cap);
            if (roots.empty() || roots.back() != r) roots.push_back(r);
        }
    }

    std::size_t best_size = static_cast<std::size_t>(n) + 1;
    NodeId best_root = -1;
    int best_level = -1;
    std::vector<int> best_depth;

    std::vector<int> depth(n);
    for (NodeId root : roots) {
        std::fill(depth.begin(), depth.end(), -1);
        std::queue<NodeId> q;
        q.push(root);
        depth[root] = 0;
        int max_depth = 0;
        while (!q.empty()) {
            NodeId u = q.front();
            q.pop();
            max_depth = std::max(max_depth, depth[u]);
            for (NodeId w : graph.neighbors(u))
                if (depth[w] < 0) {
                    depth[w] = depth[u] + 1;
                    q.push(w);
                }
        }
        std::vector<int> level_size(max_depth + 1, 0);
        for (int v = 0; v < n; ++v) ++level_size[depth[v]];
        std::vector<int> prefix(max_depth + 2, 0);
        for (int l = 0; l <= max_depth; ++l) prefix[l + 1] = prefix[l] + level_size[l];
        for (int l = 1; l < max_depth; ++l) {
            int below = prefix[l];
            int above = n - prefix[l + 1];
            if (below < 1 || above < 1) continue;
            if (!size_ok(below, balance, n) || !size_ok(above, balance, n)) continue;
            if (static_cast<std::size_t>(level_size[l]) < best_size) {
                best_size = level_size[l];
                best_root = root;
                best_level = l;
                best_depth = depth;
            }
        }
    }
    if (best_root < 0) return false;

    std::vector<NodeId> sep_ids, a_ids, b_ids;
    for (int v = 0; v < n; ++v) {
        if (best_depth[v] == best_level)
            sep_ids.push_back(v);
        else if (best_depth[v] < best_level)
            a_ids.push_back(v);
        else
            b_ids.push_back(v);
    }
    NodeSet sep{std::move(sep_ids)};
    SeparatorDecomposition dec;
    dec.part_a = sep.unite(NodeSet{std::move(a_ids)});
    dec.part_b = sep.unite(NodeSet{std::move(b_ids)});
    dec.separator = std::move(sep);
    dec.balance = balance;
    out = std::move(dec);
    return true;
}

} // namespace

SeparatorDecomposition find_separator(const Graph &graph, double balance,
                                      const SeparatorOptions &opts) {
    int n = graph.node_count();
    if (n < 2) throw std::invalid_argument("find_separator: need at least 2 nodes");
    if (!(balance > 0.0 && balance < 1.0))
        throw std::invalid_argument("find_separator: balance must be in (0,1)");
    if (balance * n < 1.0)
        throw std::invalid_argument("find_separator: balance too tight for this size");
    if (!graph.is_connected()) throw std::invalid_argument("find_separator: graph disconnected");

    if (n == 2) {
        SeparatorDecomposition dec;
        dec.part_a = dec.part_b = dec.separator = full_node_set(2);
        dec.balance = balance;
        return dec;
    }

    SeparatorDecomposition dec;
    if (n <= opts.exhaustive_node_cap) {
        for (int k = 1; k <= n - 1; ++k) {
            if (exhaustive_scan(graph, balance, k, false, dec)) return dec;
            if (exhaustive_scan(graph, balance, k, true, dec)) return dec;
        }
    } else {
        if (level_cut_scan(graph, balance, opts, dec)) return dec;
        // Fall back to a pair cut: everything except two nonadjacent nodes.
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v = u + 1; v < n; ++v) {
                if (graph.has_edge(u, v)) continue;
                NodeSet rest = full_node_set(n).subtract(NodeSet{{u, v}});
                dec.part_a = rest.unite(NodeSet::single(u));
                dec.part_b = rest.unite(NodeSet::single(v));
                dec.separator = rest;
                dec.balance = balance;
                return dec;
            }
        }
        // Complete graph: one-sided cover.
        NodeSet rest = full_node_set(n).subtract(NodeSet::single(n - 1));
        dec.part_a = full_node_set(n);
        dec.part_b = rest;
        dec.separator = std::move(rest);
        dec.balance = balance;
        return dec;
    }
    // The exhaustive tier always succeeds by k = n-1 at the latest (a
    // one-sided cover with a single exclusive node), so this is unreachable
    // for balance*n >= 1.
    throw std::logic_error("find_separator: no decomposition found");
}

const char *to_string(GraphClass c) {
    switch (c) {
    case GraphClass::Acyclic: return "acyclic";
    case GraphClass::K4MinorFree: return "k4-minor-free";
    case GraphClass::K23MinorFree: return "k23-minor-free";
    case GraphClass::General: return "general";
    }
    return "?";
}

bool is_k4_block(const Graph &graph, const NodeSet &block) {
    if (block.size() != 4) return false;
    const auto &ids = block.ids();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (!graph.has_edge(ids[i], ids[j])) return false;
    return true;
}

bool is_series_parallel_block(const Graph &graph, const NodeSet &block) {
    if (block.size() <= 2) return true;
    Graph sub = graph.induced(block);
    int n = sub.node_count();

    // Simple-graph reduction state; parallel edges are merged eagerly, so a
    // suppression that would duplicate an existing edge just drops the node.
    std::vector<std::map<NodeId, char>> adj(n);
    for (const auto &[u, v] : sub.edges()) {
        adj[u][v] = 1;
        adj[v][u] = 1;
    }
    std::vector<char> alive(n, 1);
    int alive_count = n;

    std::vector<NodeId> queue;
    for (int v = 0; v < n; ++v)
        if (adj[v].size() == 2) queue.push_back(v);

    while (!queue.empty()) {
        NodeId x = queue.back();
        queue.pop_back();
        if (!alive[x] || adj[x].size() != 2 || alive_count <= 2) continue;
        auto it = adj[x].begin();
        NodeId u = it->first;
        NodeId w = std::next(it)->first;
        adj[u].erase(x);
        adj[w].erase(x);
        adj[x].clear();
        alive[x] = 0;
        --alive_count;
        if (!adj[u].count(w)) {
            adj[u][w] = 1;
            adj[w][u] = 1;
        }
        if (alive[u] && adj[u].size() == 2) queue.push_back(u);
        if (alive[w] && adj[w].size() == 2) queue.push_back(w);
    }

    if (alive_count != 2) return false;
    NodeId a = -1, b = -1;
    for (int v = 0; v < n; ++v)
        if (alive[v]) (a < 0 ? a : b) = v;
    return adj[a].size() == 1 && adj[a].count(b) == 1;
}

GraphClass classify_graph(const Graph &graph) {
    if (!graph.is_connected()) throw std::invalid_argument("classify_graph: graph disconnected");
    int n = graph.node_count();
    if (graph.edge_count() == n - 1) return GraphClass::Acyclic;

    auto blocks = biconnected_components(graph);
    bool all_sp = true, all_sp_or_k4 = true;
    for (const auto &block : blocks) {
        if (is_series_parallel_block(graph, block)) continue;
        all_sp = false;
        if (!is_k4_block(graph, block)) {
            all_sp_or_k4 = false;
            break;
        }
    }
    if (all_sp) return GraphClass::K4MinorFree;
    if (all_sp_or_k4) return GraphClass::K23MinorFree;
    return GraphClass::General;
}

} // namespace gcsg
