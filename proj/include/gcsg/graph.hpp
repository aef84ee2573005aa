#ifndef GCSG_GRAPH_HPP
#define GCSG_GRAPH_HPP

#include "gcsg/types.hpp"

#include <utility>
#include <vector>

namespace gcsg {

using Edge = std::pair<NodeId, NodeId>; // stored with first < second

/// Simple undirected graph on node ids 0..n-1. No self-loops, no duplicate
/// edges; the edge list and per-node adjacency always agree.
class Graph {
public:
    explicit Graph(int node_count);
    Graph(int node_count, const std::vector<Edge> &edges);

    int node_count() const { return static_cast<int>(adjacency_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    void add_edge(NodeId u, NodeId v);
    bool has_edge(NodeId u, NodeId v) const;

    const std::vector<Edge> &edges() const { return edges_; }
    /// Neighbors of v in ascending order.
    const std::vector<NodeId> &neighbors(NodeId v) const;
    int degree(NodeId v) const { return static_cast<int>(neighbors(v).size()); }

    bool is_connected() const;

    /// Induced subgraph on `nodes`, relabeled to 0..|nodes|-1 in ascending
    /// id order. `nodes.ids()[i]` is the original id of new node i.
    Graph induced(const NodeSet &nodes) const;

private:
    void check_node(NodeId v) const;

    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<Edge> edges_;
};

/// Connected components of the subgraph induced by `subset`, ordered by
/// ascending minimum node id. Empty subset gives an empty list.
std::vector<NodeSet> connected_components(const Graph &graph, const NodeSet &subset);

/// Components of the whole graph.
std::vector<NodeSet> connected_components(const Graph &graph);

/// True iff `cs` is a partition of the graph's nodes and every block induces
/// a connected subgraph. Throws std::invalid_argument on a non-partition.
bool is_connected_structure(const Graph &graph, const CoalitionStructure &cs);

/// Maximal 2-connected blocks of a connected graph; bridges count as 2-node
/// blocks. Blocks are ordered by ascending minimum node id and overlap only
/// at articulation points. Throws std::invalid_argument if disconnected.
std::vector<NodeSet> biconnected_components(const Graph &graph);

/// Cover (A, B) of the node set with separator D = A ∩ B: no edge joins
/// A\B to B\A, and both exclusive sides have at most balance*n nodes.
struct SeparatorDecomposition {
    NodeSet part_a;
    NodeSet part_b;
    NodeSet separator;
    double balance = 0.0;

    bool valid(const Graph &graph) const;
};

/// Strategy knobs for find_separator. The exhaustive tier scans candidate
/// separators in increasing size (minimal by construction); above
/// `exhaustive_node_cap` a BFS level-cut heuristic is used instead.
struct SeparatorOptions {
    int exhaustive_node_cap = 16;
    /// Max BFS roots tried by the heuristic tier.
    int heuristic_root_cap = 64;
};

/// Finds a balanced separator decomposition. Deterministic: candidates are
/// scanned in lexicographic order, components assigned to sides by a fixed
/// rule. Decompositions with two nonempty sides are preferred; for graphs
/// where none exists (e.g. complete graphs) a degenerate cover with one
/// empty exclusive side is returned. For n == 2 returns A = B = separator =
/// both nodes.
SeparatorDecomposition find_separator(const Graph &graph, double balance,
                                      const SeparatorOptions &opts = {});

enum class GraphClass { Acyclic, K4MinorFree, K23MinorFree, General };

const char *to_string(GraphClass c);

/// Most specific class tag for a connected graph:
///   Acyclic       e = n-1;
///   K4MinorFree   every biconnected block is series-parallel;
///   K23MinorFree  every block is series-parallel or isomorphic to K4;
///   General       otherwise.
GraphClass classify_graph(const Graph &graph);

/// True iff the graph reduces to a single edge under repeated suppression of
/// degree-2 nodes and parallel-edge merging. Expects a 2-connected block (or
/// a single edge, which is trivially series-parallel).
bool is_series_parallel_block(const Graph &graph, const NodeSet &block);

/// True iff `block` induces a K4 (4 nodes, all 6 edges).
bool is_k4_block(const Graph &graph, const NodeSet &block);

} // namespace gcsg

#endif
