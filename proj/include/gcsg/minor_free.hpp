#ifndef GCSG_MINOR_FREE_HPP
#define GCSG_MINOR_FREE_HPP

#include "gcsg/enumeration.hpp"
#include "gcsg/graph.hpp"
#include "gcsg/valuation.hpp"

#include <vector>

namespace gcsg {

/// One round of the 2-connected K4-minor-free reduction. Replaying steps in
/// reverse on a solved reduced instance reconstructs a structure over the
/// original graph. `v_plus` / `v_minus` are the optimal cycle values with
/// the anchors joined / separated.
struct ReductionStep {
    enum class Kind { EarRemoval, CycleContraction };

    /// How a fragment of removed cycle nodes re-attaches during expansion.
    struct Fragment {
        enum class Attach { ToA, ToB, Alone };
        NodeSet nodes;
        Attach attach = Attach::Alone;
    };

    Kind kind = Kind::EarRemoval;
    NodeId anchor_a = -1;
    NodeId anchor_b = -1;
    NodeSet removed_nodes;
    std::vector<Fragment> joined;    // expansion when the anchors share a block
    std::vector<Fragment> separated; // expansion when they do not
    Value v_plus = 0;
    Value v_minus = 0;
};

/// A cycle with at most two nodes of degree > 2 and no chords, as a node
/// list in cycle order. Requires a 2-connected K4-minor-free graph with at
/// least 3 nodes; throws ClassError naming the violated assumption.
std::vector<NodeId> find_reducible_cycle(const Graph &graph);

/// Cycle-reduction solver for 2-connected K4-minor-free graphs. The
/// valuation must be IDM; singletons are normalized internally and the
/// offset is restored in the reported value.
Solution solve_2connected_k4_free(const Graph &graph, ValuationPtr valuation);

/// Solver for K4- and K2,3-minor-free graphs (and trees, whose blocks are
/// single edges): decompose into biconnected blocks, solve each block (K4
/// blocks by exhausting their 15 partitions, series-parallel blocks by
/// cycle reduction), and merge block structures at articulation points.
/// `cls` must be at least as general as classify_graph's answer and at most
/// K23MinorFree, otherwise ClassError.
Solution solve_minor_free(const Graph &graph, ValuationPtr valuation, GraphClass cls);

} // namespace gcsg

#endif
