#ifndef GCSG_TREE_SOLVER_HPP
#define GCSG_TREE_SOLVER_HPP

#include "gcsg/enumeration.hpp"
#include "gcsg/graph.hpp"
#include "gcsg/valuation.hpp"

namespace gcsg {

enum class LeafOrder { SmallestFirst, LargestFirst };

/// Leaf-peeling solver for acyclic graphs. Singleton values are normalized
/// away first; a leaf i with neighbor j then joins j's block iff the
/// normalized pair value ṽ({i,j}) = v({i,j}) − v({i}) − v({j}) is strictly
/// positive (ties produce singletons). Requires an IDM valuation; the
/// optimal value is independent of the elimination order. O(n) valuation
/// evaluations for edge-sum inputs.
Solution solve_tree(const Graph &graph, ValuationPtr valuation,
                    LeafOrder order = LeafOrder::SmallestFirst);

} // namespace gcsg

#endif
