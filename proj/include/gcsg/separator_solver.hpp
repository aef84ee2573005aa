#ifndef GCSG_SEPARATOR_SOLVER_HPP
#define GCSG_SEPARATOR_SOLVER_HPP

#include "gcsg/enumeration.hpp"
#include "gcsg/graph.hpp"
#include "gcsg/valuation.hpp"

#include <map>
#include <optional>
#include <vector>

namespace gcsg {

enum class BoundaryEnumeration { AllPartitions, NonCrossing };

struct SolverConfig {
    /// Below this node count a subproblem is solved by constrained
    /// enumeration instead of recursing.
    int base_threshold = 8;
    /// Separator balance fraction (the α of the separator theorems).
    double balance = 2.0 / 3.0;
    /// NonCrossing restricts boundary traces to non-crossing partitions of
    /// the separator. Only sound when `embedding_order` is a planar boundary
    /// order for the instance; AllPartitions is always sound.
    BoundaryEnumeration boundary_enumeration = BoundaryEnumeration::AllPartitions;
    /// Node order asserted by the caller for NonCrossing (a permutation of
    /// the graph's nodes, e.g. the outer-face order of an outerplanar graph).
    std::vector<NodeId> embedding_order;
    /// Hard cap on forced base-case enumerations (complete-graph fallback).
    int enumeration_cap = kDefaultEnumerationCap;
    /// Recursion depth budget; balanced separators keep depth logarithmic,
    /// so hitting this signals a runaway configuration.
    int max_depth = 64;
    SeparatorOptions separator;
};

/// Divide-and-conquer solver: split on a balanced separator, enumerate
/// interface states on both sides, recurse, and combine. Returns an optimal
/// connected structure inducing the constraint partition on its domain, or
/// nullopt when no structure does. Throws BudgetError when a forced base
/// case exceeds the enumeration cap.
std::optional<Solution> solve_separator(const Graph &graph, ValuationPtr valuation,
                                        const BoundaryConstraint &constraint,
                                        const SolverConfig &config = {});

namespace separator_detail {

/// Interface state of a partial solution on an interface domain: `groups`
/// is the partition of the domain by final-block commitment, `pieces` its
/// refinement by the blocks' current connected components. A block that
/// touches no domain node must already be connected; in a finished structure
/// every block is connected, so groups == pieces.
struct InterfaceState {
    CoalitionStructure groups;
    CoalitionStructure pieces;

    friend bool operator<(const InterfaceState &a, const InterfaceState &b) {
        if (a.groups.blocks != b.groups.blocks) return a.groups.blocks < b.groups.blocks;
        return a.pieces.blocks < b.pieces.blocks;
    }
    friend bool operator==(const InterfaceState &a, const InterfaceState &b) {
        return a.groups == b.groups && a.pieces == b.pieces;
    }
};

struct Entry {
    CoalitionStructure partial; // partition of the subproblem's nodes (global ids)
    Value value = 0;            // sum of the side valuation over partial blocks
};

using StateMap = std::map<InterfaceState, Entry>;

/// Best partial solution per reachable interface state for the subproblem on
/// `nodes` with interface `dom`, under `valuation` (all in the root graph's
/// node ids). Handles disconnected `nodes` by solving per component and
/// taking cross products.
StateMap solve_all(const Graph &root, const NodeSet &nodes, const NodeSet &dom,
                   ValuationPtr valuation, const SolverConfig &config, int depth);

} // namespace separator_detail

} // namespace gcsg

#endif
