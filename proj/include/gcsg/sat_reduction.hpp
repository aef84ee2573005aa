#ifndef GCSG_SAT_REDUCTION_HPP
#define GCSG_SAT_REDUCTION_HPP

#include "gcsg/graph.hpp"
#include "gcsg/types.hpp"
#include "gcsg/valuation.hpp"

#include <array>
#include <memory>
#include <optional>
#include <vector>

namespace gcsg {

/// 3-CNF formula. Literals use the DIMACS convention: +k is variable k,
/// -k its negation, 1 <= k <= variable_count. Repeated literals within a
/// clause are allowed.
struct Cnf3 {
    int variable_count = 0;
    std::vector<std::array<int, 3>> clauses;

    void validate() const;
    int clause_count() const { return static_cast<int>(clauses.size()); }
};

/// Assignment indexed by variable - 1.
using Assignment = std::vector<bool>;

bool satisfies(const Cnf3 &cnf, const Assignment &assignment);

/// The GCSG instance carved from a 3-CNF: one node per literal occurrence
/// plus a hub s. Hub-literal edges weigh 1; edges within a clause triple and
/// between complementary occurrences weigh -(3m+1). The optimal structure
/// value is m iff the formula is satisfiable.
struct ReductionArtifact {
    Graph graph;
    std::shared_ptr<EdgeSumValuation> weights;
    NodeId hub = 0;
    /// literal_nodes[i][j] = node of the j-th literal of clause i.
    std::vector<std::array<NodeId, 3>> literal_nodes;
    Cnf3 cnf;
};

ReductionArtifact reduce_3sat(const Cnf3 &cnf);

/// Reads a satisfying assignment off a structure of value m (x true iff some
/// positive occurrence of x shares the hub's block); any other value gives
/// nullopt.
std::optional<Assignment> decode_assignment(const ReductionArtifact &artifact,
                                            const CoalitionStructure &cs);

/// The proof's witness structure for a satisfying assignment: the hub plus
/// one true literal occurrence per clause, everything else singletons. Value
/// is exactly m. Throws std::invalid_argument if the assignment does not
/// satisfy the formula.
CoalitionStructure encode_assignment(const ReductionArtifact &artifact,
                                     const Assignment &assignment);

} // namespace gcsg

#endif
