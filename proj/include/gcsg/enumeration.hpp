#ifndef GCSG_ENUMERATION_HPP
#define GCSG_ENUMERATION_HPP

#include "gcsg/graph.hpp"
#include "gcsg/types.hpp"
#include "gcsg/valuation.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gcsg {

inline constexpr int kDefaultEnumerationCap = 12;
inline constexpr int kDefaultNoncrossingCap = 16;

/// Visits every connected coalition structure of the graph exactly once, in
/// deterministic order: the block containing the smallest unassigned node is
/// grown over all connected supersets within the unassigned nodes, then the
/// rest is partitioned recursively. Return false from the visitor to stop.
/// Throws BudgetError when node_count exceeds `node_cap`.
void enumerate_connected_structures(const Graph &graph,
                                    const std::function<bool(const CoalitionStructure &)> &visit,
                                    int node_cap = kDefaultEnumerationCap);

std::vector<CoalitionStructure> connected_structures(const Graph &graph,
                                                     int node_cap = kDefaultEnumerationCap);

std::uint64_t count_connected_structures(const Graph &graph,
                                         int node_cap = kDefaultEnumerationCap);

/// binomial(e+n, n), the counting bound for connected structures; saturates
/// at UINT64_MAX on overflow.
std::uint64_t structure_count_bound(int node_count, int edge_count);

struct Solution {
    CoalitionStructure structure;
    Value value = 0;
};

/// Exhaustive solve over connected structures; with a constraint, only
/// structures inducing the constraint partition on its domain count, and
/// nullopt reports infeasibility. Ties are broken by enumeration order.
std::optional<Solution> solve_bruteforce(const Graph &graph, const Valuation &valuation,
                                         const BoundaryConstraint *constraint = nullptr,
                                         int node_cap = kDefaultEnumerationCap);

/// True iff the partition crosses the order 0..r-1: there are positions
/// i < j < k < l with {i,k} in one block and {j,l} in another.
bool is_crossing(const CoalitionStructure &partition, int r);

/// All non-crossing partitions of the ordered set {0..r-1}, generated from
/// valid F/L/M/S labellings (first/last/middle/singleton of a block along
/// the order). Stream length is at most 4^r / 2. r = 0 gives an empty list.
std::vector<CoalitionStructure> enumerate_noncrossing(int boundary_size,
                                                      int cap = kDefaultNoncrossingCap);

/// The F/L/M/S labelling of a non-crossing partition, as a string over
/// {'F','L','M','S'}. Inverse of decode_labelling.
std::string encode_labelling(const CoalitionStructure &partition, int r);

/// Decodes a labelling by bracket matching; throws std::invalid_argument on
/// an invalid labelling.
CoalitionStructure decode_labelling(const std::string &labels);

} // namespace gcsg

#endif
