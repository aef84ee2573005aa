#ifndef GCSG_VALUATION_HPP
#define GCSG_VALUATION_HPP

#include "gcsg/graph.hpp"
#include "gcsg/types.hpp"

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace gcsg {

/// Evaluation contract for coalition valuation functions: a pure map from
/// node subsets to exact integer values with v(∅) = 0. Implementations must
/// be immutable after construction and safe to call concurrently.
class Valuation {
public:
    virtual ~Valuation() = default;
    virtual Value evaluate(const NodeSet &coalition) const = 0;
};

using ValuationPtr = std::shared_ptr<const Valuation>;

/// v(C) = sum of the weights of edges with both endpoints in C.
class EdgeSumValuation : public Valuation {
public:
    EdgeSumValuation(const Graph &graph, std::vector<Value> edge_weights);

    Value evaluate(const NodeSet &coalition) const override;

    Value weight(NodeId u, NodeId v) const;
    const std::vector<Value> &edge_weights() const { return weights_; }
    const std::vector<Edge> &edges() const { return edges_; }
    int node_count() const { return static_cast<int>(adjacency_.size()); }

private:
    std::vector<Edge> edges_;
    std::vector<Value> weights_;
    std::vector<std::vector<std::pair<NodeId, Value>>> adjacency_; // sorted by neighbor
};

/// Explicit table over subsets; missing entries default to 0. Mostly for
/// tests and the IDM checker. Requires v(∅) = 0.
class TableValuation : public Valuation {
public:
    explicit TableValuation(std::map<NodeSet, Value> table);

    Value evaluate(const NodeSet &coalition) const override;

private:
    std::map<NodeSet, Value> table_;
};

Value structure_value(const Valuation &valuation, const CoalitionStructure &cs);

/// Result of normalize_singletons: ṽ with ṽ(C) = v(C) - Σ_{i∈C} v({i}) and
/// offset = Σ_{i∈N} v({i}). For every partition of N,
/// structure_value(v, 𝒞) = structure_value(ṽ, 𝒞) + offset, so optimal
/// structures coincide; ṽ is IDM whenever v is, and ṽ({i}) = 0.
struct NormalizedValuation {
    ValuationPtr valuation;
    Value offset = 0;
};

NormalizedValuation normalize_singletons(ValuationPtr base, const Graph &graph);

/// The induced valuation v^𝒟 over the B-side of a split (Lemma-style
/// wrapper): given a structure 𝒜 on the A-side with overlap D,
///   v^𝒟(F) = v(F ∪ ⋃_{C∈𝒜: C∩F≠∅} C) − Σ_{C∈𝒜: C∩F≠∅} v(C).
/// F may not contain A-side nodes outside D; evaluating such an F throws.
ValuationPtr induced_valuation(ValuationPtr base, const CoalitionStructure &boundary_structure,
                               const NodeSet &overlap);

/// Valuation over relabeled node ids: evaluate({i,...}) forwards to
/// base({local_to_global[i],...}). Used when solvers pass induced subgraphs.
ValuationPtr remapped_valuation(ValuationPtr base, std::vector<NodeId> local_to_global);

/// A designated node subset D plus a partition 𝒟 of it (blocks need not be
/// connected) that solutions must induce: the nonempty traces of a solution's
/// blocks on D must equal 𝒟 exactly.
struct BoundaryConstraint {
    NodeSet domain;
    CoalitionStructure structure;

    BoundaryConstraint() = default;
    BoundaryConstraint(NodeSet d, CoalitionStructure s);

    bool empty() const { return domain.empty(); }
    bool satisfied_by(const CoalitionStructure &cs) const;
};

struct IdmViolation {
    NodeId i = -1;
    NodeId j = -1;
    NodeSet separator;
};

/// Exhaustive independence-of-disconnected-members check: for every node
/// pair (i, j) and every vertex separator C of i and j in `graph`, tests
///   v(C∪{i}) − v(C) = v(C∪{i,j}) − v(C∪{j}).
/// Returns the first violation in deterministic order (pairs lexicographic,
/// separators by ascending bitmask), or nullopt if the valuation is IDM.
/// Throws BudgetError when node_count exceeds `node_cap`.
std::optional<IdmViolation> check_idm(const Valuation &valuation, const Graph &graph,
                                      int node_cap = 10);

} // namespace gcsg

#endif
