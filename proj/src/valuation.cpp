#include "gcsg/valuation.hpp"

#include <algorithm>

namespace gcsg {

EdgeSumValuation::EdgeSumValuation(const Graph &graph, std::vector<Value> edge_weights)
    : edges_(graph.edges()), weights_(std::move(edge_weights)) {
    if (weights_.size() != edges_.size())
        throw std::invalid_argument("EdgeSumValuation: weight count must match edge count");
    adjacency_.resize(graph.node_count());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        auto [u, v] = edges_[i];
        adjacency_[u].emplace_back(v, weights_[i]);
        adjacency_[v].emplace_back(u, weights_[i]);
    }
    for (auto &a : adjacency_) std::sort(a.begin(), a.end());
}

Value EdgeSumValuation::weight(NodeId u, NodeId v) const {
    const auto &a = adjacency_[u];
    auto it = std::lower_bound(a.begin(), a.end(), std::pair<NodeId, Value>{v, INT64_MIN});
    if (it == a.end() || it->first != v)
        throw std::invalid_argument("EdgeSumValuation::weight: no such edge");
    return it->second;
}

Value EdgeSumValuation::evaluate(const NodeSet &coalition) const {
    if (coalition.size() < 2) return 0;
    if (coalition.size() == 2) {
        NodeId u = coalition.ids()[0], v = coalition.ids()[1];
        const auto &a = adjacency_[u];
        auto it = std::lower_bound(a.begin(), a.end(), std::pair<NodeId, Value>{v, INT64_MIN});
        return (it != a.end() && it->first == v) ? it->second : 0;
    }
    Value total = 0;
    for (NodeId u : coalition)
        for (const auto &[v, w] : adjacency_[u])
            if (v > u && coalition.contains(v)) total += w;
    return total;
}

TableValuation::TableValuation(std::map<NodeSet, Value> table) : table_(std::move(table)) {
    auto it = table_.find(NodeSet{});
    if (it != table_.end() && it->second != 0)
        throw std::invalid_argument("TableValuation: v(empty) must be 0");
}

Value TableValuation::evaluate(const NodeSet &coalition) const {
    auto it = table_.find(coalition);
    return it == table_.end() ? 0 : it->second;
}

Value structure_value(const Valuation &valuation, const CoalitionStructure &cs) {
    Value total = 0;
    for (const auto &block : cs.blocks) {
        if (block.empty()) throw std::invalid_argument("structure_value: empty block");
        total += valuation.evaluate(block);
    }
    return total;
}

namespace {

class SingletonNormalized : public Valuation {
public:
    SingletonNormalized(ValuationPtr base, std::vector<Value> singleton)
        : base_(std::move(base)), singleton_(std::move(singleton)) {}

    Value evaluate(const NodeSet &coalition) const override {
        Value v = base_->evaluate(coalition);
        for (NodeId i : coalition) v -= singleton_[i];
        return v;
    }

private:
    ValuationPtr base_;
    std::vector<Value> singleton_;
};

class InducedValuation : public Valuation {
public:
    InducedValuation(ValuationPtr base, CoalitionStructure boundary, NodeSet forbidden)
        : base_(std::move(base)), boundary_(std::move(boundary)),
          forbidden_(std::move(forbidden)) {}

    Value evaluate(const NodeSet &coalition) const override {
        if (coalition.intersects(forbidden_))
            throw std::invalid_argument(
                "induced valuation: coalition reaches A-side nodes outside the overlap");
        NodeSet joined = coalition;
        Value touched_sum = 0;
        for (const auto &block : boundary_.blocks) {
            if (!block.intersects(coalition)) continue;
            joined = joined.unite(block);
            touched_sum += base_->evaluate(block);
        }
        return base_->evaluate(joined) - touched_sum;
    }

private:
    ValuationPtr base_;
    CoalitionStructure boundary_;
    NodeSet forbidden_;
};

class RemappedValuation : public Valuation {
public:
    RemappedValuation(ValuationPtr base, std::vector<NodeId> local_to_global)
        : base_(std::move(base)), map_(std::move(local_to_global)) {}

    Value evaluate(const NodeSet &coalition) const override {
        std::vector<NodeId> global;
        global.reserve(coalition.size());
        for (NodeId v : coalition) {
            if (v < 0 || v >= static_cast<NodeId>(map_.size()))
                throw std::invalid_argument("remapped valuation: local id out of range");
            global.push_back(map_[v]);
        }
        return base_->evaluate(NodeSet(std::move(global)));
    }

private:
    ValuationPtr base_;
    std::vector<NodeId> map_;
};

} // namespace

ValuationPtr remapped_valuation(ValuationPtr base, std::vector<NodeId> local_to_global) {
    return std::make_shared<RemappedValuation>(std::move(base), std::move(local_to_global));
}

NormalizedValuation normalize_singletons(ValuationPtr base, const Graph &graph) {
    int n = graph.node_count();
    std::vector<Value> singleton(n);
    Value offset = 0;
    bool all_zero = true;
    for (NodeId i = 0; i < n; ++i) {
        singleton[i] = base->evaluate(NodeSet::single(i));
        offset += singleton[i];
        all_zero = all_zero && singleton[i] == 0;
    }
    if (all_zero) return {std::move(base), 0};
    return {std::make_shared<SingletonNormalized>(std::move(base), std::move(singleton)), offset};
}

ValuationPtr induced_valuation(ValuationPtr base, const CoalitionStructure &boundary_structure,
                               const NodeSet &overlap) {
    NodeSet a_side;
    for (const auto &block : boundary_structure.blocks) a_side = a_side.unite(block);
    if (!overlap.is_subset_of(a_side))
        throw std::invalid_argument("induced_valuation: overlap must lie within the A-side");
    return std::make_shared<InducedValuation>(std::move(base), boundary_structure,
                                              a_side.subtract(overlap));
}

BoundaryConstraint::BoundaryConstraint(NodeSet d, CoalitionStructure s)
    : domain(std::move(d)), structure(std::move(s)) {
    if (!structure.is_partition_of(domain))
        throw std::invalid_argument("BoundaryConstraint: structure must partition the domain");
}

bool BoundaryConstraint::satisfied_by(const CoalitionStructure &cs) const {
    if (domain.empty()) return true;
    return induced_partition(cs, domain) == structure;
}

std::optional<IdmViolation> check_idm(const Valuation &valuation, const Graph &graph,
                                      int node_cap) {
    int n = graph.node_count();
    if (n > node_cap)
        throw BudgetError("check_idm: graph larger than the exhaustive-search cap");
    if (n > 62) throw BudgetError("check_idm: graph too large for mask enumeration");

    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            std::uint64_t others = 0;
            for (NodeId v = 0; v < n; ++v)
                if (v != i && v != j) others |= std::uint64_t{1} << v;
            // All subsets of N \ {i,j}, ascending by mask value.
            for (std::uint64_t sub = 0;; sub = (sub - others) & others) {
                NodeSet sep = NodeSet::from_mask(sub);
                // C is a vertex separator of i and j iff they end up in
                // different components of G - C.
                NodeSet rest = full_node_set(n).subtract(sep);
                bool separated = true;
                for (const auto &comp : connected_components(graph, rest))
                    if (comp.contains(i) && comp.contains(j)) {
                        separated = false;
                        break;
                    }
                if (separated) {
                    NodeSet ci = sep.unite(NodeSet::single(i));
                    NodeSet cj = sep.unite(NodeSet::single(j));
                    NodeSet cij = ci.unite(NodeSet::single(j));
                    Value lhs = valuation.evaluate(ci) - valuation.evaluate(sep);
                    Value rhs = valuation.evaluate(cij) - valuation.evaluate(cj);
                    if (lhs != rhs) return IdmViolation{i, j, std::move(sep)};
                }
                if (sub == others) break;
            }
        }
    }
    return std::nullopt;
}

} // namespace gcsg
