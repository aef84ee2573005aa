#ifndef GCSG_TYPES_HPP
#define GCSG_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcsg {

using NodeId = int;

/// Exact integer value; all arithmetic in the solver pipeline is integral,
/// so comparisons and ties never depend on rounding.
using Value = std::int64_t;

/// Thrown when an input file violates one of the text formats.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string &what) : std::runtime_error(what) {}
};

/// Thrown when a solver is asked to run outside its configured budget
/// (node caps, enumeration caps).
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string &what) : std::runtime_error(what) {}
};

/// Thrown when a solver is applied to a graph outside its class
/// (e.g. the series-parallel solver on a graph with a K4 minor).
struct ClassError : std::runtime_error {
    explicit ClassError(const std::string &what) : std::runtime_error(what) {}
};

/// A set of node ids, stored sorted and duplicate-free.
class NodeSet {
public:
    NodeSet() = default;

    /// Builds a set from arbitrary ids; sorts and rejects duplicates.
    explicit NodeSet(std::vector<NodeId> ids);

    static NodeSet single(NodeId v) { return NodeSet(std::vector<NodeId>{v}); }

    /// Decodes a bitmask over ids 0..63.
    static NodeSet from_mask(std::uint64_t mask);

    bool contains(NodeId v) const;
    bool empty() const { return ids_.empty(); }
    std::size_t size() const { return ids_.size(); }
    NodeId min_id() const { return ids_.front(); }

    const std::vector<NodeId> &ids() const { return ids_; }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    void insert(NodeId v);

    bool intersects(const NodeSet &other) const;
    bool is_subset_of(const NodeSet &other) const;

    NodeSet unite(const NodeSet &other) const;
    NodeSet intersect(const NodeSet &other) const;
    NodeSet subtract(const NodeSet &other) const;

    std::uint64_t to_mask() const;

    friend bool operator==(const NodeSet &a, const NodeSet &b) { return a.ids_ == b.ids_; }
    friend bool operator<(const NodeSet &a, const NodeSet &b) { return a.ids_ < b.ids_; }

private:
    std::vector<NodeId> ids_;
};

/// A partition of some ground set into disjoint, exhaustive, nonempty blocks.
/// Canonical form: ids sorted within blocks, blocks sorted by minimum id.
struct CoalitionStructure {
    std::vector<NodeSet> blocks;

    CoalitionStructure() = default;
    explicit CoalitionStructure(std::vector<NodeSet> b) : blocks(std::move(b)) { canonicalize(); }

    void canonicalize();

    std::size_t size() const { return blocks.size(); }

    /// Total number of nodes across blocks.
    std::size_t node_count() const;

    /// True iff blocks are disjoint, nonempty, and cover exactly `ground`.
    bool is_partition_of(const NodeSet &ground) const;

    /// Index of the block containing v, or -1.
    int block_of(NodeId v) const;

    friend bool operator==(const CoalitionStructure &a, const CoalitionStructure &b) {
        return a.blocks == b.blocks;
    }
    friend bool operator<(const CoalitionStructure &a, const CoalitionStructure &b) {
        return a.blocks < b.blocks;
    }
};

/// The partition `cs` induces on `domain`: nonempty traces of its blocks.
CoalitionStructure induced_partition(const CoalitionStructure &cs, const NodeSet &domain);

/// All nodes 0..n-1.
NodeSet full_node_set(int n);

std::string to_string(const NodeSet &s);
std::string to_string(const CoalitionStructure &cs);

} // namespace gcsg

#endif
