#include "gcsg/types.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace gcsg {

NodeSet::NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
        throw std::invalid_argument("NodeSet: duplicate node id");
}

NodeSet NodeSet::from_mask(std::uint64_t mask) {
    NodeSet s;
    while (mask) {
        int b = std::countr_zero(mask);
        s.ids_.push_back(b);
        mask &= mask - 1;
    }
    return s;
}

bool NodeSet::contains(NodeId v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

void NodeSet::insert(NodeId v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it != ids_.end() && *it == v) return;
    ids_.insert(it, v);
}

bool NodeSet::intersects(const NodeSet &other) const {
    auto a = ids_.begin();
    auto b = other.ids_.begin();
    while (a != ids_.end() && b != other.ids_.end()) {
        if (*a == *b) return true;
        if (*a < *b)
            ++a;
        else
            ++b;
    }
    return false;
}

bool NodeSet::is_subset_of(const NodeSet &other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

NodeSet NodeSet::unite(const NodeSet &other) const {
    NodeSet r;
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(r.ids_));
    return r;
}

NodeSet NodeSet::intersect(const NodeSet &other) const {
    NodeSet r;
    std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                          std::back_inserter(r.ids_));
    return r;
}

NodeSet NodeSet::subtract(const NodeSet &other) const {
    NodeSet r;
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(r.ids_));
    return r;
}

std::uint64_t NodeSet::to_mask() const {
    std::uint64_t m = 0;
    for (NodeId v : ids_) {
        if (v < 0 || v >= 64) throw std::invalid_argument("NodeSet::to_mask: id out of range");
        m |= std::uint64_t{1} << v;
    }
    return m;
}

void CoalitionStructure::canonicalize() {
    std::sort(blocks.begin(), blocks.end(), [](const NodeSet &a, const NodeSet &b) {
        return a.min_id() < b.min_id();
    });
}

std::size_t CoalitionStructure::node_count() const {
    std::size_t total = 0;
    for (const auto &b : blocks) total += b.size();
    return total;
}

bool CoalitionStructure::is_partition_of(const NodeSet &ground) const {
    std::vector<NodeId> all;
    for (const auto &b : blocks) {
        if (b.empty()) return false;
        all.insert(all.end(), b.begin(), b.end());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
    return all == ground.ids();
}

int CoalitionStructure::block_of(NodeId v) const {
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].contains(v)) return static_cast<int>(i);
    return -1;
}

CoalitionStructure induced_partition(const CoalitionStructure &cs, const NodeSet &domain) {
    std::vector<NodeSet> traces;
    for (const auto &b : cs.blocks) {
        NodeSet t = b.intersect(domain);
        if (!t.empty()) traces.push_back(std::move(t));
    }
    return CoalitionStructure(std::move(traces));
}

NodeSet full_node_set(int n) {
    std::vector<NodeId> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    return NodeSet(std::move(ids));
}

std::string to_string(const NodeSet &s) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) os << ',';
        os << s.ids()[i];
    }
    os << '}';
    return os.str();
}

std::string to_string(const CoalitionStructure &cs) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < cs.blocks.size(); ++i) {
        if (i) os << ' ';
        os << to_string(cs.blocks[i]);
    }
    os << '}';
    return os.str();
}

} // namespace gcsg
