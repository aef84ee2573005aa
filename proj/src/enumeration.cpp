#include "gcsg/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace gcsg {

namespace {

int lowest_bit(std::uint64_t m) { return std::countr_zero(m); }

/// Recursive block-growing enumerator over bitmasks (node_cap <= 62 keeps
/// masks in one word).
struct StructureEnumerator {
    std::vector<std::uint64_t> adj;
    const std::function<bool(const CoalitionStructure &)> *visit = nullptr;
    std::vector<std::uint64_t> blocks;
    bool stopped = false;

    void partition_rest(std::uint64_t remaining) {
        if (stopped) return;
        if (!remaining) {
            std::vector<NodeSet> sets;
            sets.reserve(blocks.size());
            for (auto m : blocks) sets.push_back(NodeSet::from_mask(m));
            CoalitionStructure cs(std::move(sets));
            if (!(*visit)(cs)) stopped = true;
            return;
        }
        int s = lowest_bit(remaining);
        std::uint64_t seed = std::uint64_t{1} << s;
        grow(seed, adj[s] & remaining & ~seed, 0, remaining);
    }

    /// Enumerates each connected superset of `cur` within `remaining` exactly
    /// once: candidates are consumed in ascending id order, and once a
    /// candidate has been tried it is banned for the rest of this branch.
    void grow(std::uint64_t cur, std::uint64_t cand, std::uint64_t banned,
              std::uint64_t remaining) {
        if (stopped) return;
        blocks.push_back(cur);
        partition_rest(remaining & ~cur);
        blocks.pop_back();
        if (stopped) return;

        std::uint64_t pending = cand;
        std::uint64_t local_ban = banned;
        while (pending) {
            int v = lowest_bit(pending);
            std::uint64_t vbit = std::uint64_t{1} << v;
            pending &= pending - 1;
            std::uint64_t next_cur = cur | vbit;
            std::uint64_t next_cand =
                (pending | (adj[v] & remaining)) & ~next_cur & ~local_ban;
            grow(next_cur, next_cand, local_ban, remaining);
            if (stopped) return;
            local_ban |= vbit;
        }
    }
};

void check_cap(const Graph &graph, int node_cap, const char *who) {
    if (graph.node_count() > node_cap)
        throw BudgetError(std::string(who) + ": node count " +
                          std::to_string(graph.node_count()) + " exceeds cap " +
                          std::to_string(node_cap));
}

} // namespace

void enumerate_connected_structures(const Graph &graph,
                                    const std::function<bool(const CoalitionStructure &)> &visit,
                                    int node_cap) {
    check_cap(graph, std::min(node_cap, 62), "enumerate_connected_structures");
    int n = graph.node_count();
    if (n == 0) {
        visit(CoalitionStructure{});
        return;
    }
    StructureEnumerator en;
    en.adj.assign(n, 0);
    for (const auto &[u, v] : graph.edges()) {
        en.adj[u] |= std::uint64_t{1} << v;
        en.adj[v] |= std::uint64_t{1} << u;
    }
    en.visit = &visit;
    std::uint64_t all = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    en.partition_rest(all);
}

std::vector<CoalitionStructure> connected_structures(const Graph &graph, int node_cap) {
    std::vector<CoalitionStructure> out;
    enumerate_connected_structures(
        graph,
        [&](const CoalitionStructure &cs) {
            out.push_back(cs);
            return true;
        },
        node_cap);
    return out;
}

std::uint64_t count_connected_structures(const Graph &graph, int node_cap) {
    std::uint64_t count = 0;
    enumerate_connected_structures(
        graph,
        [&](const CoalitionStructure &) {
            ++count;
            return true;
        },
        node_cap);
    return count;
}

std::uint64_t structure_count_bound(int node_count, int edge_count) {
    unsigned __int128 r = 1;
    const unsigned __int128 cap = std::numeric_limits<std::uint64_t>::max();
    for (int k = 1; k <= node_count; ++k) {
        r = r * static_cast<unsigned>(edge_count + k) / static_cast<unsigned>(k);
        if (r > cap) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

std::optional<Solution> solve_bruteforce(const Graph &graph, const Valuation &valuation,
                                         const BoundaryConstraint *constraint, int node_cap) {
    std::optional<Solution> best;
    enumerate_connected_structures(
        graph,
        [&](const CoalitionStructure &cs) {
            if (constraint && !constraint->satisfied_by(cs)) return true;
            Value v = structure_value(valuation, cs);
            if (!best || v > best->value) best = Solution{cs, v};
            return true;
        },
        node_cap);
    return best;
}

bool is_crossing(const CoalitionStructure &partition, int r) {
    std::vector<int> block_of(r, -1);
    for (std::size_t b = 0; b < partition.blocks.size(); ++b)
        for (NodeId v : partition.blocks[b]) {
            if (v < 0 || v >= r)
                throw std::invalid_argument("is_crossing: element outside 0..r-1");
            block_of[v] = static_cast<int>(b);
        }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int k = j + 1; k < r; ++k)
                for (int l = k + 1; l < r; ++l)
                    if (block_of[i] == block_of[k] && block_of[j] == block_of[l] &&
                        block_of[i] != block_of[j])
                        return true;
    return false;
}

namespace {

struct LabelEnumerator {
    int r = 0;
    std::string labels;
    std::vector<std::vector<NodeId>> blocks;
    std::vector<int> open_stack; // indices into blocks
    std::vector<CoalitionStructure> *out = nullptr;

    void rec(int pos) {
        if (pos == r) {
            if (!open_stack.empty()) return;
            std::vector<NodeSet> sets;
            for (auto &b : blocks) sets.emplace_back(b);
            out->emplace_back(std::move(sets));
            return;
        }
        int opens = static_cast<int>(open_stack.size());
        int left = r - pos - 1; // positions after this one

        // F: open a new block (needs room for its close).
        if (left >= opens + 1) {
            labels.push_back('F');
            blocks.push_back({pos});
            open_stack.push_back(static_cast<int>(blocks.size()) - 1);
            rec(pos + 1);
            open_stack.pop_back();
            blocks.pop_back();
            labels.pop_back();
        }
        // M: middle of the innermost open block.
        if (opens >= 1 && left >= opens) {
            labels.push_back('M');
            blocks[open_stack.back()].push_back(pos);
            rec(pos + 1);
            blocks[open_stack.back()].pop_back();
            labels.pop_back();
        }
        // L: close the innermost open block.
        if (opens >= 1 && left >= opens - 1) {
            labels.push_back('L');
            int b = open_stack.back();
            open_stack.pop_back();
            blocks[b].push_back(pos);
            rec(pos + 1);
            blocks[b].pop_back();
            open_stack.push_back(b);
            labels.pop_back();
        }
        // S: singleton.
        if (left >= opens) {
            labels.push_back('S');
            blocks.push_back({pos});
            rec(pos + 1);
            blocks.pop_back();
            labels.pop_back();
        }
    }
};

} // namespace

std::vector<CoalitionStructure> enumerate_noncrossing(int boundary_size, int cap) {
    if (boundary_size < 0) throw std::invalid_argument("enumerate_noncrossing: negative size");
    if (boundary_size > cap)
        throw BudgetError("enumerate_noncrossing: boundary size exceeds cap");
    std::vector<CoalitionStructure> out;
    if (boundary_size == 0) return out;
    LabelEnumerator en;
    en.r = boundary_size;
    en.out = &out;
    en.rec(0);
    return out;
}

std::string encode_labelling(const CoalitionStructure &partition, int r) {
    if (!partition.is_partition_of(full_node_set(r)))
        throw std::invalid_argument("encode_labelling: not a partition of 0..r-1");
    std::string labels(r, '?');
    for (const auto &block : partition.blocks) {
        const auto &ids = block.ids();
        if (ids.size() == 1) {
            labels[ids[0]] = 'S';
            continue;
        }
        labels[ids.front()] = 'F';
        labels[ids.back()] = 'L';
        for (std::size_t i = 1; i + 1 < ids.size(); ++i) labels[ids[i]] = 'M';
    }
    return labels;
}

CoalitionStructure decode_labelling(const std::string &labels) {
    std::vector<std::vector<NodeId>> blocks;
    std::vector<int> open_stack;
    for (int pos = 0; pos < static_cast<int>(labels.size()); ++pos) {
        switch (labels[pos]) {
        case 'F':
            blocks.push_back({pos});
            open_stack.push_back(static_cast<int>(blocks.size()) - 1);
            break;
        case 'M':
            if (open_stack.empty())
                throw std::invalid_argument("decode_labelling: M with no open block");
            blocks[open_stack.back()].push_back(pos);
            break;
        case 'L':
            if (open_stack.empty())
                throw std::invalid_argument("decode_labelling: L with no open block");
            blocks[open_stack.back()].push_back(pos);
            open_stack.pop_back();
            break;
        case 'S':
            blocks.push_back({pos});
            break;
        default:
            throw std::invalid_argument("decode_labelling: unknown label");
        }
    }
    if (!open_stack.empty())
        throw std::invalid_argument("decode_labelling: unclosed block");
    std::vector<NodeSet> sets;
    for (auto &b : blocks) sets.emplace_back(std::move(b));
    return CoalitionStructure(std::move(sets));
}

} // namespace gcsg
