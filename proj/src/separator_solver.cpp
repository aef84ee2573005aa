#include "gcsg/separator_solver.hpp"

#include <algorithm>
#include <bit>

namespace gcsg {
namespace separator_detail {

namespace {

/// Bitmask scaffolding for one base-case enumeration.
struct BaseContext {
    std::vector<NodeId> ids;            // local -> global
    std::vector<std::uint64_t> adj;     // local adjacency masks
    std::uint64_t dom_mask = 0;         // local mask of interface nodes
};

NodeSet to_global(std::uint64_t mask, const std::vector<NodeId> &ids) {
    std::vector<NodeId> out;
    while (mask) {
        int b = std::countr_zero(mask);
        out.push_back(ids[b]);
        mask &= mask - 1;
    }
    return NodeSet(std::move(out));
}

std::vector<std::uint64_t> mask_components(std::uint64_t mask,
                                           const std::vector<std::uint64_t> &adj) {
    std::vector<std::uint64_t> comps;
    while (mask) {
        std::uint64_t comp = std::uint64_t{1} << std::countr_zero(mask);
        while (true) {
            std::uint64_t frontier = 0;
            std::uint64_t scan = comp;
            while (scan) {
                int v = std::countr_zero(scan);
                scan &= scan - 1;
                frontier |= adj[v];
            }
            std::uint64_t grown = (comp | frontier) & mask;
            if (grown == comp) break;
            comp = grown;
        }
        comps.push_back(comp);
        mask &= ~comp;
    }
    return comps;
}

void bucket(StateMap &map, InterfaceState state, Entry entry) {
    auto it = map.find(state);
    if (it == map.end())
        map.emplace(std::move(state), std::move(entry));
    else if (entry.value > it->second.value)
        it->second = std::move(entry);
}

/// Enumerates all set partitions of `nodes` (restricted growth strings) and
/// buckets the valid partial solutions by interface state. A block may be
/// disconnected only if each of its components touches `dom`.
StateMap base_case(const Graph &root, const NodeSet &nodes, const NodeSet &dom,
                   const Valuation &valuation, int enumeration_cap) {
    int k = static_cast<int>(nodes.size());
    if (k > enumeration_cap)
        throw BudgetError("separator solver: base case of " + std::to_string(k) +
                          " nodes exceeds the enumeration cap " +
                          std::to_string(enumeration_cap));
    BaseContext ctx;
    ctx.ids = nodes.ids();
    ctx.adj.assign(k, 0);
    std::vector<NodeId> local_of(root.node_count(), -1);
    for (int i = 0; i < k; ++i) local_of[ctx.ids[i]] = i;
    for (const auto &[u, v] : root.edges()) {
        if (local_of[u] < 0 || local_of[v] < 0) continue;
        ctx.adj[local_of[u]] |= std::uint64_t{1} << local_of[v];
        ctx.adj[local_of[v]] |= std::uint64_t{1} << local_of[u];
    }
    for (NodeId d : dom) ctx.dom_mask |= std::uint64_t{1} << local_of[d];

    StateMap map;
    if (k == 0) {
        bucket(map, InterfaceState{}, Entry{});
        return map;
    }

    std::vector<int> assign(k, 0);
    std::vector<std::uint64_t> blocks;
    auto emit = [&]() {
        int block_count = 1 + *std::max_element(assign.begin(), assign.end());
        blocks.assign(block_count, 0);
        for (int i = 0; i < k; ++i) blocks[assign[i]] |= std::uint64_t{1} << i;

        Value value = 0;
        std::vector<NodeSet> groups, pieces;
        for (std::uint64_t bm : blocks) {
            auto comps = mask_components(bm, ctx.adj);
            if (comps.size() > 1)
                for (std::uint64_t c : comps)
                    if (!(c & ctx.dom_mask)) return; // dangling component
            std::uint64_t trace = bm & ctx.dom_mask;
            if (trace) groups.push_back(to_global(trace, ctx.ids));
            for (std::uint64_t c : comps)
                if (c & ctx.dom_mask) pieces.push_back(to_global(c & ctx.dom_mask, ctx.ids));
            value += valuation.evaluate(to_global(bm, ctx.ids));
        }
        Entry entry;
        std::vector<NodeSet> partial;
        for (std::uint64_t bm : blocks) partial.push_back(to_global(bm, ctx.ids));
        entry.partial = CoalitionStructure(std::move(partial));
        entry.value = value;
        bucket(map, InterfaceState{CoalitionStructure(std::move(groups)),
                                   CoalitionStructure(std::move(pieces))},
               std::move(entry));
    };

    // Restricted growth strings: assign[i] <= 1 + max(assign[0..i-1]).
    std::function<void(int, int)> rec = [&](int i, int max_used) {
        if (i == k) {
            emit();
            return;
        }
        for (int b = 0; b <= max_used + 1; ++b) {
            assign[i] = b;
            rec(i + 1, std::max(max_used, b));
        }
    };
    assign[0] = 0;
    rec(1, 0);
    return map;
}

StateMap cross_product(std::vector<StateMap> maps) {
    StateMap acc;
    bucket(acc, InterfaceState{}, Entry{});
    for (StateMap &m : maps) {
        StateMap next;
        for (const auto &[s1, e1] : acc) {
            for (const auto &[s2, e2] : m) {
                std::vector<NodeSet> groups = s1.groups.blocks;
                groups.insert(groups.end(), s2.groups.blocks.begin(), s2.groups.blocks.end());
                std::vector<NodeSet> pieces = s1.pieces.blocks;
                pieces.insert(pieces.end(), s2.pieces.blocks.begin(), s2.pieces.blocks.end());
                std::vector<NodeSet> partial = e1.partial.blocks;
                partial.insert(partial.end(), e2.partial.blocks.begin(),
                               e2.partial.blocks.end());
                bucket(next,
                       InterfaceState{CoalitionStructure(std::move(groups)),
                                      CoalitionStructure(std::move(pieces))},
                       Entry{CoalitionStructure(std::move(partial)), e1.value + e2.value});
            }
        }
        acc = std::move(next);
    }
    return acc;
}

bool state_trace_crossing(const CoalitionStructure &groups, const NodeSet &sep,
                          const std::vector<int> &position) {
    CoalitionStructure trace = induced_partition(CoalitionStructure(groups.blocks), sep);
    // Rank separator nodes by their embedding position.
    std::vector<NodeId> order = sep.ids();
    std::sort(order.begin(), order.end(),
              [&](NodeId a, NodeId b) { return position[a] < position[b]; });
    std::vector<int> rank(position.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
    std::vector<NodeSet> ranked;
    for (const auto &block : trace.blocks) {
        std::vector<NodeId> r;
        for (NodeId v : block) r.push_back(rank[v]);
        ranked.emplace_back(std::move(r));
    }
    return is_crossing(CoalitionStructure(std::move(ranked)), static_cast<int>(sep.size()));
}

struct PieceRef {
    NodeSet trace;  // on the side's interface domain
    int group = -1; // index into merged group list
};

/// Combines one A-side entry with one B-side entry. Returns false when the
/// pair is inconsistent (separator traces disagree) or produces a block with
/// a component that can no longer reach the parent interface.
bool combine_pair(const InterfaceState &sa, const Entry &ea, const InterfaceState &sb,
                  const Entry &eb, const NodeSet &sep, const NodeSet &dom,
                  InterfaceState &state_out, Entry &entry_out) {
    if (!(induced_partition(sa.groups, sep) == induced_partition(sb.groups, sep)))
        return false;

    // Matched final groups: A-groups and B-groups pair up 1:1 on their
    // separator traces; groups without separator nodes stay one-sided.
    struct MergedGroup {
        std::vector<int> a_groups, b_groups;
    };
    std::vector<MergedGroup> merged;
    std::map<NodeSet, int> by_sep_trace;
    auto place = [&](const CoalitionStructure &groups, bool is_a) {
        for (std::size_t gi = 0; gi < groups.blocks.size(); ++gi) {
            NodeSet st = groups.blocks[gi].intersect(sep);
            int slot;
            if (st.empty()) {
                slot = static_cast<int>(merged.size());
                merged.push_back({});
            } else {
                auto it = by_sep_trace.find(st);
                if (it == by_sep_trace.end()) {
                    slot = static_cast<int>(merged.size());
                    merged.push_back({});
                    by_sep_trace.emplace(std::move(st), slot);
                } else {
                    slot = it->second;
                }
            }
            (is_a ? merged[slot].a_groups : merged[slot].b_groups)
                .push_back(static_cast<int>(gi));
        }
    };
    place(sa.groups, true);
    place(sb.groups, false);

    // Associate each connectivity piece with its group.
    auto pieces_of = [&](const InterfaceState &s) {
        std::vector<PieceRef> refs;
        for (const auto &piece : s.pieces.blocks) {
            PieceRef r;
            r.trace = piece;
            for (std::size_t gi = 0; gi < s.groups.blocks.size(); ++gi)
                if (piece.is_subset_of(s.groups.blocks[gi])) {
                    r.group = static_cast<int>(gi);
                    break;
                }
            refs.push_back(std::move(r));
        }
        return refs;
    };
    auto pa = pieces_of(sa);
    auto pb = pieces_of(sb);

    // Per merged group: glue pieces that share separator nodes and check
    // every resulting component still touches the parent interface.
    std::vector<NodeSet> out_groups, out_pieces;
    for (std::size_t slot = 0; slot < merged.size(); ++slot) {
        std::vector<const NodeSet *> traces;
        for (const PieceRef &r : pa)
            if (!merged[slot].a_groups.empty() &&
                std::find(merged[slot].a_groups.begin(), merged[slot].a_groups.end(), r.group) !=
                    merged[slot].a_groups.end())
                traces.push_back(&r.trace);
        std::size_t a_count = traces.size();
        for (const PieceRef &r : pb)
            if (!merged[slot].b_groups.empty() &&
                std::find(merged[slot].b_groups.begin(), merged[slot].b_groups.end(), r.group) !=
                    merged[slot].b_groups.end())
                traces.push_back(&r.trace);
        (void)a_count;

        int m = static_cast<int>(traces.size());
        std::vector<int> parent(m);
        for (int i = 0; i < m; ++i) parent[i] = i;
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (traces[i]->intersect(sep).intersects(*traces[j]))
                    parent[find(i)] = find(j);

        std::map<int, NodeSet> comp_trace;
        NodeSet group_trace;
        for (int i = 0; i < m; ++i) {
            int r = find(i);
            comp_trace[r] = comp_trace[r].unite(*traces[i]);
        }
        for (auto &[r, t] : comp_trace) group_trace = group_trace.unite(t);

        if (comp_trace.size() > 1)
            for (auto &[r, t] : comp_trace)
                if (t.intersect(dom).empty()) return false; // unreachable component
        for (auto &[r, t] : comp_trace) {
            NodeSet dt = t.intersect(dom);
            if (!dt.empty()) out_pieces.push_back(std::move(dt));
        }
        NodeSet gd = group_trace.intersect(dom);
        if (!gd.empty()) out_groups.push_back(std::move(gd));
    }

    // Merge the partial structures: blocks pair up by separator trace, like
    // the groups did.
    std::vector<NodeSet> out_blocks;
    std::map<NodeSet, std::size_t> open_by_sep;
    for (const auto &blocks : {ea.partial.blocks, eb.partial.blocks}) {
        for (const NodeSet &b : blocks) {
            NodeSet st = b.intersect(sep);
            if (st.empty()) {
                out_blocks.push_back(b);
                continue;
            }
            auto it = open_by_sep.find(st);
            if (it == open_by_sep.end()) {
                open_by_sep.emplace(std::move(st), out_blocks.size());
                out_blocks.push_back(b);
            } else {
                out_blocks[it->second] = out_blocks[it->second].unite(b);
            }
        }
    }

    state_out = InterfaceState{CoalitionStructure(std::move(out_groups)),
                               CoalitionStructure(std::move(out_pieces))};
    entry_out = Entry{CoalitionStructure(std::move(out_blocks)), ea.value + eb.value};
    return true;
}

} // namespace

StateMap solve_all(const Graph &root, const NodeSet &nodes, const NodeSet &dom,
                   ValuationPtr valuation, const SolverConfig &config, int depth) {
    if (depth > config.max_depth)
        throw BudgetError("separator solver: recursion depth budget exceeded");

    auto comps = connected_components(root, nodes);
    if (comps.size() > 1) {
        std::vector<StateMap> maps;
        maps.reserve(comps.size());
        for (const NodeSet &comp : comps)
            maps.push_back(
                solve_all(root, comp, dom.intersect(comp), valuation, config, depth + 1));
        return cross_product(std::move(maps));
    }

    int n = static_cast<int>(nodes.size());
    SeparatorDecomposition dec;
    bool split_ok = false;
    if (n > config.base_threshold && n >= 2) {
        Graph sub = root.induced(nodes);
        const auto &l2g = nodes.ids();
        SeparatorDecomposition local = find_separator(sub, config.balance, config.separator);
        auto lift = [&](const NodeSet &s) {
            std::vector<NodeId> ids;
            ids.reserve(s.size());
            for (NodeId v : s) ids.push_back(l2g[v]);
            return NodeSet(std::move(ids));
        };
        dec.part_a = lift(local.part_a);
        dec.part_b = lift(local.part_b);
        dec.separator = lift(local.separator);
        dec.balance = local.balance;
        split_ok = !dec.part_a.subtract(dec.part_b).empty() &&
                   !dec.part_b.subtract(dec.part_a).empty();
    }

    if (!split_ok) return base_case(root, nodes, dom, *valuation, config.enumeration_cap);

    const NodeSet &sep = dec.separator;
    NodeSet dom_a = dom.intersect(dec.part_a).unite(sep);
    NodeSet dom_b = dom.intersect(dec.part_b).unite(sep);

    const bool noncrossing = config.boundary_enumeration == BoundaryEnumeration::NonCrossing;
    std::vector<int> position;
    if (noncrossing) {
        if (config.embedding_order.size() != static_cast<std::size_t>(root.node_count()))
            throw std::invalid_argument(
                "solve_separator: NonCrossing requires an embedding order over all nodes");
        position.assign(root.node_count(), -1);
        for (std::size_t i = 0; i < config.embedding_order.size(); ++i)
            position[config.embedding_order[i]] = static_cast<int>(i);
    }

    auto keep_state = [&](const InterfaceState &s) {
        return !noncrossing || !state_trace_crossing(s.groups, sep, position);
    };

    StateMap out;
    auto edge_sum = std::dynamic_pointer_cast<const EdgeSumValuation>(valuation);
    if (edge_sum) {
        // Edge-disjoint weight split: A keeps its induced edges (separator-
        // internal ones included), B keeps the rest. Block values then add
        // across the separator with no correction term.
        std::vector<Value> wa(root.edge_count(), 0), wb(root.edge_count(), 0);
        const auto &edges = root.edges();
        for (int i = 0; i < root.edge_count(); ++i) {
            Value w = edge_sum->edge_weights()[i];
            if (w == 0) continue;
            auto [u, v] = edges[i];
            if (dec.part_a.contains(u) && dec.part_a.contains(v))
                wa[i] = w;
            else if (dec.part_b.contains(u) && dec.part_b.contains(v))
                wb[i] = w;
        }
        auto va = std::make_shared<EdgeSumValuation>(root, std::move(wa));
        auto vb = std::make_shared<EdgeSumValuation>(root, std::move(wb));
        StateMap map_a = solve_all(root, dec.part_a, dom_a, va, config, depth + 1);
        StateMap map_b = solve_all(root, dec.part_b, dom_b, vb, config, depth + 1);
        for (const auto &[sa, ea] : map_a) {
            if (!keep_state(sa)) continue;
            for (const auto &[sb, eb] : map_b) {
                if (!keep_state(sb)) continue;
                InterfaceState s;
                Entry e;
                if (combine_pair(sa, ea, sb, eb, sep, dom, s, e))
                    bucket(out, std::move(s), std::move(e));
            }
        }
        return out;
    }

    // General IDM path: the B side sees the Lemma-style induced valuation
    // keyed on the concrete A-side partial, so B recursions run per A entry.
    StateMap map_a = solve_all(root, dec.part_a, dom_a, valuation, config, depth + 1);
    for (const auto &[sa, ea] : map_a) {
        if (!keep_state(sa)) continue;
        ValuationPtr vb = induced_valuation(valuation, ea.partial, sep);
        StateMap map_b = solve_all(root, dec.part_b, dom_b, vb, config, depth + 1);
        for (const auto &[sb, eb] : map_b) {
            if (!keep_state(sb)) continue;
            InterfaceState s;
            Entry e;
            if (combine_pair(sa, ea, sb, eb, sep, dom, s, e))
                bucket(out, std::move(s), std::move(e));
        }
    }
    return out;
}

} // namespace separator_detail

std::optional<Solution> solve_separator(const Graph &graph, ValuationPtr valuation,
                                        const BoundaryConstraint &constraint,
                                        const SolverConfig &config) {
    int n = graph.node_count();
    if (n == 0) throw std::invalid_argument("solve_separator: empty graph");
    if (!constraint.domain.is_subset_of(full_node_set(n)))
        throw std::invalid_argument("solve_separator: constraint domain outside node range");
    if (!graph.is_connected())
        throw std::invalid_argument("solve_separator: graph must be connected; "
                                    "split into components first");

    if (n <= config.base_threshold)
        return solve_bruteforce(graph, *valuation, &constraint,
                                std::max(config.enumeration_cap, config.base_threshold));

    auto map = separator_detail::solve_all(graph, full_node_set(n), constraint.domain,
                                           std::move(valuation), config, 0);
    separator_detail::InterfaceState want{constraint.structure, constraint.structure};
    auto it = map.find(want);
    if (it == map.end()) return std::nullopt;
    return Solution{it->second.partial, it->second.value};
}

} // namespace gcsg
