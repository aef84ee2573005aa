#include "gcsg/valuation.hpp"

#include "gcsg/enumeration.hpp"
#include "gcsg/harness.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>

using namespace gcsg;

namespace {

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(i - 1, i);
    return g;
}

Graph triangle() {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    return g;
}

} // namespace

TEST_CASE("EdgeSumValuation evaluation") {
    Graph t = triangle();
    // weights in edge order (0,1), (0,2), (1,2)
    EdgeSumValuation v(t, {1, -5, 2});
    CHECK(v.evaluate(NodeSet{}) == 0);
    CHECK(v.evaluate(NodeSet::single(1)) == 0);
    CHECK(v.evaluate(full_node_set(3)) == -2);
    CHECK(v.evaluate(NodeSet({0, 1})) == 1);
    CHECK(v.weight(2, 0) == -5);
}

TEST_CASE("structure_value") {
    Graph p3 = path_graph(3);
    EdgeSumValuation v(p3, {1, -1});
    CHECK(structure_value(v, CoalitionStructure({NodeSet({0}), NodeSet({1}), NodeSet({2})})) == 0);
    CHECK(structure_value(v, CoalitionStructure({NodeSet({0, 1}), NodeSet({2})})) == 1);
    CHECK(structure_value(v, CoalitionStructure({full_node_set(3)})) == 0);
}

TEST_CASE("edge-sum is modular over disconnected unions") {
    harness::Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        int n = static_cast<int>(rng.range(2, 6));
        Graph g = harness::random_connected_graph(n, 0.3, rng);
        auto v = harness::random_idm_valuation(g, rng);
        for (std::uint64_t bm = 1; bm < (std::uint64_t{1} << n); ++bm)
            for (std::uint64_t cm = 1; cm < (std::uint64_t{1} << n); ++cm) {
                if (bm & cm) continue;
                bool edge_between = false;
                for (const auto &[x, y] : g.edges()) {
                    bool xb = bm >> x & 1, yb = bm >> y & 1;
                    bool xc = cm >> x & 1, yc = cm >> y & 1;
                    if ((xb && yc) || (xc && yb)) edge_between = true;
                }
                if (edge_between) continue;
                NodeSet b = NodeSet::from_mask(bm), c = NodeSet::from_mask(cm);
                CHECK(v->evaluate(b.unite(c)) == v->evaluate(b) + v->evaluate(c));
            }
    }
}

TEST_CASE("check_idm accepts edge sums and rejects |C|^2") {
    harness::Rng rng(9);
    for (int trial = 0; trial < 25; ++trial) {
        int n = static_cast<int>(rng.range(2, 8));
        Graph g = harness::random_connected_graph(n, 0.3, rng);
        auto v = harness::random_idm_valuation(g, rng);
        CHECK(!check_idm(*v, g).has_value());
    }

    Graph p3 = path_graph(3);
    std::map<NodeSet, Value> table;
    for (std::uint64_t m = 1; m < 8; ++m) {
        NodeSet s = NodeSet::from_mask(m);
        Value k = static_cast<Value>(s.size());
        table[s] = k * k;
    }
    TableValuation square(table);
    auto violation = check_idm(square, p3);
    REQUIRE(violation.has_value());
    CHECK(violation->i == 0);
    CHECK(violation->j == 2);
    CHECK(violation->separator == NodeSet({1}));

    // Additive valuations satisfy every marginal identity.
    std::map<NodeSet, Value> additive;
    for (std::uint64_t m = 1; m < 8; ++m) {
        NodeSet s = NodeSet::from_mask(m);
        additive[s] = static_cast<Value>(s.size());
    }
    CHECK(!check_idm(TableValuation(additive), p3).has_value());

    CHECK_THROWS_AS(check_idm(square, Graph(11)), BudgetError);
}

TEST_CASE("normalize_singletons") {
    Graph p3 = path_graph(3);
    auto edge_sum = std::make_shared<EdgeSumValuation>(p3, std::vector<Value>{2, 3});
    auto [same, zero_offset] = normalize_singletons(edge_sum, p3);
    CHECK(same == ValuationPtr(edge_sum)); // already normalized
    CHECK(zero_offset == 0);

    Graph single(1);
    std::map<NodeSet, Value> table{{NodeSet::single(0), 5}};
    auto [normalized, offset] = normalize_singletons(std::make_shared<TableValuation>(table),
                                                     single);
    CHECK(offset == 5);
    CHECK(normalized->evaluate(NodeSet::single(0)) == 0);
}

TEST_CASE("normalize_singletons preserves optimal structures") {
    harness::Rng rng(13);
    for (int trial = 0; trial < 15; ++trial) {
        int n = static_cast<int>(rng.range(2, 4));
        Graph g = harness::random_connected_graph(n, 0.4, rng);
        auto table = harness::random_idm_table_valuation(g, rng);
        auto [normalized, offset] = normalize_singletons(table, g);

        Value best_before = INT64_MIN, best_after = INT64_MIN;
        std::vector<CoalitionStructure> argmax_before, argmax_after;
        for (const auto &cs : connected_structures(g)) {
            Value vb = structure_value(*table, cs);
            Value va = structure_value(*normalized, cs);
            CHECK(vb == va + offset);
            if (vb > best_before) {
                best_before = vb;
                argmax_before.clear();
            }
            if (vb == best_before) argmax_before.push_back(cs);
            if (va > best_after) {
                best_after = va;
                argmax_after.clear();
            }
            if (va == best_after) argmax_after.push_back(cs);
        }
        CHECK(argmax_before == argmax_after);
    }
}

TEST_CASE("induced_valuation implements the split formula") {
    // Path a-d-b with weights 3 and 7, split at D = {d}.
    Graph p3 = path_graph(3); // 0=a, 1=d, 2=b
    auto base = std::make_shared<EdgeSumValuation>(p3, std::vector<Value>{3, 7});
    CoalitionStructure a_side({NodeSet({0, 1})});
    auto induced = induced_valuation(base, a_side, NodeSet({1}));
    CHECK(induced->evaluate(NodeSet({1, 2})) == 7); // v({a,d,b}) - v({a,d}) = 10 - 3
    CHECK(induced->evaluate(NodeSet({2})) == 0);    // disjoint from every A block
    CHECK_THROWS_AS(induced->evaluate(NodeSet({0, 2})), std::invalid_argument);
}

TEST_CASE("induced_valuation: combined structure identity and IDM") {
    harness::Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        int n = static_cast<int>(rng.range(3, 6));
        Graph g = harness::random_connected_graph(n, 0.35, rng);
        auto v = harness::random_idm_valuation(g, rng);
        auto dec = find_separator(g, 2.0 / 3.0);
        Graph sub_a = g.induced(dec.part_a);
        Graph sub_b = g.induced(dec.part_b);

        auto structures_a = connected_structures(sub_a);
        auto structures_b = connected_structures(sub_b);
        bool idm_checked = false;
        for (const auto &local_a : structures_a) {
            // Lift to global ids.
            std::vector<NodeSet> lifted;
            for (const auto &blk : local_a.blocks) {
                std::vector<NodeId> ids;
                for (NodeId l : blk) ids.push_back(dec.part_a.ids()[l]);
                lifted.emplace_back(std::move(ids));
            }
            CoalitionStructure a_cs(std::move(lifted));
            auto vd = induced_valuation(v, a_cs, dec.separator);

            if (!idm_checked) {
                auto violation = check_idm(*remapped_valuation(vd, dec.part_b.ids()), sub_b);
                CHECK(!violation.has_value());
                idm_checked = true;
            }

            for (const auto &local_b : structures_b) {
                std::vector<NodeSet> lifted_b;
                for (const auto &blk : local_b.blocks) {
                    std::vector<NodeId> ids;
                    for (NodeId l : blk) ids.push_back(dec.part_b.ids()[l]);
                    lifted_b.emplace_back(std::move(ids));
                }
                CoalitionStructure b_cs(std::move(lifted_b));

                // Combine by uniting blocks that share separator nodes.
                std::vector<NodeSet> merged = a_cs.blocks;
                for (const auto &fb : b_cs.blocks) {
                    NodeSet acc = fb;
                    std::vector<NodeSet> next;
                    for (auto &mb : merged) {
                        if (mb.intersects(acc))
                            acc = acc.unite(mb);
                        else
                            next.push_back(mb);
                    }
                    next.push_back(acc);
                    merged = std::move(next);
                }
                CoalitionStructure combined(std::move(merged));
                if (!combined.is_partition_of(full_node_set(n))) continue;

                // Only compatible pairs: each combined block must split back
                // into the side structures' blocks.
                bool compatible = true;
                for (const auto &cb : combined.blocks) {
                    for (const auto &comp :
                         connected_components(g, cb.intersect(dec.part_a))) {
                        if (std::find(a_cs.blocks.begin(), a_cs.blocks.end(), comp) ==
                            a_cs.blocks.end())
                            compatible = false;
                    }
                    for (const auto &comp :
                         connected_components(g, cb.intersect(dec.part_b))) {
                        if (std::find(b_cs.blocks.begin(), b_cs.blocks.end(), comp) ==
                            b_cs.blocks.end())
                            compatible = false;
                    }
                }
                if (!compatible) continue;

                Value lhs = structure_value(*v, combined);
                Value rhs = structure_value(*v, a_cs);
                for (const auto &fb : b_cs.blocks) rhs += vd->evaluate(fb);
                CHECK(lhs == rhs);
            }
        }
    }
}
