#include "gcsg/types.hpp"

#include <doctest.h>

using namespace gcsg;

TEST_CASE("NodeSet basics") {
    NodeSet s({3, 1, 2});
    CHECK(s.ids() == std::vector<NodeId>{1, 2, 3});
    CHECK(s.contains(2));
    CHECK(!s.contains(4));
    CHECK(s.min_id() == 1);
    CHECK_THROWS_AS(NodeSet({1, 1}), std::invalid_argument);

    NodeSet t({2, 4});
    CHECK(s.intersects(t));
    CHECK(s.intersect(t) == NodeSet({2}));
    CHECK(s.unite(t) == NodeSet({1, 2, 3, 4}));
    CHECK(s.subtract(t) == NodeSet({1, 3}));
    CHECK(NodeSet({2, 3}).is_subset_of(s));
    CHECK(!t.is_subset_of(s));
}

TEST_CASE("NodeSet mask round trip") {
    NodeSet s({0, 2, 5});
    CHECK(s.to_mask() == 0b100101u);
    CHECK(NodeSet::from_mask(0b100101u) == s);
}

TEST_CASE("CoalitionStructure canonical form and partition check") {
    CoalitionStructure cs({NodeSet({2, 3}), NodeSet({0, 1})});
    CHECK(cs.blocks[0] == NodeSet({0, 1}));
    CHECK(cs.is_partition_of(full_node_set(4)));
    CHECK(!cs.is_partition_of(full_node_set(5)));
    CHECK(cs.block_of(3) == 1);
    CHECK(cs.block_of(7) == -1);

    CoalitionStructure overlap({NodeSet({0, 1}), NodeSet({1, 2})});
    CHECK(!overlap.is_partition_of(full_node_set(3)));
}

TEST_CASE("induced_partition keeps nonempty traces") {
    CoalitionStructure cs({NodeSet({0, 1, 4}), NodeSet({2}), NodeSet({3, 5})});
    CoalitionStructure t = induced_partition(cs, NodeSet({1, 3, 4}));
    CHECK(t == CoalitionStructure({NodeSet({1, 4}), NodeSet({3})}));
}
