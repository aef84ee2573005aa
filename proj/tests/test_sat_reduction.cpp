#include "gcsg/sat_reduction.hpp"

#include "gcsg/enumeration.hpp"
#include "gcsg/harness.hpp"

#include <doctest.h>

using namespace gcsg;

TEST_CASE("single-clause reduction shape and optimum") {
    Cnf3 cnf;
    cnf.variable_count = 3;
    cnf.clauses.push_back({1, 2, 3});
    auto artifact = reduce_3sat(cnf);

    CHECK(artifact.graph.node_count() == 4);
    CHECK(artifact.graph.edge_count() == 6);
    int positive = 0, penalty = 0;
    for (Value w : artifact.weights->edge_weights()) {
        if (w == 1) ++positive;
        if (w == -4) ++penalty;
    }
    CHECK(positive == 3);
    CHECK(penalty == 3);

    auto sol = solve_bruteforce(artifact.graph, *artifact.weights);
    CHECK(sol->value == 1);

    auto assignment = decode_assignment(artifact, sol->structure);
    REQUIRE(assignment.has_value());
    CHECK(satisfies(cnf, *assignment));
}

TEST_CASE("contradictory two-clause formula is unsatisfiable and scores below m") {
    Cnf3 cnf;
    cnf.variable_count = 1;
    cnf.clauses.push_back({1, 1, 1});
    cnf.clauses.push_back({-1, -1, -1});
    auto artifact = reduce_3sat(cnf);
    CHECK(artifact.graph.node_count() == 7);

    CHECK(!harness::sat_bruteforce(cnf).has_value());
    auto sol = solve_bruteforce(artifact.graph, *artifact.weights);
    CHECK(sol->value < 2);
    CHECK(!decode_assignment(artifact, sol->structure).has_value());
}

TEST_CASE("node count is 3m+1 and weights follow the construction") {
    harness::Rng rng(503);
    for (int trial = 0; trial < 20; ++trial) {
        int m = static_cast<int>(rng.range(1, 5));
        Cnf3 cnf = harness::random_cnf3(static_cast<int>(rng.range(1, 6)), m, rng);
        auto artifact = reduce_3sat(cnf);
        CHECK(artifact.graph.node_count() == 3 * m + 1);
        for (int i = 0; i < artifact.graph.edge_count(); ++i) {
            auto [u, v] = artifact.graph.edges()[i];
            Value w = artifact.weights->edge_weights()[i];
            if (u == artifact.hub || v == artifact.hub)
                CHECK(w == 1);
            else
                CHECK(w == -(3 * static_cast<Value>(m) + 1));
        }
    }
}

TEST_CASE("decode returns nothing below value m") {
    Cnf3 cnf;
    cnf.variable_count = 2;
    cnf.clauses.push_back({1, -2, 2});
    auto artifact = reduce_3sat(cnf);
    std::vector<NodeSet> singletons;
    for (NodeId v = 0; v < artifact.graph.node_count(); ++v)
        singletons.push_back(NodeSet::single(v));
    CHECK(!decode_assignment(artifact, CoalitionStructure(singletons)).has_value());
}

TEST_CASE("encode_assignment builds a value-m structure and rejects bad input") {
    Cnf3 cnf;
    cnf.variable_count = 3;
    cnf.clauses.push_back({1, 2, 3});
    auto artifact = reduce_3sat(cnf);

    Assignment good(3, false);
    good[0] = true;
    auto cs = encode_assignment(artifact, good);
    CHECK(structure_value(*artifact.weights, cs) == 1);
    CHECK(cs.block_of(artifact.hub) == cs.block_of(artifact.literal_nodes[0][0]));
    CHECK(is_connected_structure(artifact.graph, cs));

    Assignment bad(3, false);
    CHECK_THROWS_AS(encode_assignment(artifact, bad), std::invalid_argument);
}

TEST_CASE("reduction equivalence on random formulas") {
    harness::Rng rng(509);
    int satisfiable_seen = 0, unsatisfiable_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int m = static_cast<int>(rng.range(1, 4));
        int vars = static_cast<int>(rng.range(1, 5));
        Cnf3 cnf = harness::random_cnf3(vars, m, rng);
        auto artifact = reduce_3sat(cnf);
        auto witness = harness::sat_bruteforce(cnf);
        auto sol = solve_bruteforce(artifact.graph, *artifact.weights);

        CHECK(sol->value <= m);
        CHECK((sol->value == m) == witness.has_value());
        if (witness) {
            ++satisfiable_seen;
            auto decoded = decode_assignment(artifact, sol->structure);
            REQUIRE(decoded.has_value());
            CHECK(satisfies(cnf, *decoded));
            auto encoded = encode_assignment(artifact, *witness);
            CHECK(structure_value(*artifact.weights, encoded) == m);
            // No negative edge inside any block of an optimal structure.
            for (const auto &block : sol->structure.blocks)
                for (int i = 0; i < artifact.graph.edge_count(); ++i) {
                    auto [u, v] = artifact.graph.edges()[i];
                    if (block.contains(u) && block.contains(v))
                        CHECK(artifact.weights->edge_weights()[i] > 0);
                }
        } else {
            ++unsatisfiable_seen;
        }
    }
    CHECK(satisfiable_seen > 0);
    CHECK(unsatisfiable_seen > 0);
}

TEST_CASE("reduce_3sat rejects empty formulas") {
    Cnf3 empty;
    empty.variable_count = 1;
    CHECK_THROWS_AS(reduce_3sat(empty), std::invalid_argument);
}
