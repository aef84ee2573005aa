#ifndef GCSG_HARNESS_HPP
#define GCSG_HARNESS_HPP

#include "gcsg/graph.hpp"
#include "gcsg/sat_reduction.hpp"
#include "gcsg/types.hpp"
#include "gcsg/valuation.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace gcsg::harness {

/// Deterministic RNG: mt19937_64 with hand-rolled range reduction, so
/// streams are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound), bound >= 1.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform integer in [lo, hi] inclusive.
    long long range(long long lo, long long hi);

private:
    std::mt19937_64 engine_;
};

/// All set partitions of the graph's nodes that pass is_connected_structure;
/// the independent referee for the block-growing enumerator. Capped at 8
/// nodes.
std::vector<CoalitionStructure> filter_oracle(const Graph &graph, int node_cap = 8);

/// All set partitions of {0..n-1} as restricted growth strings, in RGS order.
std::vector<CoalitionStructure> all_set_partitions(int n);

/// Random tree from a random Pruefer sequence.
Graph random_tree(int n, Rng &rng);

/// Random connected graph: random spanning tree plus each remaining pair
/// independently with probability `density`.
Graph random_connected_graph(int n, double density, Rng &rng);

/// Random 2-connected series-parallel graph grown from a triangle by
/// repeated edge subdivision and parallel-path addition.
Graph random_series_parallel_2connected(int n, Rng &rng);

/// Random graph whose biconnected blocks are series-parallel (possibly with
/// cut vertices): SP blocks glued at random articulation points.
Graph random_series_parallel_graph(int n, Rng &rng);

/// Random graph whose blocks are K4s or series-parallel; contains at least
/// one K4 block, so it classifies as K23MinorFree.
Graph random_k4_block_graph(int blocks, Rng &rng);

/// Random connected subgraph of a width x height grid: a random spanning
/// tree plus a random subset of the remaining grid edges.
Graph random_grid_subgraph(int width, int height, double extra_density, Rng &rng);

/// Seeded edge-sum valuation with integer weights in [lo, hi]; edge-sum
/// valuations are IDM by construction.
std::shared_ptr<EdgeSumValuation> random_idm_valuation(const Graph &graph, Rng &rng,
                                                       Value lo = -5, Value hi = 5);

/// Edge-sum plus per-node constants, as an explicit table; still IDM, with
/// nonzero singleton values exercising normalization. Node count <= 10.
std::shared_ptr<TableValuation> random_idm_table_valuation(const Graph &graph, Rng &rng,
                                                           Value lo = -5, Value hi = 5);

/// Random 3-CNF with `clauses` clauses over `variables` variables.
Cnf3 random_cnf3(int variables, int clauses, Rng &rng);

/// Exhaustive satisfiability check, with a witness when satisfiable.
/// Variable count capped at 20.
std::optional<Assignment> sat_bruteforce(const Cnf3 &cnf, int variable_cap = 20);

} // namespace gcsg::harness

#endif
