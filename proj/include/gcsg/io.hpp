#ifndef GCSG_IO_HPP
#define GCSG_IO_HPP

#include "gcsg/graph.hpp"
#include "gcsg/sat_reduction.hpp"
#include "gcsg/types.hpp"
#include "gcsg/valuation.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace gcsg {

/// Graph plus per-edge integer weights (zero when the file has none).
struct WeightedGraph {
    Graph graph;
    std::vector<Value> weights;

    std::shared_ptr<EdgeSumValuation> valuation() const {
        return std::make_shared<EdgeSumValuation>(graph, weights);
    }
};

/// Text format: `n e` header, then e lines `u v` or `u v w` with
/// 0 <= u < v < n and integer w. Lines starting with '#' are comments.
/// Throws FormatError on malformed input.
WeightedGraph read_weighted_graph(std::istream &in);
WeightedGraph read_weighted_graph_file(const std::string &path);

void write_weighted_graph(std::ostream &out, const WeightedGraph &wg);
void write_weighted_graph_file(const std::string &path, const WeightedGraph &wg);

/// Structure interchange format: one block per line, sorted node ids
/// space-separated; blocks sorted by minimum id.
CoalitionStructure read_structure(std::istream &in);
CoalitionStructure read_structure_file(const std::string &path);
void write_structure(std::ostream &out, const CoalitionStructure &cs);
void write_structure_file(const std::string &path, const CoalitionStructure &cs);

/// Table valuation format: one line per nonempty subset, sorted node ids
/// then the value; missing subsets default to 0.
std::shared_ptr<TableValuation> read_table_valuation(std::istream &in);

/// DIMACS CNF (`p cnf <vars> <clauses>`, clauses 0-terminated, 'c' comments).
/// Every clause must have exactly 3 literals.
Cnf3 read_dimacs_cnf(std::istream &in);
Cnf3 read_dimacs_cnf_file(const std::string &path);

/// Sidecar node map for a reduction artifact: lines `clause position node`.
void write_reduction_map(std::ostream &out, const ReductionArtifact &artifact);

} // namespace gcsg

#endif
