#include "gcsg/sat_reduction.hpp"

#include <cstdlib>

namespace gcsg {

void Cnf3::validate() const {
    if (variable_count < 1) throw std::invalid_argument("Cnf3: need at least one variable");
    if (clauses.empty()) throw std::invalid_argument("Cnf3: empty formula");
    for (const auto &clause : clauses)
        for (int lit : clause) {
            if (lit == 0 || std::abs(lit) > variable_count)
                throw std::invalid_argument("Cnf3: literal out of range");
        }
}

bool satisfies(const Cnf3 &cnf, const Assignment &assignment) {
    if (static_cast<int>(assignment.size()) != cnf.variable_count)
        throw std::invalid_argument("satisfies: assignment length mismatch");
    for (const auto &clause : cnf.clauses) {
        bool ok = false;
        for (int lit : clause) {
            bool val = assignment[std::abs(lit) - 1];
            if ((lit > 0) == val) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

ReductionArtifact reduce_3sat(const Cnf3 &cnf) {
    cnf.validate();
    int m = cnf.clause_count();
    const Value penalty = -(3 * static_cast<Value>(m) + 1);

    // Node layout: hub = 0, literal (i,j) = 1 + 3i + j.
    int n = 3 * m + 1;
    Graph graph(n);
    std::vector<Value> weights;
    std::vector<std::array<NodeId, 3>> literal_nodes(m);
    auto add = [&](NodeId u, NodeId v, Value w) {
        graph.add_edge(u, v);
        weights.push_back(w);
    };

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < 3; ++j) literal_nodes[i][j] = 1 + 3 * i + j;

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < 3; ++j) add(0, literal_nodes[i][j], 1);

    // Clause triangles.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = j + 1; k < 3; ++k) add(literal_nodes[i][j], literal_nodes[i][k], penalty);

    // Complementary occurrence pairs across clauses (within a clause the
    // triangle edge is already there).
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = i + 1; k < m; ++k)
                for (int l = 0; l < 3; ++l)
                    if (cnf.clauses[i][j] == -cnf.clauses[k][l])
                        if (!graph.has_edge(literal_nodes[i][j], literal_nodes[k][l]))
                            add(literal_nodes[i][j], literal_nodes[k][l], penalty);

    ReductionArtifact artifact{std::move(graph), nullptr, 0, std::move(literal_nodes), cnf};
    artifact.weights = std::make_shared<EdgeSumValuation>(artifact.graph, std::move(weights));
    return artifact;
}

std::optional<Assignment> decode_assignment(const ReductionArtifact &artifact,
                                            const CoalitionStructure &cs) {
    if (!cs.is_partition_of(full_node_set(artifact.graph.node_count())))
        throw std::invalid_argument("decode_assignment: structure not over the artifact's nodes");
    int m = artifact.cnf.clause_count();
    if (structure_value(*artifact.weights, cs) != m) return std::nullopt;

    int hub_block = cs.block_of(artifact.hub);
    Assignment assignment(artifact.cnf.variable_count, false);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < 3; ++j) {
            int lit = artifact.cnf.clauses[i][j];
            if (lit > 0 && cs.block_of(artifact.literal_nodes[i][j]) == hub_block)
                assignment[lit - 1] = true;
        }
    return assignment;
}

CoalitionStructure encode_assignment(const ReductionArtifact &artifact,
                                     const Assignment &assignment) {
    if (!satisfies(artifact.cnf, assignment))
        throw std::invalid_argument("encode_assignment: assignment does not satisfy the formula");
    std::vector<NodeId> hub_block{artifact.hub};
    std::vector<char> in_hub(artifact.graph.node_count(), 0);
    for (int i = 0; i < artifact.cnf.clause_count(); ++i) {
        for (int j = 0; j < 3; ++j) {
            int lit = artifact.cnf.clauses[i][j];
            bool val = assignment[std::abs(lit) - 1];
            if ((lit > 0) == val) {
                NodeId node = artifact.literal_nodes[i][j];
                hub_block.push_back(node);
                in_hub[node] = 1;
                break; // exactly one occurrence per clause
            }
        }
    }
    std::vector<NodeSet> blocks;
    blocks.emplace_back(std::move(hub_block));
    for (NodeId v = 1; v < artifact.graph.node_count(); ++v)
        if (!in_hub[v]) blocks.push_back(NodeSet::single(v));
    return CoalitionStructure(std::move(blocks));
}

} // namespace gcsg
