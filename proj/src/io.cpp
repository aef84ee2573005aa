#include "gcsg/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace gcsg {

namespace {

std::ifstream open_or_throw(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open file: " + path);
    return in;
}

std::ofstream create_or_throw(const std::string &path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write file: " + path);
    return out;
}

/// Next non-comment, non-blank line.
bool next_line(std::istream &in, std::string &line) {
    while (std::getline(in, line)) {
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line[i] == '#') continue;
        return true;
    }
    return false;
}

} // namespace

WeightedGraph read_weighted_graph(std::istream &in) {
    std::string line;
    if (!next_line(in, line)) throw FormatError("graph: missing header line");
    std::istringstream header(line);
    long long n = -1, e = -1;
    if (!(header >> n >> e) || n < 0 || e < 0)
        throw FormatError("graph: header must be `n e`");
    std::string extra;
    if (header >> extra) throw FormatError("graph: trailing tokens in header");

    Graph graph(static_cast<int>(n));
    std::vector<Value> weights;
    for (long long i = 0; i < e; ++i) {
        if (!next_line(in, line)) throw FormatError("graph: expected " + std::to_string(e) +
                                                    " edge lines, got " + std::to_string(i));
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v)) throw FormatError("graph: bad edge line: " + line);
        long long w = 0;
        ls >> w; // optional weight
        if (ls >> extra) throw FormatError("graph: trailing tokens on edge line: " + line);
        if (u < 0 || v < 0 || u >= n || v >= n || u >= v)
            throw FormatError("graph: edge must satisfy 0 <= u < v < n: " + line);
        try {
            graph.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v));
        } catch (const std::invalid_argument &ex) {
            throw FormatError(std::string("graph: ") + ex.what() + ": " + line);
        }
        weights.push_back(w);
    }
    if (next_line(in, line)) throw FormatError("graph: trailing content: " + line);
    return {std::move(graph), std::move(weights)};
}

WeightedGraph read_weighted_graph_file(const std::string &path) {
    auto in = open_or_throw(path);
    return read_weighted_graph(in);
}

void write_weighted_graph(std::ostream &out, const WeightedGraph &wg) {
    out << wg.graph.node_count() << ' ' << wg.graph.edge_count() << '\n';
    for (int i = 0; i < wg.graph.edge_count(); ++i) {
        const auto &[u, v] = wg.graph.edges()[i];
        out << u << ' ' << v << ' ' << wg.weights[i] << '\n';
    }
}

void write_weighted_graph_file(const std::string &path, const WeightedGraph &wg) {
    auto out = create_or_throw(path);
    write_weighted_graph(out, wg);
}

CoalitionStructure read_structure(std::istream &in) {
    std::vector<NodeSet> blocks;
    std::string line;
    while (next_line(in, line)) {
        std::istringstream ls(line);
        std::vector<NodeId> ids;
        long long v;
        while (ls >> v) ids.push_back(static_cast<NodeId>(v));
        if (!ls.eof()) throw FormatError("structure: bad token on line: " + line);
        if (ids.empty()) continue;
        try {
            blocks.emplace_back(std::move(ids));
        } catch (const std::invalid_argument &ex) {
            throw FormatError(std::string("structure: ") + ex.what() + ": " + line);
        }
    }
    return CoalitionStructure(std::move(blocks));
}

CoalitionStructure read_structure_file(const std::string &path) {
    auto in = open_or_throw(path);
    return read_structure(in);
}

void write_structure(std::ostream &out, const CoalitionStructure &cs) {
    for (const auto &block : cs.blocks) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (i) out << ' ';
            out << block.ids()[i];
        }
        out << '\n';
    }
}

void write_structure_file(const std::string &path, const CoalitionStructure &cs) {
    auto out = create_or_throw(path);
    write_structure(out, cs);
}

std::shared_ptr<TableValuation> read_table_valuation(std::istream &in) {
    std::map<NodeSet, Value> table;
    std::string line;
    while (next_line(in, line)) {
        std::istringstream ls(line);
        std::vector<long long> tokens;
        long long t;
        while (ls >> t) tokens.push_back(t);
        if (!ls.eof()) throw FormatError("table valuation: bad token on line: " + line);
        if (tokens.size() < 2)
            throw FormatError("table valuation: need subset ids and a value: " + line);
        Value value = tokens.back();
        tokens.pop_back();
        std::vector<NodeId> ids(tokens.begin(), tokens.end());
        NodeSet subset(std::move(ids));
        if (!table.emplace(std::move(subset), value).second)
            throw FormatError("table valuation: duplicate subset: " + line);
    }
    return std::make_shared<TableValuation>(std::move(table));
}

Cnf3 read_dimacs_cnf(std::istream &in) {
    std::string line;
    Cnf3 cnf;
    bool header_seen = false;
    std::vector<int> pending;
    long long declared_clauses = -1;
    while (std::getline(in, line)) {
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line[i] == 'c') continue;
        if (line[i] == 'p') {
            std::istringstream ls(line);
            std::string p, fmt;
            long long vars = -1;
            if (!(ls >> p >> fmt >> vars >> declared_clauses) || fmt != "cnf" || vars < 1 ||
                declared_clauses < 0)
                throw FormatError("dimacs: bad problem line: " + line);
            cnf.variable_count = static_cast<int>(vars);
            header_seen = true;
            continue;
        }
        if (!header_seen) throw FormatError("dimacs: clause before `p cnf` line");
        std::istringstream ls(line);
        long long lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (pending.size() != 3)
                    throw FormatError("dimacs: clause with " + std::to_string(pending.size()) +
                                      " literals; need exactly 3");
                cnf.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
            } else {
                if (std::abs(lit) > cnf.variable_count)
                    throw FormatError("dimacs: literal out of range: " + std::to_string(lit));
                pending.push_back(static_cast<int>(lit));
            }
        }
        if (!ls.eof()) throw FormatError("dimacs: bad token on line: " + line);
    }
    if (!header_seen) throw FormatError("dimacs: missing `p cnf` header");
    if (!pending.empty()) throw FormatError("dimacs: unterminated clause");
    if (cnf.clauses.empty()) throw FormatError("dimacs: no clauses");
    if (declared_clauses >= 0 &&
        declared_clauses != static_cast<long long>(cnf.clauses.size()))
        throw FormatError("dimacs: clause count differs from header");
    return cnf;
}

Cnf3 read_dimacs_cnf_file(const std::string &path) {
    auto in = open_or_throw(path);
    return read_dimacs_cnf(in);
}

void write_reduction_map(std::ostream &out, const ReductionArtifact &artifact) {
    for (int i = 0; i < artifact.cnf.clause_count(); ++i)
        for (int j = 0; j < 3; ++j)
            out << i << ' ' << j << ' ' << artifact.literal_nodes[i][j] << '\n';
}

} // namespace gcsg
