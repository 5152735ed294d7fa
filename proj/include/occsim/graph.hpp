#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace occsim {

// Simple undirected graph with fixed vertex set {0..n-1}.
//
// Adjacency is stored in compressed form with each neighbor list sorted
// ascending. Self-loops are rejected and duplicate input edges collapse to a
// single edge. Isolated vertices are representable (an edge-list header can
// declare trailing vertices with no incident edge); operations that need
// positive degrees check for them explicitly.
class Graph {
public:
    Graph() = default;

    // Builds a graph on n vertices from (possibly unordered, possibly
    // duplicated) endpoint pairs. Throws ValidationError on self-loops or
    // out-of-range endpoints, ArgumentError on n < 0.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return static_cast<int>(offsets_.size()) - 1; }
    int edge_count() const { return static_cast<int>(neighbors_.size()) / 2; }
    int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
    // Minimum degree over all vertices (0 for the empty graph).
    int min_degree() const { return min_degree_; }
    std::span<const int> neighbors(int v) const {
        return {neighbors_.data() + offsets_[v], static_cast<size_t>(degree(v))};
    }
    bool has_edge(int u, int v) const;
    // All edges as sorted pairs (u < v), ascending lexicographically.
    std::vector<std::pair<int, int>> edges() const;

    void check_vertex(int v) const;

private:
    std::vector<int> offsets_{0};
    std::vector<int> neighbors_;
    int min_degree_ = 0;
};

// --- generators -------------------------------------------------------------

// Complete graph K_n, n >= 2.
Graph complete_graph(int n);

// Cycle C_n, n >= 3.
Graph cycle_graph(int n);

// Ring of n vertices where i ~ j iff their circular distance is <= k.
// Requires k >= 1 and 2k + 1 <= n; every vertex gets degree 2k.
Graph cycle_power_graph(int n, int k);

// G(n, p): every unordered pair sampled independently with probability p,
// deterministically for a fixed seed. p outside [0,1] -> ArgumentError;
// n > 20000 -> CapacityError (sampling enumerates all pairs).
Graph erdos_renyi(int n, double p, std::uint64_t seed);

// Line graph: one vertex per edge of g, adjacency iff the edges share an
// endpoint. vertex_edges[i] is the g-edge (u < v) behind vertex i, listed in
// the lexicographic order of g.edges(). Edgeless input -> ValidationError.
struct LineGraphResult {
    Graph graph;
    std::vector<std::pair<int, int>> vertex_edges;
};
LineGraphResult line_graph(const Graph& g);

// Lexicographic rank of edge {j, k} (j != k) among the edges of K_n; matches
// the vertex order produced by line_graph(complete_graph(n)).
int complete_edge_index(int n, int j, int k);

// --- edge-list text ---------------------------------------------------------

// Parses "u v" lines (whitespace separated decimal endpoints). An optional
// first line "n <count>" pins the vertex count; otherwise it is one plus the
// largest endpoint. Duplicate pairs collapse; self-loops and malformed lines
// raise ParseError/ValidationError tagged with the 1-based line number.
Graph load_edge_list(std::string_view text);

// Emits "n <count>" followed by sorted "u v" lines; load_edge_list of the
// result reproduces the graph exactly.
std::string serialize_edge_list(const Graph& g);

// --- simple random walk -----------------------------------------------------

// Occupation distributions of the simple random walk started at source:
// rows[s][w] is the probability of sitting at w after s uniform-neighbor
// steps. rows[0] is the indicator of source; every row sums to one.
struct WalkDistribution {
    int source = 0;
    std::vector<std::vector<double>> rows;
};

// Computes rows 0..max_steps. Throws ValidationError if the walk can reach a
// vertex with no neighbors to leave through.
WalkDistribution walk_distribution(const Graph& g, int source, int max_steps);

}  // namespace occsim
