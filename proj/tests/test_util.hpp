#pragma once

#include <algorithm>
#include <vector>

#include "occsim/dynamics.hpp"
#include "occsim/graph.hpp"
#include "occsim/interaction.hpp"
#include "occsim/observables.hpp"
#include "occsim/rng.hpp"

namespace occsim::testutil {

// Independent random-walk oracle: dense transition-matrix powers.
inline std::vector<std::vector<double>> dense_walk_rows(const Graph& g, int source, int steps) {
    int n = g.vertex_count();
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    for (int u = 0; u < n; ++u)
        for (int w : g.neighbors(u)) p[u][w] = 1.0 / g.degree(u);
    std::vector<std::vector<double>> rows;
    std::vector<double> row(n, 0.0);
    row[source] = 1.0;
    rows.push_back(row);
    for (int s = 0; s < steps; ++s) {
        std::vector<double> next(n, 0.0);
        for (int u = 0; u < n; ++u)
            for (int w = 0; w < n; ++w) next[w] += row[u] * p[u][w];
        row = std::move(next);
        rows.push_back(row);
    }
    return rows;
}

// Random connected graph: a random spanning tree plus extra random edges.
inline Graph random_connected_graph(int n, int extra_edges, RngStream& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(static_cast<int>(rng.next_u64() % v), v);
    for (int i = 0; i < extra_edges; ++i) {
        int a = static_cast<int>(rng.next_u64() % n);
        int b = static_cast<int>(rng.next_u64() % n);
        if (a != b) edges.emplace_back(a, b);
    }
    return Graph::from_edges(n, edges);
}

inline Graph relabel(const Graph& g, const std::vector<int>& perm) {
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    return Graph::from_edges(g.vertex_count(), edges);
}

// Brute-force injective homomorphism count of a motif into the graph whose
// adjacency matrix is adj.
inline long injective_hom_count(const Motif& motif, const std::vector<std::vector<int>>& adj) {
    int n = static_cast<int>(adj.size());
    int k = motif.vertex_count();
    auto motif_edges = motif.shape().edges();  // pairs (a, b) with a < b
    std::vector<int> image(k, -1);
    std::vector<bool> used(n, false);
    long count = 0;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == k) {
            ++count;
            return;
        }
        for (int cand = 0; cand < n; ++cand) {
            if (used[cand]) continue;
            image[depth] = cand;
            bool ok = true;
            for (auto [a, b] : motif_edges) {
                // Check each motif edge once its later endpoint is placed.
                if (b == depth && !adj[image[a]][image[b]]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            used[cand] = true;
            self(self, depth + 1);
            used[cand] = false;
        }
    };
    rec(rec, 0);
    return count;
}

// Random interaction pair with Lipschitz constant <= 2; about a third of the
// draws are memoryless (g = 1 - f).
inline InteractionPair random_pair(RngStream& rng) {
    auto draw_spec = [&]() {
        switch (rng.next_u64() % 4) {
            case 0:
                return FunctionSpec::constant(rng.next_double());
            case 1: {
                double y0 = rng.next_double();
                double y1 = rng.next_double();
                return FunctionSpec::affine(y1 - y0, y0);
            }
            case 2:
                return FunctionSpec::logistic(2.0 * rng.next_double());
            default: {
                while (true) {
                    double xm = 0.3 + 0.4 * rng.next_double();
                    std::vector<std::pair<double, double>> pts = {
                        {0.0, rng.next_double()}, {xm, rng.next_double()}, {1.0, rng.next_double()}};
                    FunctionSpec s = FunctionSpec::piecewise_linear(std::move(pts));
                    if (s.lipschitz() <= 2.0) return s;
                }
            }
        }
    };
    FunctionSpec f = draw_spec();
    FunctionSpec g = rng.next_bernoulli(1.0 / 3.0) ? f.complement() : draw_spec();
    return InteractionPair::make(std::move(f), std::move(g));
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace occsim::testutil
