#pragma once

#include <vector>

#include "occsim/dynamics.hpp"
#include "occsim/graph.hpp"
#include "occsim/interaction.hpp"
#include "occsim/observables.hpp"

namespace occsim {

// Full distribution of the occupancy chain over {0,1}^V, indexed by bitmask
// (vertex v <-> bit v). Dense, so the vertex count is capped at 20.
struct ChainDistribution {
    int vertex_count = 0;
    std::vector<double> probs;  // size 1 << vertex_count
};

inline constexpr int kMaxExactVertices = 20;

// Distribution concentrated on one binary state.
ChainDistribution point_mass(const StateVector& x);

// One exact synchronous update: pushes the distribution through the chain's
// transition kernel (every vertex flips conditionally independently given the
// pre-step state). Runs single-threaded in a fixed order, so results are
// byte-identical across runs and worker settings. Cost is O(4^|V|).
ChainDistribution exact_step(const Graph& g, const InteractionPair& pair,
                             const ChainDistribution& dist);

// Distributions at times 0..steps starting from dist0.
std::vector<ChainDistribution> exact_chain(const Graph& g, const InteractionPair& pair,
                                           const ChainDistribution& dist0, int steps);

// E[X_v] under dist.
double exact_vertex_expectation(const ChainDistribution& dist, int v);

// All vertex expectations in one pass.
DensityVector exact_mean(const ChainDistribution& dist);

// E |P(X) - ref| for a polynomial observable over the same vertex set.
double polynomial_deviation(const ChainDistribution& dist, const Polynomial& p, double ref);

// E |X_Nv - ref| where X_Nv is the neighborhood average at v.
double neighborhood_deviation(const Graph& g, const ChainDistribution& dist, int v, double ref);

}  // namespace occsim
