#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "occsim/bounds.hpp"
#include "occsim/dynamics.hpp"
#include "occsim/graph.hpp"
#include "occsim/interaction.hpp"
#include "occsim/observables.hpp"

namespace occsim {

// Monte Carlo estimate of a deviation quantity: sample mean, standard error
// (sample standard deviation / sqrt(replicas), n-1 denominator), and the
// label of what was measured.
struct DeviationEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    int replicas = 0;
    std::string label;
};

// One (size parameter, estimate) pair of a scaling study.
struct ScalingPoint {
    double size = 0.0;
    DeviationEstimate estimate;
};

// Ordinary least squares fit of log(estimate) on log(size). degenerate is
// set (and slope/intercept/r_squared are meaningless zeros) when any
// estimate is <= 0, which makes the log-log fit undefined.
struct ScalingFit {
    std::vector<ScalingPoint> points;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    bool degenerate = false;
};

// Estimates E|X_Nv(t) - x_Nv(t)| from an already-simulated ensemble: the
// deterministic companion supplies the reference, each replica contributes
// one sample. Needs >= 2 replicas and t within the ensemble horizon.
DeviationEstimate ensemble_neighborhood_deviation(const Graph& g, const TrajectoryEnsemble& ens,
                                                  int v, int t);

// Same for E|P(X(t)) - P(x(t))| with a polynomial observable.
DeviationEstimate ensemble_polynomial_deviation(const TrajectoryEnsemble& ens, const Polynomial& p,
                                                int t);

// Convenience wrappers that simulate `replicas` trajectories from the shared
// binary start x0 (replica r uses stream (seed, r)) and reduce as above.
DeviationEstimate estimate_neighborhood_deviation(const Graph& g, const InteractionPair& pair,
                                                  const StateVector& x0, int v, int t, int replicas,
                                                  std::uint64_t seed);
DeviationEstimate estimate_polynomial_deviation(const Graph& g, const InteractionPair& pair,
                                                const StateVector& x0, const Polynomial& p, int t,
                                                int replicas, std::uint64_t seed);

// Graph families for the minimum-degree scaling study. kComplete maps size
// parameter s to K_s (min degree s-1); kCyclePower maps s to the ring of 4s
// vertices with neighbor radius s (min degree 2s).
enum class GraphFamily { kComplete, kCyclePower };
GraphFamily parse_graph_family(std::string_view name);  // "complete" | "cycle-power"
std::string_view graph_family_name(GraphFamily family);
Graph make_family_graph(GraphFamily family, int size);

// How the vertex-averaged neighborhood deviation scales with the minimum
// degree: for each size, every replica draws its own i.i.d. Bernoulli(1/2)
// start from stream (seed, size_index << 32 | replica), runs both processes
// coupled at that start to time t, and contributes
// mean_v |X_Nv(t) - x_Nv(t)|. Points carry min degree as the size axis;
// the fit is log-deviation versus log-min-degree. Needs >= 4 strictly
// increasing sizes and >= 2 replicas.
ScalingFit degree_scaling_study(GraphFamily family, const std::vector<int>& sizes,
                                const InteractionPair& pair, int t, int replicas,
                                std::uint64_t seed);

// How |t(F, X(t)) - t(F, x(t))| on the line graph of K_n scales with n: per
// replica, a Bernoulli(p) edge start (stream (seed, size_index << 32 |
// replica)), both processes to time t, then the homomorphism-density gap.
// Fit is log-deviation versus log-n. Needs >= 4 strictly increasing sizes
// (each n >= 3) and >= 2 replicas.
ScalingFit hom_density_scaling(const Motif& motif, const std::vector<int>& sizes,
                               const InteractionPair& pair, double p, int t, int replicas,
                               std::uint64_t seed);

// Bound certificate row of a diagonal run: one neighborhood slack eps with
// its confidence level and the envelope value for each t = 1..t_max.
struct DiagonalBoundRow {
    double eps = 0.0;
    double probability = 0.0;
    bool vacuous = false;
    std::vector<double> values;
};

// Deterministic-companion run on the line graph of K_n started from a random
// binary state: how far x(t) strays from the diagonal orbit.
struct DiagonalRunReport {
    int host_n = 0;        // the K_n behind the line graph
    int vertex_count = 0;  // n choose 2
    double p = 0.0;
    double lipschitz = 0.0;
    double own_state_drift = 0.0;  // theta at p
    double eps_star = 0.0;         // realized max_v |x_Nv(0) - p|
    bool step1_ok = true;          // d(x(1)) <= q*theta + M*eps_star
    std::vector<double> orbit;      // gamma_tilde^t(p), t = 0..t_max
    std::vector<double> distances;  // max_v |x_v(t) - orbit[t]|, t = 0..t_max
    std::vector<DiagonalBoundRow> bound_rows;  // eps_star first, then a fixed grid
};

// Samples x(0) ~ Bernoulli(p) over the edges of K_n (reserved init stream of
// seed), iterates the deterministic map to t_max, and reports distances to
// the diagonal orbit next to the concentration envelopes. n >= 3.
DiagonalRunReport diagonal_concentration_run(int n, const InteractionPair& pair, double p,
                                             int t_max, std::uint64_t seed);

// Chaotic edge-process showcase: one stochastic trajectory of the memoryless
// logistic(4) pair on the line graph of K_n, started from Bernoulli(p) edges.
struct ChaoticShowcase {
    int host_n = 0;
    double p = 0.0;
    double nearby_p = 0.0;     // p shifted by 1e-4 (down when p is at the top)
    int divergence_step = -1;  // first t with |orbit - nearby orbit| > 0.25
    std::vector<double> orbit;             // g^t(p)
    std::vector<double> orbit_cubed;       // g^t(p)^3, triangle prediction
    std::vector<double> nearby_orbit;      // g^t(nearby_p)
    std::vector<double> edge_density;      // t(edge, X(t))
    std::vector<double> triangle_density;  // t(triangle, X(t))
};

// x(0) from the reserved init stream of seed, trajectory from stream
// (seed, 0). n >= 3, t_max >= 0.
ChaoticShowcase chaotic_showcase(int n, double p, int t_max, std::uint64_t seed);

}  // namespace occsim
