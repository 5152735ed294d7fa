#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "occsim/graph.hpp"
#include "occsim/interaction.hpp"

namespace occsim {

// Exact binomial coefficient as a double (computed in 128-bit integers; the
// values used stay far below the 53-bit mantissa only for small arguments,
// so conversion is the single rounding step). n is capped at 60.
double binomial_coefficient(int n, int k);

// Guaranteed upper bound on E|X_Nv(t) - x_Nv(t)|, the gap between the
// stochastic and deterministic neighborhood averages at v after t steps:
//
//   sum_{s=0}^{t-1} binom(t, s+1) * [sum_w walk_s(v->w) / sqrt(deg w)] * M^s
//
// where walk_s is the s-step simple-random-walk occupation distribution from
// v (wd must provide rows 0..t-1) and M is the pair's Lipschitz constant.
double walk_deviation_bound(const Graph& g, const WalkDistribution& wd, double M, int t);

// The same bound relaxed through the minimum degree delta:
//   C * delta^{-1/2},  C = ((M+1)^t - 1) / M  (C = t in the M -> 0 limit).
// Always >= walk_deviation_bound; equal on regular graphs.
double min_degree_deviation_bound(int delta, double M, int t);

// Guaranteed upper bound on E|P(X(t)) - P(x(t))| over all degree-d
// homogeneous polynomials with norm_l1 <= lambda and norm_l2 <= rho:
//   2 * rho * sum_{s=0}^{t-1} 2^{d s} (1 + M*lambda)^s.
double polynomial_deviation_bound(int d, double M, double lambda, double rho, int t);

// Guaranteed upper bound on |E X_v(t) - x_v(t)|, the gap between the exact
// mean occupancy and its deterministic companion: the running sum
// sum_{r=0}^{t-1} walk_deviation_bound(g, wd, M, r). Needs wd rows 0..t-2.
double expectation_gap_bound(const Graph& g, const WalkDistribution& wd, double M, int t);

// High-probability envelope for the deterministic trajectory around the
// diagonal orbit when x(0) is an i.i.d. Bernoulli(p) binary state:
// with probability at least `probability`, for all t >= 1,
//   max_v |x_v(t) - gamma_tilde^t(p)| <= (q*theta + M*eps) * e^{2M(t-1)},
// q = max(p, 1-p). probability = max(0, 1 - 2|V| exp(-2 * delta * eps^2));
// vacuous flags a clamped (zero) probability.
struct DiagonalBound {
    double value = 0.0;
    double probability = 0.0;
    bool vacuous = false;
};
DiagonalBound diagonal_concentration_bound(const Graph& g, const InteractionPair& pair, double p,
                                           double eps, int t);

// Sup distance max_v |x_v - c| to the constant vector c*1 (c in [0,1]).
double diagonal_distance(std::span<const double> x, double c);

// Payload of the CLI `bound` subcommand: which bound, the inputs it saw, and
// its values for t = 0..T (or 1..T for the diagonal kind).
struct BoundReport {
    std::string kind;  // walk | min-degree | polynomial | mean-gap | diagonal
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<double> values;
    std::optional<double> probability;
    std::optional<bool> vacuous;
};

}  // namespace occsim
