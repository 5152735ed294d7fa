#include "occsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "occsim/errors.hpp"
#include "occsim/rng.hpp"

namespace occsim {

namespace {

void check_replica_count(int replicas) {
    if (replicas < 2) {
        throw ArgumentError("deviation estimates need >= 2 replicas, got " +
                            std::to_string(replicas));
    }
}

// Sample mean and standard error, reduced in replica order.
DeviationEstimate reduce_samples(const std::vector<double>& values, std::string label) {
    DeviationEstimate est;
    est.replicas = static_cast<int>(values.size());
    est.label = std::move(label);
    double sum = 0.0;
    for (double v : values) sum += v;
    est.mean = sum / static_cast<double>(est.replicas);
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    double sd = std::sqrt(ss / static_cast<double>(est.replicas - 1));
    est.std_error = sd / std::sqrt(static_cast<double>(est.replicas));
    return est;
}

ScalingFit fit_points(std::vector<ScalingPoint> points) {
    ScalingFit fit;
    fit.points = std::move(points);
    for (const auto& pt : fit.points) {
        if (!(pt.estimate.mean > 0.0)) {
            fit.degenerate = true;
            return fit;
        }
    }
    std::size_t n = fit.points.size();
    double xbar = 0.0, ybar = 0.0;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = std::log(fit.points[i].size);
        ys[i] = std::log(fit.points[i].estimate.mean);
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= static_cast<double>(n);
    ybar /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
        syy += (ys[i] - ybar) * (ys[i] - ybar);
    }
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    double ss_res = syy - fit.slope * sxy;
    fit.r_squared = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

void check_sizes(const std::vector<int>& sizes) {
    if (sizes.size() < 4) {
        throw ArgumentError("scaling studies need >= 4 sizes, got " + std::to_string(sizes.size()));
    }
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        if (sizes[i] <= sizes[i - 1]) throw ArgumentError("sizes must be strictly increasing");
    }
}

void check_density(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("initial density must lie in [0,1]");
}

void check_steps(int t) {
    if (t < 0) throw ArgumentError("step count must be >= 0, got " + std::to_string(t));
}

StateVector draw_bernoulli_state(int n, double p, RngStream& rng) {
    StateVector s(n);
    for (int v = 0; v < n; ++v) s.set(v, rng.next_bernoulli(p));
    return s;
}

std::uint64_t sweep_stream(std::size_t size_index, int replica) {
    return (static_cast<std::uint64_t>(size_index) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(replica));
}

void check_ensemble_time(const TrajectoryEnsemble& ens, int t) {
    if (t < 0 || static_cast<std::size_t>(t) >= ens.deterministic.size()) {
        throw ArgumentError("time " + std::to_string(t) + " outside the ensemble horizon");
    }
}

}  // namespace

DeviationEstimate ensemble_neighborhood_deviation(const Graph& g, const TrajectoryEnsemble& ens,
                                                  int v, int t) {
    check_replica_count(static_cast<int>(ens.replicas.size()));
    check_ensemble_time(ens, t);
    g.check_vertex(v);
    double ref = neighborhood_average(g, ens.deterministic[static_cast<std::size_t>(t)], v);
    std::vector<double> values(ens.replicas.size());
    for (std::size_t r = 0; r < ens.replicas.size(); ++r) {
        values[r] = std::abs(neighborhood_average(g, ens.replicas[r][static_cast<std::size_t>(t)], v) -
                             ref);
    }
    return reduce_samples(values, "nbr_dev v=" + std::to_string(v) + " t=" + std::to_string(t));
}

DeviationEstimate ensemble_polynomial_deviation(const TrajectoryEnsemble& ens, const Polynomial& p,
                                                int t) {
    check_replica_count(static_cast<int>(ens.replicas.size()));
    check_ensemble_time(ens, t);
    const auto& det = ens.deterministic[static_cast<std::size_t>(t)];
    if (p.nvars() != static_cast<int>(det.size())) {
        throw ArgumentError("polynomial is over " + std::to_string(p.nvars()) +
                            " variables but ensemble states have " + std::to_string(det.size()));
    }
    double ref = p.evaluate(det);
    std::vector<double> values(ens.replicas.size());
    for (std::size_t r = 0; r < ens.replicas.size(); ++r) {
        values[r] = std::abs(p.evaluate(ens.replicas[r][static_cast<std::size_t>(t)]) - ref);
    }
    return reduce_samples(values, "poly_dev t=" + std::to_string(t));
}

DeviationEstimate estimate_neighborhood_deviation(const Graph& g, const InteractionPair& pair,
                                                  const StateVector& x0, int v, int t, int replicas,
                                                  std::uint64_t seed) {
    check_replica_count(replicas);
    check_steps(t);
    TrajectoryEnsemble ens = run_trajectories(g, pair, x0, t, replicas, seed);
    return ensemble_neighborhood_deviation(g, ens, v, t);
}

DeviationEstimate estimate_polynomial_deviation(const Graph& g, const InteractionPair& pair,
                                                const StateVector& x0, const Polynomial& p, int t,
                                                int replicas, std::uint64_t seed) {
    check_replica_count(replicas);
    check_steps(t);
    TrajectoryEnsemble ens = run_trajectories(g, pair, x0, t, replicas, seed);
    return ensemble_polynomial_deviation(ens, p, t);
}

GraphFamily parse_graph_family(std::string_view name) {
    if (name == "complete") return GraphFamily::kComplete;
    if (name == "cycle-power") return GraphFamily::kCyclePower;
    throw ArgumentError("unknown graph family '" + std::string(name) +
                        "'; expected complete or cycle-power");
}

std::string_view graph_family_name(GraphFamily family) {
    return family == GraphFamily::kComplete ? "complete" : "cycle-power";
}

Graph make_family_graph(GraphFamily family, int size) {
    if (family == GraphFamily::kComplete) return complete_graph(size);
    return cycle_power_graph(4 * size, size);
}

ScalingFit degree_scaling_study(GraphFamily family, const std::vector<int>& sizes,
                                const InteractionPair& pair, int t, int replicas,
                                std::uint64_t seed) {
    check_sizes(sizes);
    check_replica_count(replicas);
    check_steps(t);
    std::vector<ScalingPoint> points;
    points.reserve(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        Graph g = make_family_graph(family, sizes[i]);
        int n = g.vertex_count();
        std::vector<double> values(static_cast<std::size_t>(replicas));
        parallel_for(replicas, [&](int r) {
            RngStream rng(seed, sweep_stream(i, r));
            StateVector cur = draw_bernoulli_state(n, 0.5, rng);
            DensityVector det = to_density(cur);
            for (int step = 0; step < t; ++step) {
                cur = stochastic_step(g, pair, cur, rng);
                det = deterministic_step(g, pair, det);
            }
            DensityVector stoch_avg = neighborhood_averages(g, cur);
            DensityVector det_avg = neighborhood_averages(g, det);
            double total = 0.0;
            for (int v = 0; v < n; ++v) {
                total += std::abs(stoch_avg[static_cast<std::size_t>(v)] -
                                  det_avg[static_cast<std::size_t>(v)]);
            }
            values[static_cast<std::size_t>(r)] = total / static_cast<double>(n);
        });
        std::string label = std::string(graph_family_name(family)) + " size=" +
                            std::to_string(sizes[i]) + " delta=" + std::to_string(g.min_degree()) +
                            " t=" + std::to_string(t);
        points.push_back({static_cast<double>(g.min_degree()), reduce_samples(values, label)});
    }
    return fit_points(std::move(points));
}

ScalingFit hom_density_scaling(const Motif& motif, const std::vector<int>& sizes,
                               const InteractionPair& pair, double p, int t, int replicas,
                               std::uint64_t seed) {
    check_sizes(sizes);
    if (sizes.front() < 3) throw ArgumentError("line-graph hosts need n >= 3");
    check_density(p);
    check_replica_count(replicas);
    check_steps(t);
    std::vector<ScalingPoint> points;
    points.reserve(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        int host_n = sizes[i];
        LineGraphResult lg = line_graph(complete_graph(host_n));
        int m = lg.graph.vertex_count();
        std::vector<double> values(static_cast<std::size_t>(replicas));
        parallel_for(replicas, [&](int r) {
            RngStream rng(seed, sweep_stream(i, r));
            StateVector cur = draw_bernoulli_state(m, p, rng);
            DensityVector det = to_density(cur);
            for (int step = 0; step < t; ++step) {
                cur = stochastic_step(lg.graph, pair, cur, rng);
                det = deterministic_step(lg.graph, pair, det);
            }
            EdgeState stoch_state = EdgeState::from_line_graph_state(host_n, lg.vertex_edges, cur);
            EdgeState det_state = EdgeState::from_line_graph_state(host_n, lg.vertex_edges, det);
            values[static_cast<std::size_t>(r)] = std::abs(homomorphism_density(motif, stoch_state) -
                                                           homomorphism_density(motif, det_state));
        });
        std::string label = "motif=" + motif.name() + " n=" + std::to_string(host_n) +
                            " t=" + std::to_string(t);
        points.push_back({static_cast<double>(host_n), reduce_samples(values, label)});
    }
    return fit_points(std::move(points));
}

DiagonalRunReport diagonal_concentration_run(int n, const InteractionPair& pair, double p,
                                             int t_max, std::uint64_t seed) {
    if (n < 3) throw ArgumentError("diagonal runs need K_n hosts with n >= 3");
    check_density(p);
    check_steps(t_max);
    LineGraphResult lg = line_graph(complete_graph(n));
    const Graph& g = lg.graph;

    DiagonalRunReport report;
    report.host_n = n;
    report.vertex_count = g.vertex_count();
    report.p = p;
    report.lipschitz = pair.lipschitz;
    report.own_state_drift = theta(pair, p);
    report.orbit = gamma_tilde_orbit(pair, p, t_max);

    RngStream init(seed, RngStream::kInitStateStream);
    StateVector x0 = draw_bernoulli_state(g.vertex_count(), p, init);
    DensityVector avgs0 = neighborhood_averages(g, x0);
    for (double a : avgs0) report.eps_star = std::max(report.eps_star, std::abs(a - p));

    DensityVector x = to_density(x0);
    report.distances.reserve(static_cast<std::size_t>(t_max) + 1);
    report.distances.push_back(diagonal_distance(x, report.orbit[0]));
    for (int t = 1; t <= t_max; ++t) {
        x = deterministic_step(g, pair, x);
        report.distances.push_back(diagonal_distance(x, report.orbit[static_cast<std::size_t>(t)]));
    }

    if (t_max >= 1) {
        double q = std::max(p, 1.0 - p);
        double envelope = q * report.own_state_drift + pair.lipschitz * report.eps_star;
        report.step1_ok = report.distances[1] <= envelope + 1e-12;
    }

    if (t_max >= 1) {
        std::vector<double> grid;
        if (report.eps_star > 0.0) grid.push_back(report.eps_star);
        for (double eps : {0.01, 0.02, 0.05, 0.1, 0.2}) grid.push_back(eps);
        for (double eps : grid) {
            DiagonalBoundRow row;
            row.eps = eps;
            for (int t = 1; t <= t_max; ++t) {
                DiagonalBound b = diagonal_concentration_bound(g, pair, p, eps, t);
                row.values.push_back(b.value);
                if (t == 1) {
                    row.probability = b.probability;
                    row.vacuous = b.vacuous;
                }
            }
            report.bound_rows.push_back(std::move(row));
        }
    }
    return report;
}

ChaoticShowcase chaotic_showcase(int n, double p, int t_max, std::uint64_t seed) {
    if (n < 3) throw ArgumentError("chaotic showcase needs K_n hosts with n >= 3");
    check_density(p);
    check_steps(t_max);
    InteractionPair pair =
        InteractionPair::make(FunctionSpec::logistic(4.0).complement(), FunctionSpec::logistic(4.0));
    LineGraphResult lg = line_graph(complete_graph(n));
    const Graph& g = lg.graph;

    ChaoticShowcase report;
    report.host_n = n;
    report.p = p;
    report.nearby_p = (p <= 1.0 - 1e-4) ? p + 1e-4 : p - 1e-4;
    report.orbit = gamma_tilde_orbit(pair, p, t_max);
    report.nearby_orbit = gamma_tilde_orbit(pair, report.nearby_p, t_max);
    report.orbit_cubed.reserve(report.orbit.size());
    for (double s : report.orbit) report.orbit_cubed.push_back(s * s * s);
    for (std::size_t t = 0; t < report.orbit.size(); ++t) {
        if (std::abs(report.orbit[t] - report.nearby_orbit[t]) > 0.25) {
            report.divergence_step = static_cast<int>(t);
            break;
        }
    }

    RngStream init(seed, RngStream::kInitStateStream);
    StateVector cur = draw_bernoulli_state(g.vertex_count(), p, init);
    RngStream traj(seed, 0);
    Motif edge = Motif::by_name("edge");
    Motif triangle = Motif::by_name("triangle");
    for (int t = 0; t <= t_max; ++t) {
        EdgeState state = EdgeState::from_line_graph_state(n, lg.vertex_edges, cur);
        report.edge_density.push_back(homomorphism_density(edge, state));
        report.triangle_density.push_back(homomorphism_density(triangle, state));
        if (t < t_max) cur = stochastic_step(g, pair, cur, traj);
    }
    return report;
}

}  // namespace occsim
