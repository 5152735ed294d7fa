// Command-line front end: simulation, bound certificates, the exact
// small-graph oracle, Monte Carlo deviation estimates, scaling studies, and
// line-graph utilities. Every run is a pure function of its flags and seed;
// output bytes never depend on the worker count.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "occsim/bounds.hpp"
#include "occsim/dynamics.hpp"
#include "occsim/errors.hpp"
#include "occsim/exact.hpp"
#include "occsim/experiments.hpp"
#include "occsim/graph.hpp"
#include "occsim/interaction.hpp"
#include "occsim/observables.hpp"

namespace {

using occsim::ArgumentError;
using occsim::ValidationError;
using ordered_json = nlohmann::ordered_json;

// CSV cells use 15 significant digits; JSON uses shortest round-trip.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file '" + out_path + "'");
    out << text;
    if (!out) throw ValidationError("failed writing output file '" + out_path + "'");
}

void emit_json(const ordered_json& doc, const std::string& out_path) {
    emit(doc.dump(2) + "\n", out_path);
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(text.substr(start));
            return parts;
        }
        parts.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

int parse_int_strict(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("bad " + what + " '" + text + "'");
    }
    if (used != text.size()) throw ValidationError("bad " + what + " '" + text + "'");
    return value;
}

double parse_double_strict(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("bad " + what + " '" + text + "'");
    }
    if (used != text.size()) throw ValidationError("bad " + what + " '" + text + "'");
    return value;
}

std::uint64_t parse_u64_strict(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
        value = std::stoull(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("bad " + what + " '" + text + "'");
    }
    if (used != text.size()) throw ValidationError("bad " + what + " '" + text + "'");
    return value;
}

// A parsed --graph argument: either a generator spec
//   gen:complete:<n> | gen:cycle:<n> | gen:cycle-power:<n>,<k>
//   gen:er:<n>,<p>[,<seed>] | gen:line-complete:<n>
// or a path to an edge-list file. line-complete remembers its host so
// motif observables can map line-graph states back to host edges.
struct GraphSpec {
    occsim::Graph graph;
    std::string spec;
    int line_host = 0;
    std::vector<std::pair<int, int>> vertex_edges;
};

GraphSpec parse_graph_spec(const std::string& spec) {
    GraphSpec result;
    result.spec = spec;
    if (spec.rfind("gen:", 0) != 0) {
        std::ifstream in(spec, std::ios::binary);
        if (!in) throw ValidationError("cannot open graph file '" + spec + "'");
        std::ostringstream text;
        text << in.rdbuf();
        result.graph = occsim::load_edge_list(text.str());
        return result;
    }
    std::string rest = spec.substr(4);
    std::size_t colon = rest.find(':');
    if (colon == std::string::npos) throw ValidationError("bad graph spec '" + spec + "'");
    std::string name = rest.substr(0, colon);
    std::vector<std::string> args = split(rest.substr(colon + 1), ',');
    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi) {
            throw ValidationError("bad graph spec '" + spec + "'");
        }
    };
    if (name == "complete") {
        arity(1, 1);
        result.graph = occsim::complete_graph(parse_int_strict(args[0], "vertex count"));
    } else if (name == "cycle") {
        arity(1, 1);
        result.graph = occsim::cycle_graph(parse_int_strict(args[0], "vertex count"));
    } else if (name == "cycle-power") {
        arity(2, 2);
        result.graph = occsim::cycle_power_graph(parse_int_strict(args[0], "vertex count"),
                                                 parse_int_strict(args[1], "radius"));
    } else if (name == "er") {
        arity(2, 3);
        std::uint64_t seed = args.size() == 3 ? parse_u64_strict(args[2], "graph seed") : 0;
        result.graph = occsim::erdos_renyi(parse_int_strict(args[0], "vertex count"),
                                           parse_double_strict(args[1], "edge probability"), seed);
    } else if (name == "line-complete") {
        arity(1, 1);
        int n = parse_int_strict(args[0], "host vertex count");
        occsim::LineGraphResult lg = occsim::line_graph(occsim::complete_graph(n));
        result.graph = std::move(lg.graph);
        result.vertex_edges = std::move(lg.vertex_edges);
        result.line_host = n;
    } else {
        throw ValidationError("unknown graph generator '" + name + "'");
    }
    return result;
}

ordered_json graph_echo(const GraphSpec& gs) {
    ordered_json j;
    j["spec"] = gs.spec;
    j["vertices"] = gs.graph.vertex_count();
    j["edges"] = gs.graph.edge_count();
    j["min_degree"] = gs.graph.min_degree();
    return j;
}

occsim::InteractionPair make_pair_checked(const std::string& f_text, const std::string& g_text) {
    if (f_text.empty() || g_text.empty()) {
        throw ValidationError("this command needs both --f and --g");
    }
    return occsim::InteractionPair::make(occsim::FunctionSpec::parse(f_text),
                                         occsim::FunctionSpec::parse(g_text));
}

ordered_json pair_echo(const occsim::InteractionPair& pair) {
    ordered_json j;
    j["f"] = pair.f.to_text();
    j["g"] = pair.g.to_text();
    j["lipschitz"] = pair.lipschitz;
    j["memoryless"] = pair.memoryless;
    j["voter"] = pair.voter;
    return j;
}

void check_format(const std::string& format) {
    if (format != "json" && format != "csv") {
        throw ValidationError("unknown format '" + format + "'; expected json or csv");
    }
}

ordered_json estimate_echo(const occsim::DeviationEstimate& est) {
    ordered_json j;
    j["label"] = est.label;
    j["mean"] = est.mean;
    j["std_error"] = est.std_error;
    j["replicas"] = est.replicas;
    return j;
}

ordered_json fit_echo(const occsim::ScalingFit& fit) {
    ordered_json j;
    ordered_json points = ordered_json::array();
    for (const auto& pt : fit.points) {
        ordered_json p;
        p["size"] = pt.size;
        p["estimate"] = estimate_echo(pt.estimate);
        points.push_back(std::move(p));
    }
    j["points"] = std::move(points);
    j["degenerate"] = fit.degenerate;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    return j;
}

std::string scaling_csv(const occsim::ScalingFit& fit) {
    std::string csv = "size,mean,std_error\n";
    for (const auto& pt : fit.points) {
        csv += fmt(pt.size) + "," + fmt(pt.estimate.mean) + "," + fmt(pt.estimate.std_error) + "\n";
    }
    return csv;
}

// --- simulate ----------------------------------------------------------------

struct SimulateOpts {
    std::string graph, f, g, out;
    std::string init = "bernoulli:0.5";
    std::string format = "json";
    int steps = 10;
    int replicas = 1;
    std::uint64_t seed = 0;
};

void run_simulate(const SimulateOpts& o) {
    check_format(o.format);
    GraphSpec gs = parse_graph_spec(o.graph);
    occsim::InteractionPair pair = make_pair_checked(o.f, o.g);
    int n = gs.graph.vertex_count();
    occsim::StateVector x0 = occsim::parse_initial_state(o.init, n, o.seed);
    occsim::TrajectoryEnsemble ens =
        occsim::run_trajectories(gs.graph, pair, x0, o.steps, o.replicas, o.seed);

    std::vector<double> stoch_mean(static_cast<std::size_t>(o.steps) + 1, 0.0);
    std::vector<double> det_mean(static_cast<std::size_t>(o.steps) + 1, 0.0);
    for (int t = 0; t <= o.steps; ++t) {
        long occupied = 0;
        for (int r = 0; r < o.replicas; ++r) {
            occupied += ens.replicas[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)]
                            .popcount();
        }
        stoch_mean[static_cast<std::size_t>(t)] =
            static_cast<double>(occupied) / (static_cast<double>(o.replicas) * n);
        double acc = 0.0;
        for (double x : ens.deterministic[static_cast<std::size_t>(t)]) acc += x;
        det_mean[static_cast<std::size_t>(t)] = acc / n;
    }

    if (o.format == "csv") {
        std::string csv = "t,stochastic_mean,deterministic_mean\n";
        for (int t = 0; t <= o.steps; ++t) {
            csv += std::to_string(t) + "," + fmt(stoch_mean[static_cast<std::size_t>(t)]) + "," +
                   fmt(det_mean[static_cast<std::size_t>(t)]) + "\n";
        }
        emit(csv, o.out);
        return;
    }
    ordered_json j;
    j["command"] = "simulate";
    j["graph"] = graph_echo(gs);
    j["pair"] = pair_echo(pair);
    j["init"] = o.init;
    j["steps"] = o.steps;
    j["replicas"] = o.replicas;
    j["seed"] = o.seed;
    j["stochastic_mean"] = stoch_mean;
    j["deterministic_mean"] = det_mean;
    emit_json(j, o.out);
}

// --- bound -------------------------------------------------------------------

struct BoundOpts {
    std::string kind, graph, f, g, out;
    std::string format = "json";
    int steps = 5;
    int vertex = 0;
    int delta = 0;       // explicit min degree for kind=min-degree
    int degree = 1;      // polynomial degree for kind=polynomial
    double lambda = 1.0;
    double rho = 1.0;
    double lipschitz = -1.0;  // < 0 means "derive from --f/--g"
    double density = 0.5;
    double eps = 0.1;
    std::uint64_t seed = 0;  // unused; kept so shared flag wiring stays uniform
};

void run_bound(const BoundOpts& o) {
    check_format(o.format);
    if (o.kind != "walk" && o.kind != "min-degree" && o.kind != "polynomial" &&
        o.kind != "mean-gap" && o.kind != "diagonal") {
        throw ValidationError(
            "unknown bound kind '" + o.kind +
            "'; expected walk, min-degree, polynomial, mean-gap, or diagonal");
    }
    if (o.steps < 0) throw ArgumentError("--steps must be >= 0");

    std::optional<occsim::InteractionPair> pair;
    if (!o.f.empty() || !o.g.empty()) pair = make_pair_checked(o.f, o.g);
    double M = o.lipschitz;
    if (M < 0.0) {
        if (!pair) {
            throw ValidationError("kind '" + o.kind + "' needs --lipschitz or an --f/--g pair");
        }
        M = pair->lipschitz;
    }

    std::optional<GraphSpec> gs;
    if (!o.graph.empty()) gs = parse_graph_spec(o.graph);
    auto need_graph = [&]() -> const occsim::Graph& {
        if (!gs) throw ValidationError("kind '" + o.kind + "' needs --graph");
        return gs->graph;
    };

    occsim::BoundReport report;
    report.kind = o.kind;
    int t_first = 0;
    if (!o.graph.empty()) report.inputs.emplace_back("graph", o.graph);

    if (o.kind == "walk" || o.kind == "mean-gap") {
        const occsim::Graph& g = need_graph();
        g.check_vertex(o.vertex);
        report.inputs.emplace_back("vertex", std::to_string(o.vertex));
        report.inputs.emplace_back("lipschitz", fmt(M));
        occsim::WalkDistribution wd =
            occsim::walk_distribution(g, o.vertex, o.steps > 0 ? o.steps - 1 : 0);
        for (int t = 0; t <= o.steps; ++t) {
            report.values.push_back(o.kind == "walk"
                                        ? occsim::walk_deviation_bound(g, wd, M, t)
                                        : occsim::expectation_gap_bound(g, wd, M, t));
        }
    } else if (o.kind == "min-degree") {
        int delta = o.delta;
        if (delta <= 0) delta = need_graph().min_degree();
        report.inputs.emplace_back("delta", std::to_string(delta));
        report.inputs.emplace_back("lipschitz", fmt(M));
        for (int t = 0; t <= o.steps; ++t) {
            report.values.push_back(occsim::min_degree_deviation_bound(delta, M, t));
        }
    } else if (o.kind == "polynomial") {
        report.inputs.emplace_back("degree", std::to_string(o.degree));
        report.inputs.emplace_back("lambda", fmt(o.lambda));
        report.inputs.emplace_back("rho", fmt(o.rho));
        report.inputs.emplace_back("lipschitz", fmt(M));
        for (int t = 0; t <= o.steps; ++t) {
            report.values.push_back(
                occsim::polynomial_deviation_bound(o.degree, M, o.lambda, o.rho, t));
        }
    } else if (o.kind == "diagonal") {
        if (o.steps < 1) throw ArgumentError("kind 'diagonal' needs --steps >= 1");
        if (!pair) throw ValidationError("kind 'diagonal' needs an --f/--g pair");
        const occsim::Graph& g = need_graph();
        report.inputs.emplace_back("f", pair->f.to_text());
        report.inputs.emplace_back("g", pair->g.to_text());
        report.inputs.emplace_back("density", fmt(o.density));
        report.inputs.emplace_back("eps", fmt(o.eps));
        t_first = 1;
        for (int t = 1; t <= o.steps; ++t) {
            occsim::DiagonalBound b =
                occsim::diagonal_concentration_bound(g, *pair, o.density, o.eps, t);
            report.values.push_back(b.value);
            if (t == 1) {
                report.probability = b.probability;
                report.vacuous = b.vacuous;
            }
        }
    }
    report.inputs.emplace_back("steps", std::to_string(o.steps));

    if (o.format == "csv") {
        std::string csv = "t,value\n";
        for (std::size_t i = 0; i < report.values.size(); ++i) {
            csv += std::to_string(t_first + static_cast<int>(i)) + "," + fmt(report.values[i]) +
                   "\n";
        }
        emit(csv, o.out);
        return;
    }
    ordered_json j;
    j["command"] = "bound";
    j["kind"] = report.kind;
    ordered_json inputs;
    for (const auto& [key, value] : report.inputs) inputs[key] = value;
    j["inputs"] = std::move(inputs);
    j["t_first"] = t_first;
    j["values"] = report.values;
    if (report.probability) j["probability"] = *report.probability;
    if (report.vacuous) j["vacuous"] = *report.vacuous;
    emit_json(j, o.out);
}

// --- oracle ------------------------------------------------------------------

struct OracleOpts {
    std::string graph, f, g, out;
    std::string init = "all0";
    std::string format = "json";
    int steps = 3;
    std::uint64_t seed = 0;
};

void run_oracle(const OracleOpts& o) {
    check_format(o.format);
    GraphSpec gs = parse_graph_spec(o.graph);
    occsim::InteractionPair pair = make_pair_checked(o.f, o.g);
    int n = gs.graph.vertex_count();
    occsim::StateVector x0 = occsim::parse_initial_state(o.init, n, o.seed);
    std::vector<occsim::ChainDistribution> chain =
        occsim::exact_chain(gs.graph, pair, occsim::point_mass(x0), o.steps);

    std::vector<occsim::DensityVector> det;
    det.push_back(occsim::to_density(x0));
    for (int t = 0; t < o.steps; ++t) {
        det.push_back(occsim::deterministic_step(gs.graph, pair, det.back()));
    }

    std::vector<std::vector<double>> expectations, mean_gap, nbr_dev;
    for (int t = 0; t <= o.steps; ++t) {
        const auto& dist = chain[static_cast<std::size_t>(t)];
        const auto& x = det[static_cast<std::size_t>(t)];
        occsim::DensityVector mean = occsim::exact_mean(dist);
        occsim::DensityVector refs = occsim::neighborhood_averages(gs.graph, x);
        std::vector<double> gaps(static_cast<std::size_t>(n)), devs(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            gaps[static_cast<std::size_t>(v)] =
                std::abs(mean[static_cast<std::size_t>(v)] - x[static_cast<std::size_t>(v)]);
            devs[static_cast<std::size_t>(v)] = occsim::neighborhood_deviation(
                gs.graph, dist, v, refs[static_cast<std::size_t>(v)]);
        }
        expectations.push_back(std::move(mean));
        mean_gap.push_back(std::move(gaps));
        nbr_dev.push_back(std::move(devs));
    }

    if (o.format == "csv") {
        std::string csv = "t,vertex,expectation,deterministic,mean_gap,neighborhood_deviation\n";
        for (int t = 0; t <= o.steps; ++t) {
            for (int v = 0; v < n; ++v) {
                auto tv = static_cast<std::size_t>(t);
                auto vv = static_cast<std::size_t>(v);
                csv += std::to_string(t) + "," + std::to_string(v) + "," +
                       fmt(expectations[tv][vv]) + "," + fmt(det[tv][vv]) + "," +
                       fmt(mean_gap[tv][vv]) + "," + fmt(nbr_dev[tv][vv]) + "\n";
            }
        }
        emit(csv, o.out);
        return;
    }
    ordered_json j;
    j["command"] = "oracle";
    j["graph"] = graph_echo(gs);
    j["pair"] = pair_echo(pair);
    j["init"] = o.init;
    j["steps"] = o.steps;
    j["seed"] = o.seed;
    j["expectations"] = expectations;
    j["deterministic"] = det;
    j["mean_gap"] = mean_gap;
    j["neighborhood_deviation"] = nbr_dev;
    emit_json(j, o.out);
}

// --- deviation ---------------------------------------------------------------

struct DeviationOpts {
    std::string graph, f, g, motif, out;
    std::string init = "bernoulli:0.5";
    std::string format = "json";
    int steps = 2;
    int replicas = 1000;
    int vertex = -1;
    std::uint64_t seed = 0;
};

void run_deviation(const DeviationOpts& o) {
    check_format(o.format);
    if ((o.vertex >= 0) == !o.motif.empty()) {
        throw ValidationError("pick exactly one observable: --vertex v or --motif name");
    }
    GraphSpec gs = parse_graph_spec(o.graph);
    occsim::InteractionPair pair = make_pair_checked(o.f, o.g);
    occsim::StateVector x0 =
        occsim::parse_initial_state(o.init, gs.graph.vertex_count(), o.seed);

    occsim::DeviationEstimate est;
    std::string observable, bound_kind;
    double bound = 0.0;
    if (o.vertex >= 0) {
        observable = "nbr:" + std::to_string(o.vertex);
        bound_kind = "walk";
        est = occsim::estimate_neighborhood_deviation(gs.graph, pair, x0, o.vertex, o.steps,
                                                      o.replicas, o.seed);
        occsim::WalkDistribution wd =
            occsim::walk_distribution(gs.graph, o.vertex, o.steps > 0 ? o.steps - 1 : 0);
        bound = occsim::walk_deviation_bound(gs.graph, wd, pair.lipschitz, o.steps);
    } else {
        if (gs.line_host == 0) {
            throw ValidationError("--motif observables need --graph gen:line-complete:<n>");
        }
        observable = "motif:" + o.motif;
        bound_kind = "polynomial";
        occsim::Polynomial poly =
            occsim::motif_polynomial(occsim::Motif::by_name(o.motif), gs.line_host);
        est = occsim::estimate_polynomial_deviation(gs.graph, pair, x0, poly, o.steps, o.replicas,
                                                    o.seed);
        bound = occsim::polynomial_deviation_bound(poly.degree(), pair.lipschitz, poly.norm_l1(),
                                                   poly.norm_l2(), o.steps);
    }
    bool dominated = est.mean + 4.0 * est.std_error <= bound;

    if (o.format == "csv") {
        std::string csv = "label,mean,std_error,replicas,bound\n";
        csv += est.label + "," + fmt(est.mean) + "," + fmt(est.std_error) + "," +
               std::to_string(est.replicas) + "," + fmt(bound) + "\n";
        emit(csv, o.out);
        return;
    }
    ordered_json j;
    j["command"] = "deviation";
    j["graph"] = graph_echo(gs);
    j["pair"] = pair_echo(pair);
    j["init"] = o.init;
    j["observable"] = observable;
    j["steps"] = o.steps;
    j["replicas"] = o.replicas;
    j["seed"] = o.seed;
    j["estimate"] = estimate_echo(est);
    j["bound_kind"] = bound_kind;
    j["bound"] = bound;
    j["dominated"] = dominated;
    emit_json(j, o.out);
}

// --- scaling studies ----------------------------------------------------------

struct ScalingDegreeOpts {
    std::string family, f, g, out;
    std::string format = "json";
    std::vector<int> sizes;
    int steps = 1;
    int replicas = 200;
    std::uint64_t seed = 0;
};

void run_scaling_degree(const ScalingDegreeOpts& o) {
    check_format(o.format);
    occsim::GraphFamily family = occsim::parse_graph_family(o.family);
    occsim::InteractionPair pair = make_pair_checked(o.f, o.g);
    occsim::ScalingFit fit =
        occsim::degree_scaling_study(family, o.sizes, pair, o.steps, o.replicas, o.seed);
    if (o.format == "csv") {
        emit(scaling_csv(fit), o.out);
        return;
    }
    ordered_json j;
    j["command"] = "scaling-degree";
    j["family"] = o.family;
    j["sizes"] = o.sizes;
    j["pair"] = pair_echo(pair);
    j["steps"] = o.steps;
    j["replicas"] = o.replicas;
    j["seed"] = o.seed;
    j["fit"] = fit_echo(fit);
    emit_json(j, o.out);
}

struct ScalingHomOpts {
    std::string motif = "edge";
    std::string f, g, out;
    std::string format = "json";
    std::vector<int> sizes;
    double density = 0.3;
    int steps = 2;
    int replicas = 200;
    std::uint64_t seed = 0;
};

void run_scaling_hom(const ScalingHomOpts& o) {
    check_format(o.format);
    occsim::InteractionPair pair = make_pair_checked(o.f, o.g);
    occsim::ScalingFit fit = occsim::hom_density_scaling(occsim::Motif::by_name(o.motif), o.sizes,
                                                         pair, o.density, o.steps, o.replicas,
                                                         o.seed);
    if (o.format == "csv") {
        emit(scaling_csv(fit), o.out);
        return;
    }
    ordered_json j;
    j["command"] = "scaling-hom";
    j["motif"] = o.motif;
    j["sizes"] = o.sizes;
    j["pair"] = pair_echo(pair);
    j["density"] = o.density;
    j["steps"] = o.steps;
    j["replicas"] = o.replicas;
    j["seed"] = o.seed;
    j["fit"] = fit_echo(fit);
    emit_json(j, o.out);
}

// --- diag / chaos ---------------------------------------------------------------

struct DiagOpts {
    std::string f, g, out;
    std::string format = "json";
    int host_n = 10;
    double density = 0.3;
    int steps = 3;
    std::uint64_t seed = 0;
};

void run_diag(const DiagOpts& o) {
    check_format(o.format);
    occsim::InteractionPair pair = make_pair_checked(o.f, o.g);
    occsim::DiagonalRunReport rep =
        occsim::diagonal_concentration_run(o.host_n, pair, o.density, o.steps, o.seed);
    if (o.format == "csv") {
        std::string csv = "t,orbit,distance\n";
        for (std::size_t t = 0; t < rep.orbit.size(); ++t) {
            csv += std::to_string(t) + "," + fmt(rep.orbit[t]) + "," + fmt(rep.distances[t]) + "\n";
        }
        emit(csv, o.out);
        return;
    }
    ordered_json j;
    j["command"] = "diag";
    j["host_n"] = rep.host_n;
    j["vertices"] = rep.vertex_count;
    j["pair"] = pair_echo(pair);
    j["density"] = rep.p;
    j["steps"] = o.steps;
    j["seed"] = o.seed;
    j["own_state_drift"] = rep.own_state_drift;
    j["eps_star"] = rep.eps_star;
    j["step1_ok"] = rep.step1_ok;
    j["orbit"] = rep.orbit;
    j["distances"] = rep.distances;
    ordered_json rows = ordered_json::array();
    for (const auto& row : rep.bound_rows) {
        ordered_json r;
        r["eps"] = row.eps;
        r["probability"] = row.probability;
        r["vacuous"] = row.vacuous;
        r["values"] = row.values;
        rows.push_back(std::move(r));
    }
    j["bound_rows"] = std::move(rows);
    emit_json(j, o.out);
}

struct ChaosOpts {
    std::string out;
    std::string format = "json";
    int host_n = 20;
    double density = 0.3;
    int steps = 30;
    std::uint64_t seed = 0;
};

void run_chaos(const ChaosOpts& o) {
    check_format(o.format);
    occsim::ChaoticShowcase rep = occsim::chaotic_showcase(o.host_n, o.density, o.steps, o.seed);
    if (o.format == "csv") {
        std::string csv = "t,edge_density,orbit,triangle_density,orbit_cubed,nearby_orbit\n";
        for (std::size_t t = 0; t < rep.orbit.size(); ++t) {
            csv += std::to_string(t) + "," + fmt(rep.edge_density[t]) + "," + fmt(rep.orbit[t]) +
                   "," + fmt(rep.triangle_density[t]) + "," + fmt(rep.orbit_cubed[t]) + "," +
                   fmt(rep.nearby_orbit[t]) + "\n";
        }
        emit(csv, o.out);
        return;
    }
    ordered_json j;
    j["command"] = "chaos";
    j["host_n"] = rep.host_n;
    j["density"] = rep.p;
    j["nearby_density"] = rep.nearby_p;
    j["steps"] = o.steps;
    j["seed"] = o.seed;
    j["divergence_step"] = rep.divergence_step;
    j["orbit"] = rep.orbit;
    j["orbit_cubed"] = rep.orbit_cubed;
    j["nearby_orbit"] = rep.nearby_orbit;
    j["edge_density"] = rep.edge_density;
    j["triangle_density"] = rep.triangle_density;
    emit_json(j, o.out);
}

// --- linegraph ------------------------------------------------------------------

struct LineGraphOpts {
    std::string graph, out;
    std::string format = "json";
};

void run_linegraph(const LineGraphOpts& o) {
    check_format(o.format);
    GraphSpec gs = parse_graph_spec(o.graph);
    occsim::LineGraphResult lg = occsim::line_graph(gs.graph);
    if (o.format == "csv") {  // the edge-list text format, ready to feed back in
        emit(occsim::serialize_edge_list(lg.graph), o.out);
        return;
    }
    ordered_json j;
    j["command"] = "linegraph";
    j["host"] = graph_echo(gs);
    j["vertices"] = lg.graph.vertex_count();
    j["edge_count"] = lg.graph.edge_count();
    ordered_json edges = ordered_json::array();
    for (const auto& [u, v] : lg.graph.edges()) edges.push_back(ordered_json::array({u, v}));
    j["edges"] = std::move(edges);
    ordered_json vertex_edges = ordered_json::array();
    for (const auto& [a, b] : lg.vertex_edges) {
        vertex_edges.push_back(ordered_json::array({a, b}));
    }
    j["vertex_edges"] = std::move(vertex_edges);
    emit_json(j, o.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"occupancy-process simulator, bound calculator, and experiment driver"};
    app.require_subcommand(1);

    SimulateOpts sim;
    auto* sim_cmd = app.add_subcommand("simulate", "run stochastic + companion trajectories");
    sim_cmd->add_option("--graph", sim.graph, "edge-list path or gen:<spec>")->required();
    sim_cmd->add_option("--f", sim.f, "occupied-flip function spec")->required();
    sim_cmd->add_option("--g", sim.g, "empty-flip function spec")->required();
    sim_cmd->add_option("--init", sim.init, "initial state spec");
    sim_cmd->add_option("--steps", sim.steps, "time horizon");
    sim_cmd->add_option("--replicas", sim.replicas, "stochastic replicas");
    sim_cmd->add_option("--seed", sim.seed, "master seed");
    sim_cmd->add_option("--format", sim.format, "json or csv");
    sim_cmd->add_option("--out", sim.out, "output path (default stdout)");
    sim_cmd->callback([&] { run_simulate(sim); });

    BoundOpts bnd;
    auto* bnd_cmd = app.add_subcommand("bound", "evaluate a deviation bound certificate");
    bnd_cmd->add_option("--kind", bnd.kind,
                        "walk | min-degree | polynomial | mean-gap | diagonal")
        ->required();
    bnd_cmd->add_option("--graph", bnd.graph, "edge-list path or gen:<spec>");
    bnd_cmd->add_option("--f", bnd.f, "occupied-flip function spec");
    bnd_cmd->add_option("--g", bnd.g, "empty-flip function spec");
    bnd_cmd->add_option("--lipschitz", bnd.lipschitz, "override the pair's Lipschitz constant");
    bnd_cmd->add_option("--vertex", bnd.vertex, "walk source vertex");
    bnd_cmd->add_option("--delta", bnd.delta, "explicit min degree (min-degree kind)");
    bnd_cmd->add_option("--degree", bnd.degree, "polynomial degree (polynomial kind)");
    bnd_cmd->add_option("--lambda", bnd.lambda, "vertex-mass sum cap (polynomial kind)");
    bnd_cmd->add_option("--rho", bnd.rho, "vertex-mass l2 cap (polynomial kind)");
    bnd_cmd->add_option("--density", bnd.density, "initial density p (diagonal kind)");
    bnd_cmd->add_option("--eps", bnd.eps, "neighborhood slack (diagonal kind)");
    bnd_cmd->add_option("--steps", bnd.steps, "time horizon");
    bnd_cmd->add_option("--format", bnd.format, "json or csv");
    bnd_cmd->add_option("--out", bnd.out, "output path (default stdout)");
    bnd_cmd->callback([&] { run_bound(bnd); });

    OracleOpts orc;
    auto* orc_cmd = app.add_subcommand("oracle", "exact distribution chain on small graphs");
    orc_cmd->add_option("--graph", orc.graph, "edge-list path or gen:<spec> (<= 20 vertices)")
        ->required();
    orc_cmd->add_option("--f", orc.f, "occupied-flip function spec")->required();
    orc_cmd->add_option("--g", orc.g, "empty-flip function spec")->required();
    orc_cmd->add_option("--init", orc.init, "initial state spec");
    orc_cmd->add_option("--steps", orc.steps, "time horizon");
    orc_cmd->add_option("--seed", orc.seed, "master seed (bernoulli init)");
    orc_cmd->add_option("--format", orc.format, "json or csv");
    orc_cmd->add_option("--out", orc.out, "output path (default stdout)");
    orc_cmd->callback([&] { run_oracle(orc); });

    DeviationOpts dev;
    auto* dev_cmd = app.add_subcommand("deviation", "Monte Carlo deviation estimate vs bound");
    dev_cmd->add_option("--graph", dev.graph, "edge-list path or gen:<spec>")->required();
    dev_cmd->add_option("--f", dev.f, "occupied-flip function spec")->required();
    dev_cmd->add_option("--g", dev.g, "empty-flip function spec")->required();
    dev_cmd->add_option("--init", dev.init, "initial state spec");
    dev_cmd->add_option("--vertex", dev.vertex, "neighborhood-average observable at this vertex");
    dev_cmd->add_option("--motif", dev.motif,
                        "motif-density observable (needs gen:line-complete host)");
    dev_cmd->add_option("--steps", dev.steps, "measurement time");
    dev_cmd->add_option("--replicas", dev.replicas, "stochastic replicas");
    dev_cmd->add_option("--seed", dev.seed, "master seed");
    dev_cmd->add_option("--format", dev.format, "json or csv");
    dev_cmd->add_option("--out", dev.out, "output path (default stdout)");
    dev_cmd->callback([&] { run_deviation(dev); });

    ScalingDegreeOpts sdg;
    auto* sdg_cmd = app.add_subcommand("scaling-degree", "deviation vs min degree, log-log fit");
    sdg_cmd->add_option("--family", sdg.family, "complete | cycle-power")->required();
    sdg_cmd->add_option("--sizes", sdg.sizes, "size parameters (>= 4, increasing)")
        ->required()
        ->delimiter(',');
    sdg_cmd->add_option("--f", sdg.f, "occupied-flip function spec")->required();
    sdg_cmd->add_option("--g", sdg.g, "empty-flip function spec")->required();
    sdg_cmd->add_option("--steps", sdg.steps, "measurement time");
    sdg_cmd->add_option("--replicas", sdg.replicas, "replicas per size");
    sdg_cmd->add_option("--seed", sdg.seed, "master seed");
    sdg_cmd->add_option("--format", sdg.format, "json or csv");
    sdg_cmd->add_option("--out", sdg.out, "output path (default stdout)");
    sdg_cmd->callback([&] { run_scaling_degree(sdg); });

    ScalingHomOpts shm;
    auto* shm_cmd =
        app.add_subcommand("scaling-hom", "motif-density deviation vs host size, log-log fit");
    shm_cmd->add_option("--motif", shm.motif, "edge | wedge | triangle | p3 | c4 | k4");
    shm_cmd->add_option("--sizes", shm.sizes, "host sizes n (>= 4 values, increasing)")
        ->required()
        ->delimiter(',');
    shm_cmd->add_option("--f", shm.f, "occupied-flip function spec")->required();
    shm_cmd->add_option("--g", shm.g, "empty-flip function spec")->required();
    shm_cmd->add_option("--density", shm.density, "initial edge density p");
    shm_cmd->add_option("--steps", shm.steps, "measurement time");
    shm_cmd->add_option("--replicas", shm.replicas, "replicas per size");
    shm_cmd->add_option("--seed", shm.seed, "master seed");
    shm_cmd->add_option("--format", shm.format, "json or csv");
    shm_cmd->add_option("--out", shm.out, "output path (default stdout)");
    shm_cmd->callback([&] { run_scaling_hom(shm); });

    DiagOpts dia;
    auto* dia_cmd =
        app.add_subcommand("diag", "deterministic trajectory vs diagonal orbit on line graphs");
    dia_cmd->add_option("--host-n", dia.host_n, "complete-graph host size (>= 3)");
    dia_cmd->add_option("--f", dia.f, "occupied-flip function spec")->required();
    dia_cmd->add_option("--g", dia.g, "empty-flip function spec")->required();
    dia_cmd->add_option("--density", dia.density, "initial density p");
    dia_cmd->add_option("--steps", dia.steps, "time horizon");
    dia_cmd->add_option("--seed", dia.seed, "master seed");
    dia_cmd->add_option("--format", dia.format, "json or csv");
    dia_cmd->add_option("--out", dia.out, "output path (default stdout)");
    dia_cmd->callback([&] { run_diag(dia); });

    ChaosOpts cha;
    auto* cha_cmd = app.add_subcommand("chaos", "logistic(4) edge process time series");
    cha_cmd->add_option("--host-n", cha.host_n, "complete-graph host size (>= 3)");
    cha_cmd->add_option("--density", cha.density, "initial density p");
    cha_cmd->add_option("--steps", cha.steps, "time horizon");
    cha_cmd->add_option("--seed", cha.seed, "master seed");
    cha_cmd->add_option("--format", cha.format, "json or csv");
    cha_cmd->add_option("--out", cha.out, "output path (default stdout)");
    cha_cmd->callback([&] { run_chaos(cha); });

    LineGraphOpts lng;
    auto* lng_cmd = app.add_subcommand("linegraph", "emit the line graph of a host graph");
    lng_cmd->add_option("--graph", lng.graph, "edge-list path or gen:<spec>")->required();
    lng_cmd->add_option("--format", lng.format, "json, or csv for edge-list text");
    lng_cmd->add_option("--out", lng.out, "output path (default stdout)");
    lng_cmd->callback([&] { run_linegraph(lng); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const occsim::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const occsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
