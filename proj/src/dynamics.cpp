#include "occsim/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "occsim/errors.hpp"

namespace occsim {

namespace {

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

void check_state_size(const Graph& g, int state_size) {
    if (state_size != g.vertex_count())
        throw ArgumentError("state length " + std::to_string(state_size) +
                            " does not match vertex count " + std::to_string(g.vertex_count()));
}

void check_positive_degrees(const Graph& g) {
    if (g.vertex_count() > 0 && g.min_degree() < 1)
        throw ValidationError("dynamics need every vertex to have at least one neighbor");
}

}  // namespace

int StateVector::popcount() const {
    int total = 0;
    for (std::uint64_t b : blocks_) total += std::popcount(b);
    return total;
}

DensityVector to_density(const StateVector& s) {
    DensityVector x(s.size());
    for (int v = 0; v < s.size(); ++v) x[v] = s.get(v) ? 1.0 : 0.0;
    return x;
}

double neighborhood_average(const Graph& g, const StateVector& s, int v) {
    g.check_vertex(v);
    check_state_size(g, s.size());
    int d = g.degree(v);
    if (d == 0) throw ValidationError("vertex " + std::to_string(v) + " has no neighbors");
    int on = 0;
    for (int w : g.neighbors(v)) on += s.get(w);
    return static_cast<double>(on) / d;
}

double neighborhood_average(const Graph& g, std::span<const double> x, int v) {
    g.check_vertex(v);
    check_state_size(g, static_cast<int>(x.size()));
    int d = g.degree(v);
    if (d == 0) throw ValidationError("vertex " + std::to_string(v) + " has no neighbors");
    double sum = 0.0;
    for (int w : g.neighbors(v)) sum += x[w];
    return sum / d;
}

DensityVector neighborhood_averages(const Graph& g, const StateVector& s) {
    check_positive_degrees(g);
    check_state_size(g, s.size());
    DensityVector out(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        int on = 0;
        for (int w : g.neighbors(v)) on += s.get(w);
        out[v] = static_cast<double>(on) / g.degree(v);
    }
    return out;
}

DensityVector neighborhood_averages(const Graph& g, std::span<const double> x) {
    check_positive_degrees(g);
    check_state_size(g, static_cast<int>(x.size()));
    DensityVector out(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        double sum = 0.0;
        for (int w : g.neighbors(v)) sum += x[w];
        out[v] = sum / g.degree(v);
    }
    return out;
}

StateVector stochastic_step(const Graph& g, const InteractionPair& pair, const StateVector& s,
                            RngStream& rng) {
    check_positive_degrees(g);
    check_state_size(g, s.size());
    int n = g.vertex_count();
    StateVector out(n);
    for (int v = 0; v < n; ++v) {
        int on = 0;
        for (int w : g.neighbors(v)) on += s.get(w);
        double avg = static_cast<double>(on) / g.degree(v);
        bool occupied = s.get(v);
        double flip = occupied ? pair.f(avg) : pair.g(avg);
        bool next = rng.next_double() < flip ? !occupied : occupied;
        out.set(v, next);
    }
    return out;
}

DensityVector deterministic_step(const Graph& g, const InteractionPair& pair,
                                 std::span<const double> x) {
    check_positive_degrees(g);
    check_state_size(g, static_cast<int>(x.size()));
    int n = g.vertex_count();
    DensityVector out(n);
    for (int v = 0; v < n; ++v) {
        double sum = 0.0;
        for (int w : g.neighbors(v)) sum += x[w];
        double avg = sum / g.degree(v);
        out[v] = clamp01(x[v] * (1.0 - pair.f(avg)) + (1.0 - x[v]) * pair.g(avg));
    }
    return out;
}

TrajectoryEnsemble run_trajectories(const Graph& g, const InteractionPair& pair,
                                    const StateVector& x0, int steps, int replicas,
                                    std::uint64_t master_seed, std::uint64_t max_cells) {
    if (steps < 0) throw ArgumentError("step count must be non-negative");
    if (replicas < 1) throw ArgumentError("need at least one replica");
    check_positive_degrees(g);
    check_state_size(g, x0.size());
    std::uint64_t cells = static_cast<std::uint64_t>(g.vertex_count()) *
                          (static_cast<std::uint64_t>(steps) + 1) *
                          static_cast<std::uint64_t>(replicas);
    if (cells > max_cells)
        throw CapacityError("trajectory storage of " + std::to_string(cells) +
                            " cells exceeds the cap of " + std::to_string(max_cells));

    TrajectoryEnsemble ens;
    ens.deterministic.reserve(steps + 1);
    ens.deterministic.push_back(to_density(x0));
    for (int t = 0; t < steps; ++t)
        ens.deterministic.push_back(deterministic_step(g, pair, ens.deterministic.back()));

    ens.replicas.assign(replicas, {});
    parallel_for(replicas, [&](int r) {
        RngStream rng(master_seed, static_cast<std::uint64_t>(r));
        auto& traj = ens.replicas[r];
        traj.reserve(steps + 1);
        traj.push_back(x0);
        for (int t = 0; t < steps; ++t) traj.push_back(stochastic_step(g, pair, traj.back(), rng));
    });
    return ens;
}

StateVector parse_initial_state(std::string_view spec, int n, std::uint64_t master_seed) {
    if (n < 0) throw ArgumentError("vertex count must be non-negative");
    if (spec == "all0") return StateVector(n);
    if (spec == "all1") return StateVector::all_ones(n);
    if (spec.rfind("bernoulli:", 0) == 0) {
        std::string_view arg = spec.substr(10);
        double p = 0.0;
        auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), p);
        if (ec != std::errc() || ptr != arg.data() + arg.size())
            throw ValidationError("could not parse bernoulli probability from '" +
                                  std::string(arg) + "'");
        if (!(p >= 0.0 && p <= 1.0))
            throw ValidationError("bernoulli probability must lie in [0,1]");
        RngStream rng(master_seed, RngStream::kInitStateStream);
        StateVector s(n);
        for (int v = 0; v < n; ++v) s.set(v, rng.next_bernoulli(p));
        return s;
    }
    if (spec.rfind("file:", 0) == 0) {
        std::string path(spec.substr(5));
        std::ifstream in(path);
        if (!in) throw ValidationError("could not open initial-state file '" + path + "'");
        StateVector s(n);
        std::string line;
        int line_no = 0;
        int v = 0;
        while (std::getline(in, line)) {
            ++line_no;
            // Allow trailing carriage returns and surrounding blanks.
            size_t a = line.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            size_t b = line.find_last_not_of(" \t\r");
            std::string token = line.substr(a, b - a + 1);
            if (token != "0" && token != "1")
                throw ParseError("initial-state entries must be 0 or 1", line_no);
            if (v >= n) throw ValidationError("initial-state file has more than " +
                                              std::to_string(n) + " entries");
            s.set(v++, token == "1");
        }
        if (v != n)
            throw ValidationError("initial-state file has " + std::to_string(v) +
                                  " entries, expected " + std::to_string(n));
        return s;
    }
    throw ValidationError("unknown initial-state spec '" + std::string(spec) + "'");
}

int worker_count() {
    if (const char* env = std::getenv("OCCSIM_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<int>(std::min(v, 256l));
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 256u));
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        // Contiguous index ranges; every index writes only its own slots, so
        // the split never influences results.
        int lo = static_cast<int>(static_cast<long long>(n) * w / workers);
        int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
        pool.emplace_back([&, lo, hi] {
            try {
                for (int i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace occsim
