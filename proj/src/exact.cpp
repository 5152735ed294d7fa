#include "occsim/exact.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "occsim/errors.hpp"

namespace occsim {

namespace {

void check_exact_size(int n) {
    if (n < 1) throw ArgumentError("exact distribution needs at least one vertex");
    if (n > kMaxExactVertices) {
        throw CapacityError("exact chain distribution supports at most " +
                            std::to_string(kMaxExactVertices) + " vertices, got " +
                            std::to_string(n));
    }
}

void check_distribution(const ChainDistribution& dist) {
    check_exact_size(dist.vertex_count);
    if (dist.probs.size() != (1ull << dist.vertex_count)) {
        throw ArgumentError("distribution has " + std::to_string(dist.probs.size()) +
                            " entries; expected 2^" + std::to_string(dist.vertex_count));
    }
}

// Bitmasks of each vertex's neighborhood, plus 1/degree.
struct NeighborMasks {
    std::vector<std::uint32_t> mask;
    std::vector<double> inv_degree;
};

NeighborMasks neighbor_masks(const Graph& g) {
    NeighborMasks nm;
    int n = g.vertex_count();
    nm.mask.assign(static_cast<std::size_t>(n), 0);
    nm.inv_degree.assign(static_cast<std::size_t>(n), 0.0);
    for (int v = 0; v < n; ++v) {
        if (g.degree(v) == 0) {
            throw ValidationError("vertex " + std::to_string(v) +
                                  " has no neighbors; neighborhood averages are undefined");
        }
        std::uint32_t m = 0;
        for (int w : g.neighbors(v)) m |= (1u << w);
        nm.mask[static_cast<std::size_t>(v)] = m;
        nm.inv_degree[static_cast<std::size_t>(v)] = 1.0 / static_cast<double>(g.degree(v));
    }
    return nm;
}

}  // namespace

ChainDistribution point_mass(const StateVector& x) {
    check_exact_size(x.size());
    ChainDistribution dist;
    dist.vertex_count = x.size();
    dist.probs.assign(1ull << x.size(), 0.0);
    std::uint32_t mask = 0;
    for (int v = 0; v < x.size(); ++v) {
        if (x.get(v)) mask |= (1u << v);
    }
    dist.probs[mask] = 1.0;
    return dist;
}

ChainDistribution exact_step(const Graph& g, const InteractionPair& pair,
                             const ChainDistribution& dist) {
    check_distribution(dist);
    int n = g.vertex_count();
    if (n != dist.vertex_count) {
        throw ArgumentError("distribution is over " + std::to_string(dist.vertex_count) +
                            " vertices but the graph has " + std::to_string(n));
    }
    NeighborMasks nm = neighbor_masks(g);

    ChainDistribution out;
    out.vertex_count = n;
    out.probs.assign(1ull << n, 0.0);

    std::size_t states = 1ull << n;
    std::vector<double> cur(states), next(states);
    // Deterministic accumulation order: sources ascending, vertices
    // ascending, targets ascending.
    for (std::size_t source = 0; source < states; ++source) {
        double mass = dist.probs[source];
        if (mass == 0.0) continue;
        auto s = static_cast<std::uint32_t>(source);
        // Tensor-product DP over vertices: after processing vertex v, cur[j]
        // is the probability that the next state restricted to bits 0..v
        // equals j, conditional on the source state.
        cur[0] = mass;
        std::size_t width = 1;
        for (int v = 0; v < n; ++v) {
            double avg = static_cast<double>(std::popcount(s & nm.mask[static_cast<std::size_t>(v)])) *
                         nm.inv_degree[static_cast<std::size_t>(v)];
            double occupied = (s >> v) & 1u;
            double p_one = gamma(pair, occupied, avg);
            std::size_t bit = width;  // 1 << v
            for (std::size_t j = 0; j < width; ++j) {
                next[j] = cur[j] * (1.0 - p_one);
                next[j | bit] = cur[j] * p_one;
            }
            width <<= 1;
            cur.swap(next);
        }
        for (std::size_t target = 0; target < states; ++target) out.probs[target] += cur[target];
    }
    return out;
}

std::vector<ChainDistribution> exact_chain(const Graph& g, const InteractionPair& pair,
                                           const ChainDistribution& dist0, int steps) {
    if (steps < 0) throw ArgumentError("step count must be >= 0");
    std::vector<ChainDistribution> chain;
    chain.reserve(static_cast<std::size_t>(steps) + 1);
    chain.push_back(dist0);
    for (int t = 0; t < steps; ++t) chain.push_back(exact_step(g, pair, chain.back()));
    return chain;
}

double exact_vertex_expectation(const ChainDistribution& dist, int v) {
    check_distribution(dist);
    if (v < 0 || v >= dist.vertex_count) {
        throw ArgumentError("vertex " + std::to_string(v) + " out of range");
    }
    double total = 0.0;
    for (std::size_t s = 0; s < dist.probs.size(); ++s) {
        if ((s >> v) & 1u) total += dist.probs[s];
    }
    return total;
}

DensityVector exact_mean(const ChainDistribution& dist) {
    check_distribution(dist);
    DensityVector mean(static_cast<std::size_t>(dist.vertex_count), 0.0);
    for (std::size_t s = 0; s < dist.probs.size(); ++s) {
        double mass = dist.probs[s];
        if (mass == 0.0) continue;
        auto bits = static_cast<std::uint32_t>(s);
        while (bits != 0) {
            int v = std::countr_zero(bits);
            mean[static_cast<std::size_t>(v)] += mass;
            bits &= bits - 1;
        }
    }
    return mean;
}

double polynomial_deviation(const ChainDistribution& dist, const Polynomial& p, double ref) {
    check_distribution(dist);
    if (p.nvars() != dist.vertex_count) {
        throw ArgumentError("polynomial is over " + std::to_string(p.nvars()) +
                            " variables but the distribution has " +
                            std::to_string(dist.vertex_count) + " vertices");
    }
    std::vector<std::uint32_t> term_masks;
    term_masks.reserve(p.term_vertices().size());
    for (const auto& vs : p.term_vertices()) {
        std::uint32_t m = 0;
        for (int v : vs) m |= (1u << v);
        term_masks.push_back(m);
    }
    const auto& coeffs = p.coefficients();
    double total = 0.0;
    for (std::size_t s = 0; s < dist.probs.size(); ++s) {
        double mass = dist.probs[s];
        if (mass == 0.0) continue;
        auto bits = static_cast<std::uint32_t>(s);
        double value = 0.0;
        for (std::size_t i = 0; i < term_masks.size(); ++i) {
            if ((bits & term_masks[i]) == term_masks[i]) value += coeffs[i];
        }
        total += mass * std::abs(value - ref);
    }
    return total;
}

double neighborhood_deviation(const Graph& g, const ChainDistribution& dist, int v, double ref) {
    check_distribution(dist);
    if (g.vertex_count() != dist.vertex_count) {
        throw ArgumentError("distribution is over " + std::to_string(dist.vertex_count) +
                            " vertices but the graph has " + std::to_string(g.vertex_count()));
    }
    g.check_vertex(v);
    if (g.degree(v) == 0) {
        throw ValidationError("vertex " + std::to_string(v) +
                              " has no neighbors; neighborhood averages are undefined");
    }
    std::uint32_t mask = 0;
    for (int w : g.neighbors(v)) mask |= (1u << w);
    double inv_deg = 1.0 / static_cast<double>(g.degree(v));
    double total = 0.0;
    for (std::size_t s = 0; s < dist.probs.size(); ++s) {
        double mass = dist.probs[s];
        if (mass == 0.0) continue;
        double avg = static_cast<double>(std::popcount(static_cast<std::uint32_t>(s) & mask)) * inv_deg;
        total += mass * std::abs(avg - ref);
    }
    return total;
}

}  // namespace occsim
