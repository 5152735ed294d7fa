#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "occsim/graph.hpp"
#include "occsim/interaction.hpp"
#include "occsim/rng.hpp"

namespace occsim {

// Bit-packed binary occupancy state over a fixed vertex set.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(int n) : size_(n), blocks_((n + 63) / 64, 0) {}
    static StateVector all_ones(int n) {
        StateVector s(n);
        for (int v = 0; v < n; ++v) s.set(v, true);
        return s;
    }

    int size() const { return size_; }
    bool get(int v) const { return (blocks_[v >> 6] >> (v & 63)) & 1u; }
    void set(int v, bool value) {
        std::uint64_t bit = 1ull << (v & 63);
        if (value)
            blocks_[v >> 6] |= bit;
        else
            blocks_[v >> 6] &= ~bit;
    }
    int popcount() const;
    bool operator==(const StateVector&) const = default;

private:
    int size_ = 0;
    std::vector<std::uint64_t> blocks_;
};

// Real-valued occupancy densities in [0,1]^V.
using DensityVector = std::vector<double>;

DensityVector to_density(const StateVector& s);

// Mean state over the neighbors of v; ValidationError if v has none.
double neighborhood_average(const Graph& g, const StateVector& s, int v);
double neighborhood_average(const Graph& g, std::span<const double> x, int v);

// All neighborhood averages in one pass.
DensityVector neighborhood_averages(const Graph& g, const StateVector& s);
DensityVector neighborhood_averages(const Graph& g, std::span<const double> x);

// One synchronous stochastic update: every vertex flips independently, an
// occupied vertex with probability f(average), an empty one with probability
// g(average), all averages taken in the pre-step state. Consumes exactly one
// uniform draw per vertex in vertex order.
StateVector stochastic_step(const Graph& g, const InteractionPair& pair, const StateVector& s,
                            RngStream& rng);

// One deterministic update x -> Gamma(x): component v becomes
// gamma(x_v, x_{N_v}) with all neighborhood averages from the pre-step state.
DensityVector deterministic_step(const Graph& g, const InteractionPair& pair,
                                 std::span<const double> x);

// Stochastic trajectories plus their shared deterministic companion, both
// started at the binary state x0. replicas[r][t] is replica r after t steps,
// simulated from stream (master_seed, r); deterministic[t] is the t-th
// iterate of the mean-update map.
struct TrajectoryEnsemble {
    std::vector<DensityVector> deterministic;           // [steps + 1]
    std::vector<std::vector<StateVector>> replicas;     // [replicas][steps + 1]
};

inline constexpr std::uint64_t kDefaultMaxCells = 1'000'000'000ull;

// Runs `replicas` independent stochastic trajectories for `steps` steps.
// |V| * (steps + 1) * replicas must stay within max_cells (CapacityError).
TrajectoryEnsemble run_trajectories(const Graph& g, const InteractionPair& pair,
                                    const StateVector& x0, int steps, int replicas,
                                    std::uint64_t master_seed,
                                    std::uint64_t max_cells = kDefaultMaxCells);

// Initial-state specs: "all0", "all1", "bernoulli:p" (sampled from the
// reserved init stream of master_seed), or "file:<path>" with one 0/1 per
// line (exactly n lines).
StateVector parse_initial_state(std::string_view spec, int n, std::uint64_t master_seed);

// Worker count for replica-parallel loops: OCCSIM_WORKERS when set (clamped
// to [1,256]), otherwise the hardware concurrency. Results never depend on
// it; replicas own result slots and reductions run in replica order.
int worker_count();

// Runs fn(i) for i in [0, n), split contiguously over worker_count() threads.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace occsim
