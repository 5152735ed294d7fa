#pragma once

#include <cstdint>
#include <random>

namespace occsim {

// Deterministic random stream addressed by (master_seed, stream_index).
//
// The generator seed is derived with a splitmix64-style finalizer so that
// nearby stream indices decorrelate. Replica r of a run always owns stream r;
// auxiliary consumers (initial-state sampling, graph sampling) use reserved
// indices in the upper half of the index space so they can never collide with
// a replica. Doubles are built from the top 53 bits of the raw output, which
// keeps every draw bit-identical across platforms and worker schedules.
class RngStream {
public:
    // Reserved stream for sampling initial states (bernoulli:p).
    static constexpr std::uint64_t kInitStateStream = 1ull << 63;
    // Reserved stream for sampling random graphs.
    static constexpr std::uint64_t kGraphStream = (1ull << 63) + 1;

    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : gen_(derive_seed(master_seed, stream_index)) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // True with probability p (p <= 0 never, p >= 1 always).
    bool next_bernoulli(double p) { return next_double() < p; }

    static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
        return mix(mix(master_seed) ^ mix(stream_index + 0x9E3779B97F4A7C15ull));
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
};

}  // namespace occsim
