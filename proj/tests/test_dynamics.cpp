#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "occsim/dynamics.hpp"
#include "occsim/errors.hpp"
#include "occsim/graph.hpp"
#include "occsim/interaction.hpp"
#include "occsim/rng.hpp"
#include "test_util.hpp"

using namespace occsim;

namespace {

InteractionPair voter_pair() {
    return InteractionPair::make(FunctionSpec::parse("voter-f"), FunctionSpec::parse("voter-g"));
}

}  // namespace

TEST_CASE("state vector packs bits") {
    StateVector s(70);
    CHECK(s.size() == 70);
    CHECK(s.popcount() == 0);
    s.set(0, true);
    s.set(63, true);
    s.set(64, true);
    s.set(69, true);
    CHECK(s.get(63));
    CHECK(s.get(64));
    CHECK_FALSE(s.get(1));
    CHECK(s.popcount() == 4);
    s.set(63, false);
    CHECK(s.popcount() == 3);
    CHECK(StateVector::all_ones(70).popcount() == 70);

    StateVector a(3), b(3);
    a.set(1, true);
    b.set(1, true);
    CHECK(a == b);
    b.set(2, true);
    CHECK_FALSE(a == b);
}

TEST_CASE("neighborhood averages on a path") {
    Graph p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    StateVector s(4);
    s.set(0, true);
    s.set(2, true);
    CHECK(neighborhood_average(p4, s, 0) == 0.0);   // neighbor 1 is off
    CHECK(neighborhood_average(p4, s, 1) == 1.0);   // neighbors 0, 2 both on
    CHECK(neighborhood_average(p4, s, 3) == 1.0);   // neighbor 2 on
    DensityVector x = {0.2, 0.4, 0.6, 0.8};
    CHECK(neighborhood_average(p4, x, 1) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(neighborhood_average(p4, x, 2) == doctest::Approx(0.6).epsilon(1e-15));
    DensityVector bulk = neighborhood_averages(p4, x);
    CHECK(bulk[0] == 0.4);
    CHECK(bulk[3] == 0.6);

    Graph lonely = Graph::from_edges(3, {{0, 1}});
    StateVector t(3);
    CHECK_THROWS_AS(neighborhood_average(lonely, t, 2), ValidationError);
    CHECK_THROWS_AS(neighborhood_averages(lonely, t), ValidationError);
    CHECK_THROWS_AS(neighborhood_average(p4, StateVector(3), 0), ArgumentError);
}

TEST_CASE("voter pair on K2 swaps deterministically") {
    Graph k2 = complete_graph(2);
    InteractionPair pair = voter_pair();
    StateVector s(2);
    s.set(0, true);
    RngStream rng(1, 0);
    StateVector next = stochastic_step(k2, pair, s, rng);
    CHECK_FALSE(next.get(0));
    CHECK(next.get(1));
    StateVector again = stochastic_step(k2, pair, next, rng);
    CHECK(again.get(0));
    CHECK_FALSE(again.get(1));

    // The deterministic companion swaps identically.
    DensityVector x = to_density(s);
    DensityVector y = deterministic_step(k2, pair, x);
    CHECK(y[0] == 0.0);
    CHECK(y[1] == 1.0);
}

TEST_CASE("deterministic step matches the hand-computed mean update") {
    // f = const 0.2, g = 0.5y + 0.1 on the path 0-1-2 from (1,0,1).
    Graph p3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
    InteractionPair pair =
        InteractionPair::make(FunctionSpec::constant(0.2), FunctionSpec::affine(0.5, 0.1));
    DensityVector x = {1.0, 0.0, 1.0};
    DensityVector x1 = deterministic_step(p3, pair, x);
    CHECK(x1[0] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(x1[1] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(x1[2] == doctest::Approx(0.8).epsilon(1e-15));
    DensityVector x2 = deterministic_step(p3, pair, x1);
    CHECK(x2[0] == doctest::Approx(0.72).epsilon(1e-15));
    CHECK(x2[1] == doctest::Approx(0.68).epsilon(1e-15));
    CHECK(x2[2] == doctest::Approx(0.72).epsilon(1e-15));
}

TEST_CASE("stochastic step consumes one draw per vertex") {
    Graph c5 = cycle_graph(5);
    InteractionPair pair =
        InteractionPair::make(FunctionSpec::constant(0.0), FunctionSpec::constant(0.0));
    StateVector s(5);
    RngStream a(42, 3), b(42, 3);
    stochastic_step(c5, pair, s, a);  // frozen pair: flips impossible, draws still consumed
    for (int i = 0; i < 5; ++i) b.next_double();
    CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("frozen pair keeps the state fixed") {
    Graph c5 = cycle_graph(5);
    InteractionPair pair =
        InteractionPair::make(FunctionSpec::constant(0.0), FunctionSpec::constant(0.0));
    RngStream rng(7, 0);
    StateVector s(5);
    s.set(2, true);
    StateVector next = stochastic_step(c5, pair, s, rng);
    CHECK(next == s);

    // f = g = 1 flips every vertex every step.
    InteractionPair flipper =
        InteractionPair::make(FunctionSpec::constant(1.0), FunctionSpec::constant(1.0));
    StateVector flipped = stochastic_step(c5, flipper, s, rng);
    for (int v = 0; v < 5; ++v) CHECK(flipped.get(v) == !s.get(v));
}

TEST_CASE("trajectory ensembles are reproducible and replica-independent") {
    Graph c8 = cycle_graph(8);
    InteractionPair pair = InteractionPair::make(FunctionSpec::logistic(4.0).complement(),
                                                 FunctionSpec::logistic(4.0));
    StateVector x0 = parse_initial_state("bernoulli:0.4", 8, 11);
    TrajectoryEnsemble a = run_trajectories(c8, pair, x0, 4, 6, 11);
    TrajectoryEnsemble b = run_trajectories(c8, pair, x0, 4, 6, 11);
    REQUIRE(a.replicas.size() == 6);
    REQUIRE(a.deterministic.size() == 5);
    for (int r = 0; r < 6; ++r)
        for (int t = 0; t <= 4; ++t) CHECK(a.replicas[r][t] == b.replicas[r][t]);

    // Replica r is stream r: running fewer replicas reproduces a prefix.
    TrajectoryEnsemble c = run_trajectories(c8, pair, x0, 4, 3, 11);
    for (int r = 0; r < 3; ++r)
        for (int t = 0; t <= 4; ++t) CHECK(c.replicas[r][t] == a.replicas[r][t]);

    CHECK_THROWS_AS(run_trajectories(c8, pair, x0, 4, 6, 11, 10), CapacityError);
    CHECK_THROWS_AS(run_trajectories(c8, pair, StateVector(5), 1, 2, 11), ArgumentError);
}

TEST_CASE("ensemble output is identical across worker counts") {
    Graph c8 = cycle_graph(8);
    InteractionPair pair = voter_pair();
    StateVector x0 = parse_initial_state("bernoulli:0.5", 8, 5);

    char saved[64] = {0};
    if (const char* env = std::getenv("OCCSIM_WORKERS")) std::snprintf(saved, sizeof saved, "%s", env);
    setenv("OCCSIM_WORKERS", "1", 1);
    TrajectoryEnsemble serial = run_trajectories(c8, pair, x0, 3, 7, 5);
    setenv("OCCSIM_WORKERS", "4", 1);
    TrajectoryEnsemble parallel = run_trajectories(c8, pair, x0, 3, 7, 5);
    if (saved[0])
        setenv("OCCSIM_WORKERS", saved, 1);
    else
        unsetenv("OCCSIM_WORKERS");

    for (int r = 0; r < 7; ++r)
        for (int t = 0; t <= 3; ++t) CHECK(serial.replicas[r][t] == parallel.replicas[r][t]);
}

TEST_CASE("initial state specs") {
    CHECK(parse_initial_state("all0", 5, 1).popcount() == 0);
    CHECK(parse_initial_state("all1", 5, 1).popcount() == 5);
    StateVector a = parse_initial_state("bernoulli:0.5", 40, 9);
    StateVector b = parse_initial_state("bernoulli:0.5", 40, 9);
    CHECK(a == b);
    CHECK(parse_initial_state("bernoulli:0", 40, 9).popcount() == 0);
    CHECK(parse_initial_state("bernoulli:1", 40, 9).popcount() == 40);
    CHECK_THROWS_AS(parse_initial_state("bernoulli:1.5", 5, 1), ValidationError);
    CHECK_THROWS_AS(parse_initial_state("mystery", 5, 1), ValidationError);

    std::string path = "occsim_test_init.txt";
    {
        std::ofstream out(path);
        out << "1\n0\n 1 \n0\n1\n";
    }
    StateVector s = parse_initial_state("file:" + path, 5, 1);
    CHECK(s.get(0));
    CHECK_FALSE(s.get(1));
    CHECK(s.get(2));
    CHECK(s.get(4));
    CHECK_THROWS_AS(parse_initial_state("file:" + path, 6, 1), ValidationError);
    CHECK_THROWS_AS(parse_initial_state("file:" + path, 4, 1), ValidationError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(parse_initial_state("file:" + path, 5, 1), ValidationError);
}

TEST_CASE("rng streams are stable and decorrelated") {
    RngStream a(123, 0), b(123, 0), c(123, 1);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() != c.next_u64());
    double d = RngStream(9, 2).next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
    CHECK(RngStream(9, 2).next_double() == d);
    CHECK(RngStream::derive_seed(1, 2) != RngStream::derive_seed(2, 1));
}
