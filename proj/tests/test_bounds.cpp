#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "occsim/bounds.hpp"
#include "occsim/errors.hpp"
#include "occsim/graph.hpp"
#include "occsim/interaction.hpp"
#include "test_util.hpp"

using namespace occsim;

TEST_CASE("binomial coefficients are exact across the supported range") {
    CHECK(binomial_coefficient(0, 0) == 1.0);
    CHECK(binomial_coefficient(5, 2) == 10.0);
    CHECK(binomial_coefficient(10, 4) == 210.0);
    CHECK(binomial_coefficient(60, 30) == 1.1826458156486142e17);
    CHECK(binomial_coefficient(60, 0) == 1.0);
    CHECK(binomial_coefficient(60, 60) == 1.0);
    CHECK_THROWS_AS(binomial_coefficient(61, 3), CapacityError);
    CHECK_THROWS_AS(binomial_coefficient(5, 6), ArgumentError);
    CHECK_THROWS_AS(binomial_coefficient(5, -1), ArgumentError);
}

TEST_CASE("walk deviation bound matches the frozen oracle value on a path") {
    Graph p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    WalkDistribution wd = walk_distribution(p4, 0, 2);
    CHECK(walk_deviation_bound(p4, wd, 0.7, 3) == doctest::Approx(4.903165401882454).epsilon(1e-12));
    CHECK(walk_deviation_bound(p4, wd, 0.7, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(walk_deviation_bound(p4, wd, 0.7, 0) == 0.0);

    CHECK_THROWS_AS(walk_deviation_bound(p4, wd, -0.5, 2), ArgumentError);
    CHECK_THROWS_AS(walk_deviation_bound(p4, wd, 0.7, 4), ArgumentError);  // rows 0..2 only
    CHECK_THROWS_AS(walk_deviation_bound(p4, wd, 0.7, -1), ArgumentError);
    WalkDistribution long_wd = walk_distribution(p4, 0, 61);
    CHECK_THROWS_AS(walk_deviation_bound(p4, long_wd, 0.7, 61), CapacityError);
}

TEST_CASE("min-degree bound: closed form, M=0 limit, and monotonicity") {
    CHECK(min_degree_deviation_bound(2, 0.7, 3) == doctest::Approx(3.9527269068328).epsilon(1e-12));
    CHECK(min_degree_deviation_bound(4, 0.0, 5) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(min_degree_deviation_bound(1, 1.0, 0) == 0.0);
    for (int t = 1; t < 10; ++t)
        CHECK(min_degree_deviation_bound(3, 0.8, t) < min_degree_deviation_bound(3, 0.8, t + 1));
    CHECK_THROWS_AS(min_degree_deviation_bound(0, 1.0, 2), ArgumentError);
    CHECK_THROWS_AS(min_degree_deviation_bound(2, -1.0, 2), ArgumentError);
}

TEST_CASE("min-degree bound dominates the walk bound and ties it on regular graphs") {
    RngStream rng(77, 1);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 4 + static_cast<int>(rng.next_u64() % 7);
        Graph g = testutil::random_connected_graph(n, 4, rng);
        int v = static_cast<int>(rng.next_u64() % n);
        WalkDistribution wd = walk_distribution(g, v, 5);
        for (double m_const : {0.0, 0.5, 1.3}) {
            for (int t = 0; t <= 5; ++t) {
                double walk = walk_deviation_bound(g, wd, m_const, t);
                double simple = min_degree_deviation_bound(g.min_degree(), m_const, t);
                CHECK(walk <= simple + 1e-12 * std::max(1.0, simple));
            }
        }
    }
    // Equality on a regular graph.
    Graph c8 = cycle_graph(8);
    WalkDistribution wd = walk_distribution(c8, 3, 7);
    for (int t = 0; t <= 7; ++t) {
        double walk = walk_deviation_bound(c8, wd, 1.5, t);
        double simple = min_degree_deviation_bound(2, 1.5, t);
        CHECK(walk == doctest::Approx(simple).epsilon(1e-12));
    }
}

TEST_CASE("polynomial deviation bound matches its geometric series") {
    CHECK(polynomial_deviation_bound(2, 1.5, 2.0, 0.8, 3) ==
          doctest::Approx(436.8).epsilon(1e-12));
    CHECK(polynomial_deviation_bound(1, 0.0, 0.0, 1.0, 2) == doctest::Approx(2.0 * (1.0 + 2.0)));
    CHECK(polynomial_deviation_bound(3, 2.0, 1.0, 0.5, 0) == 0.0);
    CHECK_THROWS_AS(polynomial_deviation_bound(0, 1.0, 1.0, 1.0, 2), ArgumentError);
    CHECK_THROWS_AS(polynomial_deviation_bound(1, 1.0, -1.0, 1.0, 2), ArgumentError);
    CHECK_THROWS_AS(polynomial_deviation_bound(1, 1.0, 1.0, -1.0, 2), ArgumentError);
}

TEST_CASE("expectation gap bound is the running sum of walk bounds") {
    Graph p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    WalkDistribution wd = walk_distribution(p4, 1, 3);
    CHECK(expectation_gap_bound(p4, wd, 0.5, 3) ==
          doctest::Approx(2.5480970388562794).epsilon(1e-12));
    CHECK(expectation_gap_bound(p4, wd, 0.5, 0) == 0.0);
    CHECK(expectation_gap_bound(p4, wd, 0.5, 1) == 0.0);  // walk bound at t=0 is 0
    double total = 0.0;
    for (int r = 0; r < 4; ++r) total += walk_deviation_bound(p4, wd, 0.5, r);
    CHECK(expectation_gap_bound(p4, wd, 0.5, 4) == doctest::Approx(total).epsilon(1e-15));
}

TEST_CASE("diagonal concentration bound: memoryless drift and confidence") {
    LineGraphResult lg = line_graph(complete_graph(5));  // 10 vertices, 6-regular
    InteractionPair pair = InteractionPair::make(FunctionSpec::logistic(4.0).complement(),
                                                 FunctionSpec::logistic(4.0));
    DiagonalBound wide = diagonal_concentration_bound(lg.graph, pair, 0.3, 1.0, 2);
    CHECK(wide.value == doctest::Approx(4.0 * std::exp(8.0)).epsilon(1e-12));
    CHECK(wide.probability == doctest::Approx(0.9998771157529335).epsilon(1e-12));
    CHECK_FALSE(wide.vacuous);

    DiagonalBound narrow = diagonal_concentration_bound(lg.graph, pair, 0.3, 0.1, 1);
    CHECK(narrow.value == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(narrow.probability == 0.0);  // 1 - 20 e^{-0.12} < 0 clamps
    CHECK(narrow.vacuous);

    // Non-memoryless pair picks up the q*theta drift term.
    InteractionPair plain =
        InteractionPair::make(FunctionSpec::constant(0.2), FunctionSpec::constant(0.3));
    DiagonalBound drift = diagonal_concentration_bound(lg.graph, plain, 0.4, 0.5, 1);
    CHECK(drift.value == doctest::Approx(0.6 * 0.5 + 0.0 * 0.5).epsilon(1e-12));  // M = 0

    CHECK_THROWS_AS(diagonal_concentration_bound(lg.graph, pair, 1.2, 0.1, 1), ArgumentError);
    CHECK_THROWS_AS(diagonal_concentration_bound(lg.graph, pair, 0.3, 0.0, 1), ArgumentError);
    CHECK_THROWS_AS(diagonal_concentration_bound(lg.graph, pair, 0.3, 0.1, 0), ArgumentError);
    Graph lonely = Graph::from_edges(3, {{0, 1}});
    CHECK_THROWS_AS(diagonal_concentration_bound(lonely, pair, 0.3, 0.1, 1), ValidationError);
}

TEST_CASE("diagonal distance is the sup gap to the constant vector") {
    std::vector<double> x = {0.2, 0.5, 0.45};
    CHECK(diagonal_distance(x, 0.5) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(diagonal_distance(x, 0.0) == 0.5);
    std::vector<double> empty;
    CHECK(diagonal_distance(empty, 0.5) == 0.0);
    CHECK_THROWS_AS(diagonal_distance(x, 1.5), ArgumentError);
}

TEST_CASE("bounds grow monotonically in t and M") {
    Graph k6 = complete_graph(6);
    WalkDistribution wd = walk_distribution(k6, 0, 9);
    for (int t = 0; t < 9; ++t)
        CHECK(walk_deviation_bound(k6, wd, 1.0, t) < walk_deviation_bound(k6, wd, 1.0, t + 1));
    CHECK(walk_deviation_bound(k6, wd, 0.5, 5) < walk_deviation_bound(k6, wd, 1.5, 5));
    for (int t = 1; t < 6; ++t)
        CHECK(polynomial_deviation_bound(2, 1.0, 1.5, 1.0, t) <
              polynomial_deviation_bound(2, 1.0, 1.5, 1.0, t + 1));
}
