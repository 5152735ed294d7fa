#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "occsim/errors.hpp"
#include "occsim/interaction.hpp"

using namespace occsim;

TEST_CASE("constant and affine specs evaluate and validate") {
    FunctionSpec c = FunctionSpec::constant(0.3);
    CHECK(c(0.0) == 0.3);
    CHECK(c(1.0) == 0.3);
    CHECK(c.lipschitz() == 0.0);
    CHECK_THROWS_AS(FunctionSpec::constant(1.2), ArgumentError);
    CHECK_THROWS_AS(c(1.5), ArgumentError);

    FunctionSpec a = FunctionSpec::affine(0.5, 0.1);
    CHECK(a(0.0) == 0.1);
    CHECK(a(0.8) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(a.lipschitz() == 0.5);
    CHECK_THROWS_AS(FunctionSpec::affine(1.0, 0.5), ArgumentError);   // value 1.5 at y=1
    CHECK_THROWS_AS(FunctionSpec::affine(0.5, -0.1), ArgumentError);  // value -0.1 at y=0
}

TEST_CASE("logistic spec has exact Lipschitz constant r") {
    FunctionSpec l = FunctionSpec::logistic(4.0);
    CHECK(l(0.5) == 1.0);
    CHECK(l(0.0) == 0.0);
    CHECK(l(1.0) == 0.0);
    CHECK(l(0.25) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(l.lipschitz() == 4.0);
    CHECK_THROWS_AS(FunctionSpec::logistic(4.5), ArgumentError);
    CHECK_THROWS_AS(FunctionSpec::logistic(-0.1), ArgumentError);
}

TEST_CASE("piecewise linear interpolates breakpoints") {
    FunctionSpec pwl = FunctionSpec::piecewise_linear({{0.0, 0.1}, {0.4, 0.8}, {1.0, 0.2}});
    CHECK(pwl(0.0) == 0.1);
    CHECK(pwl(0.2) == doctest::Approx(0.45).epsilon(1e-15));
    CHECK(pwl(0.4) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(pwl(0.7) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pwl(1.0) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(pwl.lipschitz() == doctest::Approx(1.75).epsilon(1e-15));
    CHECK_THROWS_AS(FunctionSpec::piecewise_linear({{0.0, 0.5}}), ArgumentError);
    CHECK_THROWS_AS(FunctionSpec::piecewise_linear({{0.1, 0.5}, {1.0, 0.5}}), ArgumentError);
    CHECK_THROWS_AS(FunctionSpec::piecewise_linear({{0.0, 0.5}, {0.0, 0.6}, {1.0, 0.5}}),
                    ArgumentError);
    CHECK_THROWS_AS(FunctionSpec::piecewise_linear({{0.0, 0.5}, {1.0, 1.5}}), ArgumentError);
}

TEST_CASE("complement flips values and normalizes away from logistic") {
    FunctionSpec c = FunctionSpec::constant(0.3).complement();
    CHECK(c.kind() == FunctionSpec::Kind::kConstant);
    CHECK(c(0.7) == 0.7);

    FunctionSpec a = FunctionSpec::affine(0.5, 0.1).complement();
    CHECK(a.kind() == FunctionSpec::Kind::kAffine);
    CHECK(a(0.0) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(a(1.0) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(a.lipschitz() == 0.5);

    FunctionSpec l = FunctionSpec::logistic(4.0).complement();
    CHECK(l.kind() == FunctionSpec::Kind::kLogistic);
    CHECK(l.complemented());
    CHECK(l(0.5) == 0.0);
    CHECK(l(0.0) == 1.0);
    CHECK(l.complement()(0.25) == doctest::Approx(0.75).epsilon(1e-15));  // double complement

    FunctionSpec p = FunctionSpec::piecewise_linear({{0.0, 0.1}, {1.0, 0.9}}).complement();
    CHECK(p(0.0) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(p(1.0) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("text round trips and aliases") {
    for (const char* spec : {"constant:0.25", "affine:-1,1", "logistic:3.5",
                             "pwl:0,0.1;0.4,0.8;1,0.2", "1-logistic:4"}) {
        FunctionSpec s = FunctionSpec::parse(spec);
        FunctionSpec back = FunctionSpec::parse(s.to_text());
        CHECK(back.structurally_equal(s));
    }
    CHECK(FunctionSpec::parse("voter-f").structurally_equal(FunctionSpec::affine(-1.0, 1.0)));
    CHECK(FunctionSpec::parse("voter-g").structurally_equal(FunctionSpec::affine(1.0, 0.0)));
    CHECK(FunctionSpec::parse("1-constant:0.3")(0.5) == 0.7);
    CHECK_THROWS_AS(FunctionSpec::parse("spline:1"), ArgumentError);
    CHECK_THROWS_AS(FunctionSpec::parse("affine:1"), ArgumentError);
    CHECK_THROWS_AS(FunctionSpec::parse("constant:x"), ArgumentError);
}

TEST_CASE("pair classification: memoryless and voter") {
    InteractionPair voter =
        InteractionPair::make(FunctionSpec::parse("voter-f"), FunctionSpec::parse("voter-g"));
    CHECK(voter.memoryless);
    CHECK(voter.voter);
    CHECK(voter.lipschitz == 1.0);

    InteractionPair logistic_pair = InteractionPair::make(
        FunctionSpec::logistic(4.0).complement(), FunctionSpec::logistic(4.0));
    CHECK(logistic_pair.memoryless);
    CHECK_FALSE(logistic_pair.voter);
    CHECK(logistic_pair.lipschitz == 4.0);

    InteractionPair frozen =
        InteractionPair::make(FunctionSpec::constant(0.7), FunctionSpec::constant(0.3));
    CHECK(frozen.memoryless);  // 1 - 0.7 = 0.3
    CHECK_FALSE(frozen.voter);
    CHECK(frozen.lipschitz == 0.0);

    InteractionPair plain =
        InteractionPair::make(FunctionSpec::constant(0.2), FunctionSpec::constant(0.3));
    CHECK_FALSE(plain.memoryless);
}

TEST_CASE("gamma is the expected one-vertex mean update") {
    InteractionPair pair =
        InteractionPair::make(FunctionSpec::constant(0.2), FunctionSpec::affine(0.5, 0.1));
    CHECK(gamma(pair, 0.6, 0.5) == doctest::Approx(0.62).epsilon(1e-15));
    CHECK(gamma(pair, 1.0, 0.0) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(gamma(pair, 0.0, 1.0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK_THROWS_AS(gamma(pair, -0.1, 0.5), ArgumentError);
    CHECK_THROWS_AS(gamma(pair, 0.5, 1.1), ArgumentError);
}

TEST_CASE("gamma_tilde orbit reproduces the logistic map") {
    InteractionPair pair = InteractionPair::make(FunctionSpec::logistic(4.0).complement(),
                                                 FunctionSpec::logistic(4.0));
    std::vector<double> orbit = gamma_tilde_orbit(pair, 0.3, 4);
    REQUIRE(orbit.size() == 5);
    CHECK(orbit[0] == 0.3);
    CHECK(orbit[1] == doctest::Approx(0.84).epsilon(1e-12));
    CHECK(orbit[2] == doctest::Approx(0.5376).epsilon(1e-12));
    CHECK(orbit[3] == doctest::Approx(0.99434496).epsilon(1e-12));
    CHECK(orbit[4] == doctest::Approx(0.02249224209039382).epsilon(1e-9));

    // p = 0.5 hits the exact collapse orbit 0.5 -> 1 -> 0 -> 0.
    std::vector<double> collapse = gamma_tilde_orbit(pair, 0.5, 3);
    CHECK(collapse[1] == 1.0);
    CHECK(collapse[2] == 0.0);
    CHECK(collapse[3] == 0.0);
}

TEST_CASE("theta is exactly zero for memoryless pairs and |1-f-g| otherwise") {
    InteractionPair memoryless = InteractionPair::make(FunctionSpec::logistic(4.0).complement(),
                                                       FunctionSpec::logistic(4.0));
    CHECK(theta(memoryless, 0.3) == 0.0);
    CHECK(theta(memoryless, 0.77) == 0.0);

    InteractionPair plain =
        InteractionPair::make(FunctionSpec::constant(0.2), FunctionSpec::constant(0.3));
    CHECK(theta(plain, 0.4) == doctest::Approx(0.5).epsilon(1e-15));
}
