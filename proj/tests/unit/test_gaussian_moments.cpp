#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "saddle_squeeze/gaussian_moments.hpp"

using namespace saddle_squeeze;
using Catch::Approx;

TEST_CASE("double factorial", "[gaussian_moments]") {
    REQUIRE(double_factorial(-1) == 1.0);
    REQUIRE(double_factorial(0) == 1.0);
    REQUIRE(double_factorial(1) == 1.0);
    REQUIRE(double_factorial(2) == 2.0);
    REQUIRE(double_factorial(5) == 15.0);
    REQUIRE(double_factorial(9) == 945.0);
    REQUIRE_THROWS_AS(double_factorial(-2), std::domain_error);

    SECTION("log-space path above k = 150") {
        REQUIRE(double_factorial(151) == Approx(9.2046856051003574e132).epsilon(1e-11));
        REQUIRE(double_factorial(200) == Approx(1.1830503302454486e188).epsilon(1e-11));
        // 301!! ~ 1.13e309 exceeds double range; the log-space form overflows
        // honestly instead of poisoning the product midway.
        REQUIRE(std::isinf(double_factorial(301)));
    }
}

TEST_CASE("wick moments", "[gaussian_moments]") {
    SECTION("second moments reproduce the covariance entries exactly") {
        for (double s : {-1.5, 0.0, 0.8, 2.0}) {
            const SqueezedState state(s, 1.0);
            const BathCovariance cov = covariance(state);
            REQUIRE(wick_moment(state, {1, 0}) == cov.var_q);
            REQUIRE(wick_moment(state, {0, 1}) == cov.var_p);
        }
    }
    SECTION("vacuum fourth moment <q^4> = 3 (hbar/2)^2") {
        REQUIRE(wick_moment(SqueezedState(0.0, 1.0), {2, 0}) == 0.75);
    }
    SECTION("independence gives <q^2 p^2> = var_q var_p = (hbar/2)^2") {
        REQUIRE(wick_moment(SqueezedState(1.0, 1.0), {1, 1}) == 0.25);
        REQUIRE(wick_moment(SqueezedState(2.0, 3.0), {1, 1}) == Approx(2.25).epsilon(1e-15));
    }
    SECTION("odd exponents short-circuit to zero") {
        const SqueezedState state(1.0, 1.0);
        REQUIRE(gaussian_moment(state, 1, 0) == 0.0);
        REQUIRE(gaussian_moment(state, 2, 3) == 0.0);
        REQUIRE(gaussian_moment(state, 5, 5) == 0.0);
        REQUIRE(gaussian_moment(state, 4, 2) == wick_moment(state, {2, 1}));
    }
    SECTION("invalid orders") {
        REQUIRE_THROWS_AS(wick_moment(SqueezedState(0.0, 1.0), {-1, 0}), std::domain_error);
        REQUIRE_THROWS_AS(gaussian_moment(SqueezedState(0.0, 1.0), -2, 0), std::domain_error);
    }
}

TEST_CASE("bath action power moments", "[gaussian_moments]") {
    SECTION("normalization at n = 0") {
        REQUIRE(bath_action_power_moment(SqueezedState(1.7, 1.0), 0) == 1.0);
    }
    SECTION("n = 1 equals the closed-form expected action") {
        for (double s : {0.0, 0.3, 1.0, 2.5}) {
            const SqueezedState state(s, 1.0);
            REQUIRE(bath_action_power_moment(state, 1) ==
                    Approx(expected_bath_action(state)).epsilon(1e-14));
        }
    }
    SECTION("n = 2 closed form hbar^2 (3 e^{-4s} + 2 + 3 e^{4s})/16") {
        REQUIRE(bath_action_power_moment(SqueezedState(0.0, 1.0), 2) == 0.5);
        REQUIRE(bath_action_power_moment(SqueezedState(1.0, 1.0), 2) ==
                Approx(10.365587313506182).epsilon(1e-14));
        for (double s = 0.0; s <= 3.0; s += 0.25) {
            const double want = (3.0 * std::exp(-4.0 * s) + 2.0 + 3.0 * std::exp(4.0 * s)) / 16.0;
            REQUIRE(bath_action_power_moment(SqueezedState(s, 1.0), 2) ==
                    Approx(want).epsilon(1e-13));
        }
    }
    SECTION("Jensen ordering <J2^2> >= <J2>^2") {
        for (double s = -3.0; s <= 3.0; s += 0.5) {
            const SqueezedState state(s, 1.0);
            const double mean = bath_action_power_moment(state, 1);
            REQUIRE(bath_action_power_moment(state, 2) >= mean * mean);
        }
    }
    SECTION("domain errors") {
        REQUIRE_THROWS_AS(bath_action_power_moment(SqueezedState(0.0, 1.0), -1),
                          std::domain_error);
        REQUIRE_THROWS_AS(bath_action_power_moment(SqueezedState(0.0, 1.0), 31),
                          std::domain_error);
    }
}
