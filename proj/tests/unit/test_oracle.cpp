#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "saddle_squeeze/gaussian_moments.hpp"
#include "saddle_squeeze/oracle.hpp"
#include "saddle_squeeze/transmission.hpp"

using namespace saddle_squeeze;
using Catch::Approx;

TEST_CASE("gauss-hermite rule", "[oracle]") {
    SECTION("weights sum to sqrt(pi)") {
        for (int order : {1, 2, 5, 8, 16, 40}) {
            const oracle::GaussHermiteRule rule(order);
            double sum = 0.0;
            for (double w : rule.weights()) sum += w;
            REQUIRE(sum == Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
        }
    }
    SECTION("nodes are symmetric and sorted") {
        const oracle::GaussHermiteRule rule(9);
        for (int i = 0; i < 9; ++i) {
            REQUIRE(rule.nodes()[i] == -rule.nodes()[8 - i]);
            if (i > 0) REQUIRE(rule.nodes()[i] > rule.nodes()[i - 1]);
        }
        REQUIRE(rule.nodes()[4] == 0.0);
    }
    SECTION("monomials integrate exactly up to degree 2N-1") {
        for (int order : {2, 5, 8, 13}) {
            const oracle::GaussHermiteRule rule(order);
            for (int k = 0; 2 * k <= 2 * order - 1; ++k) {
                double sum = 0.0;
                for (int i = 0; i < order; ++i)
                    sum += rule.weights()[i] * detail::pow_int(rule.nodes()[i], 2 * k);
                const double want = std::sqrt(std::numbers::pi) *
                                    double_factorial(2L * k - 1) / detail::pow_int(2.0, k);
                REQUIRE(sum == Approx(want).epsilon(1e-12));
            }
        }
    }
    SECTION("order bounds") {
        REQUIRE_THROWS_AS(oracle::GaussHermiteRule(0), std::invalid_argument);
        REQUIRE_THROWS_AS(oracle::GaussHermiteRule(257), std::invalid_argument);
    }
}

TEST_CASE("quadrature bath moments", "[oracle]") {
    SECTION("vacuum <q^4> at order 8") {
        REQUIRE(oracle::quad_bath_moment(SqueezedState(0.0, 1.0), 4, 0, 8).value ==
                Approx(0.75).margin(1e-12));
    }
    SECTION("<q^2> recovers var_q at order 4 for any s") {
        for (double s : {-1.0, 0.0, 0.7, 2.0}) {
            const SqueezedState state(s, 1.0);
            REQUIRE(oracle::quad_bath_moment(state, 2, 0, 4).value ==
                    Approx(covariance(state).var_q).epsilon(1e-12));
        }
    }
    SECTION("<q^2 p^2> at s = 1") {
        REQUIRE(oracle::quad_bath_moment(SqueezedState(1.0, 1.0), 2, 2, 8).value ==
                Approx(0.25).margin(1e-12));
    }
    SECTION("order sufficiency is reported in the metadata") {
        const SqueezedState state(0.0, 1.0);
        REQUIRE(oracle::quad_bath_moment(state, 4, 4, 8).order_sufficient);
        REQUIRE_FALSE(oracle::quad_bath_moment(state, 8, 8, 8).order_sufficient);
    }
    SECTION("odd or negative exponents are rejected") {
        REQUIRE_THROWS_AS(oracle::quad_bath_moment(SqueezedState(0.0, 1.0), 3, 0, 8),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(oracle::quad_bath_moment(SqueezedState(0.0, 1.0), -2, 0, 8),
                          std::invalid_argument);
    }
    SECTION("closed-form moments match across orders and squeezes") {
        for (double s : {0.0, 1.0, 2.0}) {
            const SqueezedState state(s, 1.0);
            for (int m = 0; m <= 4; ++m)
                for (int l = 0; m + l <= 4; ++l) {
                    const double got = oracle::quad_bath_moment(state, 2 * m, 2 * l, 12).value;
                    const double want = wick_moment(state, {m, l});
                    REQUIRE(std::fabs(got - want) <=
                            1e-11 * std::max(1.0, std::fabs(want)));
                }
        }
    }
}

TEST_CASE("monte carlo bath moments", "[oracle]") {
    SECTION("vacuum mean action within five standard errors") {
        const oracle::McEstimate est =
            oracle::mc_bath_moment(SqueezedState(0.0, 1.0), 1, 1000000, 42);
        REQUIRE(std::fabs(est.mean - 0.5) <= 5.0 * est.std_error);
        REQUIRE(est.n_samples == 1000000);
        REQUIRE(est.std_error > 0.0);
    }
    SECTION("squeezed first and second moments within five standard errors") {
        const SqueezedState state(1.0, 1.0);
        const oracle::McEstimate m1 = oracle::mc_bath_moment(state, 1, 1000000, 42);
        REQUIRE(std::fabs(m1.mean - 1.8810978455418157) <= 5.0 * m1.std_error);
        const oracle::McEstimate m2 = oracle::mc_bath_moment(state, 2, 1000000, 42);
        REQUIRE(std::fabs(m2.mean - 10.365587313506182) <= 5.0 * m2.std_error);
    }
    SECTION("identical seeds give bit-identical estimates") {
        const SqueezedState state(0.5, 1.0);
        const oracle::McEstimate a = oracle::mc_bath_moment(state, 2, 50000, 7);
        const oracle::McEstimate b = oracle::mc_bath_moment(state, 2, 50000, 7);
        REQUIRE(a.mean == b.mean);
        REQUIRE(a.std_error == b.std_error);
        const oracle::McEstimate c = oracle::mc_bath_moment(state, 2, 50000, 8);
        REQUIRE(a.mean != c.mean);
    }
    SECTION("standard error scales like n^{-1/2}") {
        const SqueezedState state(1.0, 1.0);
        const double se1 = oracle::mc_bath_moment(state, 1, 100000, 3).std_error;
        const double se4 = oracle::mc_bath_moment(state, 1, 400000, 4).std_error;
        REQUIRE(se1 / se4 == Approx(2.0).epsilon(0.3));
    }
    SECTION("input validation") {
        REQUIRE_THROWS_AS(oracle::mc_bath_moment(SqueezedState(0.0, 1.0), -1, 10000, 1),
                          std::domain_error);
        REQUIRE_THROWS_AS(oracle::mc_bath_moment(SqueezedState(0.0, 1.0), 1, 10, 1),
                          std::invalid_argument);
    }
}

TEST_CASE("log-space reference series", "[oracle]") {
    const ModelParams quad{1.0, {1.0}, 0.0, 0.0, 0.0, 1.0};
    SECTION("s = 0 reduces to a single barrier factor for any cap") {
        for (long m_max : {1L, 5L, 200L}) {
            REQUIRE(oracle::series_tquad_reference(quad, SqueezedState(0.0, 1.0), 2.0, m_max) ==
                    kemble(1.5, 1.0, 1.0));
        }
    }
    SECTION("one-term truncation underestimates by at most the tail mass") {
        const SqueezedState state(1.0, 1.0);
        const double full = oracle::series_tquad_reference(quad, state, 2.0, 400);
        const double one = oracle::series_tquad_reference(quad, state, 2.0, 1);
        REQUIRE(one <= full);
        REQUIRE(full - one <= 0.35194572633611460);  // 1 - P_0(1)
    }
    SECTION("m_max validation") {
        REQUIRE_THROWS_AS(oracle::series_tquad_reference(quad, SqueezedState(1.0, 1.0), 2.0, 0),
                          std::invalid_argument);
    }
}
