#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "saddle_squeeze/oracle.hpp"
#include "saddle_squeeze/squeezed_state.hpp"

using namespace saddle_squeeze;
using Catch::Approx;

namespace {

// Test-local factorial closed form for P_{2m}, evaluated in log space via
// lgamma; the library walks the ratio recurrence instead.
double closed_form_p2m(double s, long m) {
    if (m == 0) return 1.0 / std::cosh(s);
    const double log_tanh = std::log(std::fabs(std::tanh(s)));
    const double log_p = 2.0 * m * (log_tanh - std::numbers::ln2) - detail::log_cosh(s) +
                         std::lgamma(2.0 * m + 1.0) - 2.0 * std::lgamma(m + 1.0);
    return std::exp(log_p);
}

}  // namespace

TEST_CASE("covariance of the squeezed vacuum", "[squeezed_state]") {
    SECTION("unsqueezed vacuum is isotropic") {
        const BathCovariance cov = covariance(SqueezedState(0.0, 1.0));
        REQUIRE(cov.var_q == 0.5);
        REQUIRE(cov.var_p == 0.5);
    }
    SECTION("s = 1 squeezes q and stretches p") {
        const BathCovariance cov = covariance(SqueezedState(1.0, 1.0));
        REQUIRE(cov.var_q == Approx(0.067667641618306346).epsilon(1e-14));
        REQUIRE(cov.var_p == Approx(3.6945280494653251).epsilon(1e-14));
        REQUIRE(cov.var_q * cov.var_p == Approx(0.25).epsilon(1e-13));
    }
    SECTION("flipping the sign of s swaps the variances") {
        const BathCovariance plus = covariance(SqueezedState(1.0, 1.0));
        const BathCovariance minus = covariance(SqueezedState(-1.0, 1.0));
        REQUIRE(plus.var_q == minus.var_p);
        REQUIRE(plus.var_p == minus.var_q);
    }
    SECTION("symplectic eigenvalue stays at hbar/2 across the s range") {
        for (int i = 0; i <= 60; ++i) {
            const double s = -3.0 + 0.1 * i;
            for (double hbar : {0.5, 1.0, 2.0}) {
                const BathCovariance cov = covariance(SqueezedState(s, hbar));
                const double want = 0.25 * hbar * hbar;
                REQUIRE(cov.var_q * cov.var_p == Approx(want).epsilon(1e-12));
            }
        }
    }
    SECTION("invalid states are rejected") {
        REQUIRE_THROWS_AS(SqueezedState(0.0, 0.0), std::invalid_argument);
        REQUIRE_THROWS_AS(SqueezedState(0.0, -1.0), std::invalid_argument);
        REQUIRE_THROWS_AS(SqueezedState(std::nan(""), 1.0), std::invalid_argument);
    }
}

TEST_CASE("wigner density", "[squeezed_state]") {
    SECTION("peak value at the origin is 1/(pi hbar) for any s") {
        REQUIRE(wigner_density(SqueezedState(0.0, 1.0), 0.0, 0.0) ==
                Approx(1.0 / std::numbers::pi).epsilon(1e-15));
        for (double s : {-2.0, -0.5, 0.7, 3.0})
            REQUIRE(wigner_density(SqueezedState(s, 1.0), 0.0, 0.0) ==
                    Approx(1.0 / std::numbers::pi).epsilon(1e-15));
    }
    SECTION("strictly positive away from the origin") {
        const SqueezedState state(1.5, 1.0);
        REQUIRE(wigner_density(state, 2.0, -3.0) > 0.0);
        REQUIRE(wigner_density(state, -0.3, 0.1) > 0.0);
    }
    SECTION("normalizes to one under the quadrature oracle") {
        for (double s : {0.0, 1.0, 2.0})
            REQUIRE(oracle::quad_wigner_normalization(SqueezedState(s, 1.0), 40) ==
                    Approx(1.0).margin(1e-8));
        REQUIRE(oracle::quad_wigner_normalization(SqueezedState(0.5, 2.0), 40) ==
                Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("expected bath action", "[squeezed_state]") {
    SECTION("vacuum floor hbar/2") {
        REQUIRE(expected_bath_action(SqueezedState(0.0, 1.0)) == 0.5);
    }
    SECTION("cosh growth, frozen values") {
        REQUIRE(expected_bath_action(SqueezedState(1.0, 1.0)) ==
                Approx(1.8810978455418157).epsilon(1e-15));
        REQUIRE(expected_bath_action(SqueezedState(1.0, 2.0)) ==
                Approx(3.7621956910836315).epsilon(1e-15));
    }
    SECTION("even in s") {
        for (double s : {0.1, 0.9, 2.3, 17.0})
            REQUIRE(expected_bath_action(SqueezedState(s, 1.0)) ==
                    expected_bath_action(SqueezedState(-s, 1.0)));
    }
}

TEST_CASE("action-area diagnostic", "[squeezed_state]") {
    REQUIRE(action_area_scale(SqueezedState(0.0, 1.0)) ==
            Approx(std::numbers::pi).epsilon(1e-15));
    REQUIRE(action_area_scale(SqueezedState(1.0, 1.0)) ==
            Approx(11.819286344475512).epsilon(1e-14));
    SECTION("definitionally 2 pi times the expected action") {
        for (double s : {-1.0, 0.0, 0.4, 2.2})
            REQUIRE(action_area_scale(SqueezedState(s, 1.0)) ==
                    2.0 * std::numbers::pi * expected_bath_action(SqueezedState(s, 1.0)));
    }
}

TEST_CASE("number distribution of the squeezed vacuum", "[squeezed_state]") {
    SECTION("vacuum is pure |0>") {
        REQUIRE(number_distribution(SqueezedState(0.0, 1.0), 0) == 1.0);
        REQUIRE(number_distribution(SqueezedState(0.0, 1.0), 1) == 0.0);
        REQUIRE(number_distribution(SqueezedState(0.0, 1.0), 7) == 0.0);
    }
    SECTION("frozen values at s = 1") {
        const SqueezedState state(1.0, 1.0);
        REQUIRE(number_distribution(state, 0) == Approx(0.64805427366388540).epsilon(1e-14));
        REQUIRE(number_distribution(state, 1) == Approx(0.18794405337586963).epsilon(1e-14));
        REQUIRE(number_distribution(state, 2) == Approx(0.081759279974300555).epsilon(1e-14));
    }
    SECTION("odd occupations vanish identically") {
        const SqueezedState state(1.3, 1.0);
        REQUIRE(occupation_probability(state, 1) == 0.0);
        REQUIRE(occupation_probability(state, 9) == 0.0);
        REQUIRE(occupation_probability(state, 4) == number_distribution(state, 2));
    }
    SECTION("negative indices are rejected") {
        REQUIRE_THROWS_AS(number_distribution(SqueezedState(1.0, 1.0), -1), std::domain_error);
        REQUIRE_THROWS_AS(occupation_probability(SqueezedState(1.0, 1.0), -2), std::domain_error);
    }
    SECTION("recurrence matches the factorial closed form, m <= 50") {
        for (double s : {0.25, 1.0, 2.0, 3.0}) {
            NumberDistributionSeries series{SqueezedState(s, 1.0)};
            for (long m = 0; m <= 50; ++m) {
                const double got = series.next();
                const double want = closed_form_p2m(s, m);
                REQUIRE(got == Approx(want).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("number distribution normalization and mean occupation", "[squeezed_state]") {
    for (double s : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        NumberDistributionSeries series{SqueezedState(s, 1.0)};
        detail::KahanSum mean_occupation;
        long m = 0;
        while (series.remaining_mass() > 1e-10 && m < 200000) {
            const double p = series.next();
            mean_occupation.add(2.0 * m * p);
            ++m;
        }
        INFO("s = " << s << ", terms to 1 - 1e-10: " << m);
        REQUIRE(series.remaining_mass() <= 1e-10);
        const double sinh_s = std::sinh(s);
        REQUIRE(mean_occupation.value() == Approx(sinh_s * sinh_s).margin(1e-9));
    }
}

TEST_CASE("number distribution series bookkeeping", "[squeezed_state]") {
    NumberDistributionSeries series{SqueezedState(1.0, 1.0)};
    REQUIRE(series.terms_emitted() == 0);
    REQUIRE(series.remaining_mass() == 1.0);
    const double p0 = series.next();
    REQUIRE(series.terms_emitted() == 1);
    REQUIRE(series.cumulative_mass() == p0);
    REQUIRE(series.remaining_mass() == Approx(1.0 - p0).epsilon(1e-15));
}

TEST_CASE("number distribution survives extreme squeezing", "[squeezed_state]") {
    // cosh overflows near s = 710; the log-space walk keeps queries finite.
    const SqueezedState state(800.0, 1.0);
    for (long m : {0L, 1L, 10L}) {
        const double p = number_distribution(state, m);
        REQUIRE(std::isfinite(p));
        REQUIRE(p >= 0.0);
    }
    // P0 = 2 e^{-800} is below the smallest subnormal; 0 is correctly rounded.
    REQUIRE(number_distribution(state, 0) == 0.0);
}
