#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "saddle_squeeze/detail/numeric.hpp"
#include "saddle_squeeze/qnf_symbol.hpp"
#include "saddle_squeeze/squeezed_state.hpp"

namespace saddle_squeeze {

struct SeriesLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated level sum over the squeezed number distribution. In the regimes
// the library targets value lies in (0, 1); tail_bound is the probability
// mass excluded by truncation, and since every summand lies in (0, 1) it
// bounds the truncation error of value.
struct TransmissionResult {
    double value;
    long terms_used;
    double tail_bound;
};

// Parabolic-barrier transmission factor
//   T_K(dE) = 1 / (1 + exp(-2 pi dE / (hbar lambda))),
// evaluated in the overflow-safe logistic form: the argument of exp is kept
// non-positive on both branches.
inline double kemble(double delta_e, double lambda, double hbar) {
    if (!(lambda > 0.0)) throw std::domain_error("kemble: lambda must be > 0");
    if (!(hbar > 0.0)) throw std::domain_error("kemble: hbar must be > 0");
    const double x = 2.0 * std::numbers::pi * delta_e / (hbar * lambda);
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double ex = std::exp(x);
    return ex / (1.0 + ex);
}

// Exact separable baseline for the quadratic saddle-center model:
//   T_quad(E, s) = sum_m P_{2m}(s) T_K(E - hbar omega_2 (2m + 1/2)).
// Terms are added until the unemitted probability mass drops below tol; that
// mass is the reported tail_bound. Mass, not term size, controls truncation:
// Kemble factors near one make individual terms a misleading signal, while
// the excluded mass rigorously bounds the error.
inline TransmissionResult transmission_quadratic(const ModelParams& params,
                                                 const SqueezedState& state, double E,
                                                 double tol = 1e-12) {
    params.validate();
    if (state.hbar != params.hbar)
        throw std::invalid_argument("transmission_quadratic: state hbar differs from model hbar");
    if (!(tol > 0.0) || tol > 1e-2)
        throw std::invalid_argument("transmission_quadratic: tol must lie in (0, 1e-2]");

    const double omega2 = params.omega.front();
    NumberDistributionSeries levels(state);
    detail::KahanSum acc;
    constexpr long kMaxTerms = 1'000'000;
    for (long m = 0; m < kMaxTerms; ++m) {
        const double p = levels.next();
        const double level_energy = params.hbar * omega2 * (2.0 * m + 0.5);
        acc.add(p * kemble(E - level_energy, params.lambda, params.hbar));
        const double tail = levels.remaining_mass();
        if (tail <= tol) return {acc.value(), m + 1, tail};
    }
    throw SeriesLimitError("transmission_quadratic: no convergence within 1e6 terms");
}

// Anharmonic diagnostic: the mean reactive energy mapped through the Kemble
// factor, T_QNF = T_K(<H_react>_s). No energy-distribution convolution is
// attempted beyond the mean.
inline double transmission_qnf(const ModelParams& params, const SqueezedState& state, double E) {
    const ReactiveEnergyResult res = reactive_energy(params, state, E);
    return kemble(res.h_react, params.lambda, params.hbar);
}

// S = T(E, s)/T(E, 0); unity at s = 0 by construction.
inline double suppression_metric(double t_s, double t_0) {
    if (!(t_0 > 0.0))
        throw std::domain_error("suppression_metric: reference transmission is zero");
    return t_s / t_0;
}

}  // namespace saddle_squeeze
