#pragma once

#include <cmath>
#include <stdexcept>

#include "saddle_squeeze/detail/numeric.hpp"
#include "saddle_squeeze/squeezed_state.hpp"

namespace saddle_squeeze {

// Half-orders of a mixed bath-plane moment <q2^{2m} p2^{2l}>.
struct MomentOrder {
    int m = 0;
    int l = 0;
};

// k!! with (-1)!! = 0!! = 1!! = 1. Direct product up to k = 150, log-space
// accumulation beyond that (the direct product overflows near k = 300).
inline double double_factorial(long k) {
    if (k < -1)
        throw std::domain_error("double_factorial: argument must be >= -1");
    if (k <= 1) return 1.0;
    if (k <= 150) {
        double r = 1.0;
        for (long j = k; j >= 2; j -= 2) r *= static_cast<double>(j);
        return r;
    }
    double acc = 0.0;
    for (long j = k; j >= 2; j -= 2) acc += std::log(static_cast<double>(j));
    return std::exp(acc);
}

// Wick pairing count of the even Gaussian moment:
//   <q2^{2m} p2^{2l}>_s = (2m-1)!! (2l-1)!! (hbar/2)^{m+l} e^{2s(l-m)}.
inline double wick_moment(const SqueezedState& state, MomentOrder order) {
    if (order.m < 0 || order.l < 0)
        throw std::domain_error("wick_moment: half-orders must be non-negative");
    return double_factorial(2L * order.m - 1) * double_factorial(2L * order.l - 1)
         * detail::pow_int(0.5 * state.hbar, order.m + order.l)
         * std::exp(2.0 * state.s * (order.l - order.m));
}

// General exponent entry point <q2^a p2^b>; any odd power vanishes by the
// reflection symmetry of the zero-mean Gaussian.
inline double gaussian_moment(const SqueezedState& state, int exp_q, int exp_p) {
    if (exp_q < 0 || exp_p < 0)
        throw std::domain_error("gaussian_moment: exponents must be non-negative");
    if (exp_q % 2 != 0 || exp_p % 2 != 0) return 0.0;
    return wick_moment(state, {exp_q / 2, exp_p / 2});
}

namespace detail {

// C(n, k) by the multiplicative recurrence; every partial product is itself
// a binomial coefficient, so the result is exact in double for n <= 30.
inline double binomial(int n, int k) {
    double c = 1.0;
    for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
    return c;
}

}  // namespace detail

// <J2^n>_s with J2 = (q2^2 + p2^2)/2, by binomial expansion into Wick
// moments:
//   <J2^n> = 2^{-n} sum_k C(n,k) <q2^{2k} p2^{2(n-k)}>.
// n = 1 reproduces <J2> = (hbar/2) cosh(2s); n = 2 gives
// hbar^2 (3 e^{-4s} + 2 + 3 e^{4s}) / 16.
inline double bath_action_power_moment(const SqueezedState& state, int n) {
    if (n < 0)
        throw std::domain_error("bath_action_power_moment: power must be non-negative");
    if (n > 30)
        throw std::domain_error(
            "bath_action_power_moment: power exceeds the degree-30 cap for truncated symbols");
    double sum = 0.0;
    for (int k = 0; k <= n; ++k)
        sum += detail::binomial(n, k) * wick_moment(state, {k, n - k});
    return std::ldexp(sum, -n);
}

}  // namespace saddle_squeeze
