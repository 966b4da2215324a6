#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "saddle_squeeze/detail/numeric.hpp"

namespace saddle_squeeze {

// Single-mode squeezed vacuum in the normal-form bath plane (q2, p2).
// s is the dimensionless squeeze parameter (any sign; s > 0 narrows q2),
// hbar fixes the action unit. Everything derived from the state is a pure
// function of these two numbers.
struct SqueezedState {
    double s = 0.0;
    double hbar = 1.0;

    SqueezedState() = default;
    SqueezedState(double squeeze, double action_unit) : s(squeeze), hbar(action_unit) {
        if (!std::isfinite(s))
            throw std::invalid_argument("SqueezedState: s must be finite");
        if (!std::isfinite(hbar) || hbar <= 0.0)
            throw std::invalid_argument("SqueezedState: hbar must be positive");
    }
};

// Diagonal covariance of the bath plane. The product var_q * var_p stays at
// (hbar/2)^2 for every s: squeezing reshapes the ellipse, the symplectic
// eigenvalue does not move.
struct BathCovariance {
    double var_q;
    double var_p;
};

// Sigma_s = (hbar/2) diag(e^{-2s}, e^{+2s}).
inline BathCovariance covariance(const SqueezedState& state) {
    const double half = 0.5 * state.hbar;
    return {half * std::exp(-2.0 * state.s), half * std::exp(2.0 * state.s)};
}

// W_s(q2, p2) = (1/(pi hbar)) exp(-(e^{2s} q2^2 + e^{-2s} p2^2)/hbar).
// Zero-mean normalized Gaussian; peak 1/(pi hbar) at the origin for any s.
inline double wigner_density(const SqueezedState& state, double q2, double p2) {
    const double e2s = std::exp(2.0 * state.s);
    const double em2s = std::exp(-2.0 * state.s);
    return std::exp(-(e2s * q2 * q2 + em2s * p2 * p2) / state.hbar)
         / (std::numbers::pi * state.hbar);
}

// <J2>_s = (hbar/2) cosh(2s) with J2 = (q2^2 + p2^2)/2. Even in s, floor
// hbar/2 at s = 0.
inline double expected_bath_action(const SqueezedState& state) {
    return 0.5 * state.hbar * std::cosh(2.0 * state.s);
}

// a_sq(s) = 2 pi <J2>_s = pi hbar cosh(2s). Bath-plane action-area
// diagnostic; minimum pi hbar at s = 0.
inline double action_area_scale(const SqueezedState& state) {
    return 2.0 * std::numbers::pi * expected_bath_action(state);
}

// Walks the even-level occupation probabilities of the squeezed vacuum,
//
//   P_{2m}(s) = tanh^{2m}(s)/cosh(s) * (2m)!/(2^{2m} (m!)^2),
//
// via the ratio recurrence P_{2(m+1)} = P_{2m} * tanh^2(s) * (2m+1)/(2m+2)
// seeded by P_0 = 1/cosh(s). The factorial closed form overflows 64-bit
// floats near m = 85; the recurrence never forms it. Emitted mass is
// accumulated with compensated summation so remaining_mass() stays a usable
// truncation bound down to ~1e-15.
//
// When 1/cosh(s) itself underflows (|s| beyond ~710, where cosh overflows)
// the walk switches to log space and exponentiates per term, so queries keep
// returning correctly rounded values (typically 0) instead of NaN.
class NumberDistributionSeries {
public:
    explicit NumberDistributionSeries(const SqueezedState& state) {
        const double t = std::tanh(state.s);
        tanh_sq_ = t * t;
        const double ch = std::cosh(state.s);
        if (std::isfinite(ch) && 1.0 / ch > 0.0) {
            current_ = 1.0 / ch;
        } else {
            log_space_ = true;
            log_current_ = -detail::log_cosh(state.s);
            log_tanh_sq_ = 2.0 * std::log(std::fabs(t));
        }
    }

    // P_{2m} for the next m, starting at m = 0.
    double next() {
        if (emitted_ > 0) {
            const double ratio = (2.0 * emitted_ - 1.0) / (2.0 * emitted_);
            if (log_space_) {
                log_current_ += log_tanh_sq_ + std::log(ratio);
            } else {
                current_ *= tanh_sq_ * ratio;
            }
        }
        ++emitted_;
        const double p = log_space_ ? std::exp(log_current_) : current_;
        mass_.add(p);
        return p;
    }

    long terms_emitted() const { return emitted_; }
    double cumulative_mass() const { return mass_.value(); }

    // Probability mass not yet emitted, by the normalization identity
    // sum_m P_{2m} = 1; clamped at 0 once round-off swallows the tail.
    double remaining_mass() const { return std::max(0.0, 1.0 - mass_.value()); }

private:
    double tanh_sq_ = 0.0;
    double current_ = 0.0;
    bool log_space_ = false;
    double log_current_ = 0.0;
    double log_tanh_sq_ = 0.0;
    long emitted_ = 0;
    detail::KahanSum mass_;
};

// P_{2m}(s); the pair index m counts even levels n = 2m.
inline double number_distribution(const SqueezedState& state, long m) {
    if (m < 0)
        throw std::domain_error("number_distribution: pair index must be non-negative");
    NumberDistributionSeries series(state);
    double p = 0.0;
    for (long k = 0; k <= m; ++k) p = series.next();
    return p;
}

// Occupation probability of quantum number n; odd levels carry no weight.
inline double occupation_probability(const SqueezedState& state, long n) {
    if (n < 0)
        throw std::domain_error("occupation_probability: level must be non-negative");
    if (n % 2 != 0) return 0.0;
    return number_distribution(state, n / 2);
}

}  // namespace saddle_squeeze
