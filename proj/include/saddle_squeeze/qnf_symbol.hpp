#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "saddle_squeeze/gaussian_moments.hpp"
#include "saddle_squeeze/squeezed_state.hpp"

namespace saddle_squeeze {

// The I J2 coupling (or a user-supplied generalization) can cancel the
// reactive channel; the energy constraint then has no solution for <I>.
struct SingularDenominatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when E <= E0: the bottleneck has not opened and no bath action is
// permitted, so no candidate width exists.
struct NoBottleneckError : std::domain_error {
    using std::domain_error::domain_error;
};

// One monomial of a truncated normal-form Weyl symbol:
//   coeff * I^{i_power} * J_2^{j_powers[0]} * ... * J_n^{j_powers[n-2]} * hbar^{hbar_power}.
// Degree in the reactive action I is capped at one: bath moments are exact
// Gaussian expectations, but no moment rule is defined for I, so the energy
// constraint must stay linear in <I>.
struct QnfTerm {
    double coeff = 0.0;
    int i_power = 0;
    std::vector<int> j_powers;
    int hbar_power = 0;
};

// Truncated polynomial normal-form symbol
//   E0 + lambda I + sum_k omega_k J_k + higher polynomial corrections.
// Validated once at construction and immutable afterwards.
class QnfSymbol {
public:
    QnfSymbol(std::vector<QnfTerm> terms, int n_bath, double hbar)
        : terms_(std::move(terms)), n_bath_(n_bath), hbar_(hbar) {
        validate();
    }

    const std::vector<QnfTerm>& terms() const { return terms_; }
    int n_bath() const { return n_bath_; }
    double hbar() const { return hbar_; }

    // Coefficient lambda of the unique pure-I term.
    double reactive_rate() const { return lambda_; }

private:
    void validate() {
        if (n_bath_ < 1)
            throw std::invalid_argument("QnfSymbol: needs at least one bath mode");
        if (!std::isfinite(hbar_) || hbar_ <= 0.0)
            throw std::invalid_argument("QnfSymbol: hbar must be positive");

        int lambda_terms = 0;
        std::vector<bool> has_linear(static_cast<std::size_t>(n_bath_), false);
        for (const QnfTerm& term : terms_) {
            if (!std::isfinite(term.coeff))
                throw std::invalid_argument("QnfSymbol: term coefficient must be finite");
            if (term.i_power < 0 || term.i_power > 1)
                throw std::invalid_argument(
                    "QnfSymbol: degree in the reactive action I is capped at one");
            if (term.hbar_power < 0)
                throw std::invalid_argument("QnfSymbol: hbar power must be non-negative");
            if (term.j_powers.size() != static_cast<std::size_t>(n_bath_))
                throw std::invalid_argument(
                    "QnfSymbol: term must carry one bath exponent per mode");
            int j_total = 0;
            for (int jp : term.j_powers) {
                if (jp < 0)
                    throw std::invalid_argument("QnfSymbol: bath exponents must be non-negative");
                if (jp > 30)
                    throw std::invalid_argument(
                        "QnfSymbol: bath exponent exceeds the degree-30 moment cap");
                j_total += jp;
            }
            if (term.i_power == 1 && j_total == 0) {
                ++lambda_terms;
                lambda_ = term.coeff;
            }
            if (term.i_power == 0 && term.hbar_power == 0 && j_total == 1) {
                for (std::size_t k = 0; k < term.j_powers.size(); ++k)
                    if (term.j_powers[k] == 1 && term.coeff > 0.0) has_linear[k] = true;
            }
        }
        if (lambda_terms != 1 || lambda_ <= 0.0)
            throw std::invalid_argument(
                "QnfSymbol: exactly one pure lambda*I term with lambda > 0 is required");
        for (std::size_t k = 0; k < has_linear.size(); ++k)
            if (!has_linear[k])
                throw std::invalid_argument("QnfSymbol: bath mode " + std::to_string(k + 2) +
                                            " lacks a linear omega*J term with omega > 0");
    }

    std::vector<QnfTerm> terms_;
    int n_bath_;
    double hbar_;
    double lambda_ = 0.0;
};

// Two-degree-of-freedom saddle-center model data:
//   H_W = E0 + lambda I + omega_2 J_2 + alpha J_2^2 + b2 I J_2
// with optional further harmonic bath modes omega_3, ... (alpha and b2 are
// carried by mode 2 only).
struct ModelParams {
    double lambda = 1.0;
    std::vector<double> omega = {1.0};
    double alpha = 0.0;
    double b2 = 0.0;
    double E0 = 0.0;
    double hbar = 1.0;

    void validate() const {
        if (!std::isfinite(lambda) || lambda <= 0.0)
            throw std::invalid_argument("model.lambda: must be > 0");
        if (omega.empty())
            throw std::invalid_argument("model.omega: needs at least one bath frequency");
        for (double w : omega)
            if (!std::isfinite(w) || w <= 0.0)
                throw std::invalid_argument("model.omega: every frequency must be > 0");
        if (!std::isfinite(hbar) || hbar <= 0.0)
            throw std::invalid_argument("model.hbar: must be > 0");
        if (!std::isfinite(alpha) || !std::isfinite(b2) || !std::isfinite(E0))
            throw std::invalid_argument("model: alpha, b2, E0 must be finite");
    }
};

// Solution of the total-expectation-energy constraint <H_W>_s = E.
struct ReactiveEnergyResult {
    double h_react;        // lambda * <I>
    double i_expectation;  // <I>
    double denominator;    // lambda + coupling corrections multiplying <I>
};

// The five-term two-dof symbol for the given parameters; zero-coefficient
// optional terms are omitted.
inline QnfSymbol build_two_dof_symbol(const ModelParams& params) {
    params.validate();
    std::vector<QnfTerm> terms;
    if (params.E0 != 0.0) terms.push_back({params.E0, 0, {0}, 0});
    terms.push_back({params.lambda, 1, {0}, 0});
    terms.push_back({params.omega.front(), 0, {1}, 0});
    if (params.alpha != 0.0) terms.push_back({params.alpha, 0, {2}, 0});
    if (params.b2 != 0.0) terms.push_back({params.b2, 1, {1}, 0});
    return QnfSymbol(std::move(terms), 1, params.hbar);
}

// Splits <H_W> = A + B <I> over the product state (one squeezed vacuum per
// bath mode, so bath factors are products of per-mode <J_k^n>), then solves
//   <I> = (E - A)/B,   h_react = lambda <I>.
// For the two-dof symbol this is exactly
//   h_react = lambda (E - E0 - omega_2 <J2> - alpha <J2^2>) / (lambda + b2 <J2>).
inline ReactiveEnergyResult reactive_energy(const QnfSymbol& symbol,
                                            const std::vector<SqueezedState>& states,
                                            double E) {
    if (states.size() != static_cast<std::size_t>(symbol.n_bath()))
        throw std::invalid_argument("reactive_energy: one squeezed state per bath mode required");
    for (const SqueezedState& st : states)
        if (st.hbar != symbol.hbar())
            throw std::invalid_argument("reactive_energy: state hbar differs from symbol hbar");

    double a = 0.0;
    double b = 0.0;
    for (const QnfTerm& term : symbol.terms()) {
        double factor = term.coeff * detail::pow_int(symbol.hbar(), term.hbar_power);
        for (std::size_t k = 0; k < states.size(); ++k)
            factor *= bath_action_power_moment(states[k], term.j_powers[k]);
        (term.i_power == 0 ? a : b) += factor;
    }

    const double lambda = symbol.reactive_rate();
    if (std::fabs(b) < 1e-12 * lambda)
        throw SingularDenominatorError(
            "reactive_energy: coupling cancels the reactive channel (denominator ~ 0)");
    const double i_expectation = (E - a) / b;
    return {lambda * i_expectation, i_expectation, b};
}

inline ReactiveEnergyResult reactive_energy(const ModelParams& params,
                                            const SqueezedState& state, double E) {
    return reactive_energy(build_two_dof_symbol(params), {state}, E);
}

// Maximal bath action of mode k on the I = 0 shell at energy E. Quadratic
// modes give (E - E0)/omega_k; the anharmonic mode 2 solves
// omega_2 J + alpha J^2 = E - E0 for its smallest positive root, written in
// the cancellation-free form 2(E - E0)/(omega + sqrt(omega^2 + 4 alpha (E - E0))).
inline double max_bath_action(const ModelParams& params, std::size_t mode, double E) {
    const double excess = E - params.E0;
    const double w = params.omega.at(mode);
    if (mode == 0 && params.alpha != 0.0) {
        const double disc = w * w + 4.0 * params.alpha * excess;
        if (disc < 0.0)
            throw std::domain_error(
                "max_bath_action: negative-alpha bath energy never reaches E - E0");
        return 2.0 * excess / (w + std::sqrt(disc));
    }
    return excess / w;
}

// c_cand(E) = 2 pi min_k J_k^max(E).
inline double candidate_width(const ModelParams& params, double E) {
    params.validate();
    if (!(E > params.E0))
        throw NoBottleneckError("candidate_width: requires E > E0 (bottleneck closed)");
    double j_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < params.omega.size(); ++k)
        j_min = std::min(j_min, max_bath_action(params, k, E));
    return 2.0 * std::numbers::pi * j_min;
}

// Threshold searches distinguish a crossing from the two boundary outcomes:
// the diagnostic already exceeds its target at s = 0, or no crossing exists
// inside the search bracket. Sweep drivers tabulate all three.
enum class ThresholdStatus { found, at_floor, no_root };

struct ThresholdResult {
    ThresholdStatus status;
    double s;

    bool found() const { return status == ThresholdStatus::found; }
};

// s_geom solving a_sq(s) = c_cand(E): s = arccosh(c_cand/(pi hbar))/2, or
// at_floor when the vacuum area pi*hbar already exceeds the candidate width.
inline ThresholdResult geometric_threshold(const ModelParams& params, double E) {
    const double c_cand = candidate_width(params, E);
    const double ratio = c_cand / (std::numbers::pi * params.hbar);
    if (ratio < 1.0) return {ThresholdStatus::at_floor, 0.0};
    return {ThresholdStatus::found, 0.5 * std::acosh(ratio)};
}

// s_dep where the effective reactive energy crosses zero. Quadratic models
// (alpha = b2 = 0) use the closed form cosh(2s) = 2(E - E0)/(hbar omega_2);
// otherwise the root of reactive_energy(...) = 0 is bisected on
// [0, s_max_bracket] to 1e-10 in s. cosh(2 * 20) ~ 1e17 outruns any physical
// energy ratio, hence the default bracket; it is config-overridable.
inline ThresholdResult depletion_threshold(const ModelParams& params, double E,
                                           double s_max_bracket = 20.0) {
    params.validate();
    if (params.alpha == 0.0 && params.b2 == 0.0) {
        const double ratio = 2.0 * (E - params.E0) / (params.hbar * params.omega.front());
        if (ratio < 1.0) return {ThresholdStatus::at_floor, 0.0};
        return {ThresholdStatus::found, 0.5 * std::acosh(ratio)};
    }

    const QnfSymbol symbol = build_two_dof_symbol(params);
    const auto h_at = [&](double s) {
        return reactive_energy(symbol, {SqueezedState(s, params.hbar)}, E).h_react;
    };
    double lo = 0.0;
    double hi = s_max_bracket;
    double h_lo = h_at(lo);
    if (h_lo == 0.0) return {ThresholdStatus::found, 0.0};
    if (h_lo < 0.0) return {ThresholdStatus::at_floor, 0.0};
    if (h_at(hi) > 0.0) return {ThresholdStatus::no_root, std::numeric_limits<double>::quiet_NaN()};
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (h_at(mid) > 0.0 ? lo : hi) = mid;
    }
    return {ThresholdStatus::found, 0.5 * (lo + hi)};
}

}  // namespace saddle_squeeze
