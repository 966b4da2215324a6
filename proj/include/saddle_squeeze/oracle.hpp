#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "saddle_squeeze/detail/numeric.hpp"
#include "saddle_squeeze/qnf_symbol.hpp"
#include "saddle_squeeze/squeezed_state.hpp"

// Independent verification engines. Nothing here calls the closed-form
// moment or recurrence paths it is used to check: Monte Carlo samples the
// covariance directly, quadrature integrates the Wigner density function,
// and the reference series rebuilds the number distribution from factorials
// in log space.
namespace saddle_squeeze::oracle {

struct McEstimate {
    double mean;
    double std_error;
    long n_samples;
};

namespace detail_rng {

// Uniform in (0, 1] from the top 53 bits; never 0, so log(u) is safe.
inline double uniform_open0(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Uniform in [0, 1).
inline double uniform_halfopen(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// One Box-Muller pair of standard normals. mt19937_64 output is pinned by
// the standard and the transform is explicit, so a seed fully determines the
// stream (std::normal_distribution would not guarantee that).
inline std::pair<double, double> normal_pair(std::mt19937_64& rng) {
    const double u1 = uniform_open0(rng);
    const double u2 = uniform_halfopen(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace detail_rng

// Sample mean and standard error of (J2)^n = ((q^2 + p^2)/2)^n under the
// squeezed-vacuum covariance. Deterministic for a fixed seed.
inline McEstimate mc_bath_moment(const SqueezedState& state, int n, long n_samples,
                                 std::uint64_t seed) {
    if (n < 0) throw std::domain_error("mc_bath_moment: power must be non-negative");
    if (n_samples < 1000)
        throw std::invalid_argument("mc_bath_moment: needs at least 1e3 samples");

    const BathCovariance cov = covariance(state);
    const double sig_q = std::sqrt(cov.var_q);
    const double sig_p = std::sqrt(cov.var_p);

    std::mt19937_64 rng(seed);
    double mean = 0.0;
    double m2 = 0.0;
    for (long i = 0; i < n_samples; ++i) {
        const auto [z0, z1] = detail_rng::normal_pair(rng);
        const double q = sig_q * z0;
        const double p = sig_p * z1;
        const double x = saddle_squeeze::detail::pow_int(0.5 * (q * q + p * p), n);
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
    }
    const double variance = m2 / static_cast<double>(n_samples - 1);
    return {mean, std::sqrt(variance / static_cast<double>(n_samples)), n_samples};
}

// Gauss-Hermite rule for weight e^{-x^2}: nodes are Newton-refined roots of
// the orthonormal Hermite polynomial (three-term recurrence), weights
// 2/(H'_n)^2. No tables; any order up to 256 is generated on demand.
class GaussHermiteRule {
public:
    explicit GaussHermiteRule(int order) {
        if (order < 1 || order > 256)
            throw std::invalid_argument("GaussHermiteRule: order must lie in [1, 256]");
        nodes_.resize(order);
        weights_.resize(order);
        compute(order);
    }

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    int order() const { return static_cast<int>(nodes_.size()); }

private:
    void compute(int n) {
        constexpr double kTol = 1e-14;
        constexpr int kMaxNewton = 100;
        const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);

        const int half = (n + 1) / 2;
        double z = 0.0;
        for (int i = 0; i < half; ++i) {
            // Stroud-Secrest style seeds, largest root first.
            if (i == 0) {
                z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
            } else if (i == 1) {
                z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
            } else if (i == 2) {
                z = 1.86 * z - 0.86 * nodes_[n - 1];
            } else if (i == 3) {
                z = 1.91 * z - 0.91 * nodes_[n - 2];
            } else {
                z = 2.0 * z - nodes_[n - i + 1];
            }
            double pp = 0.0;
            for (int it = 0; it < kMaxNewton; ++it) {
                double p1 = pim4;
                double p2 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                         std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
                }
                pp = std::sqrt(2.0 * n) * p2;
                const double z_prev = z;
                z = z_prev - p1 / pp;
                if (std::fabs(z - z_prev) <= kTol) break;
            }
            nodes_[n - 1 - i] = z;
            nodes_[i] = -z;
            weights_[i] = 2.0 / (pp * pp);
            weights_[n - 1 - i] = weights_[i];
        }
        if (n % 2 == 1) nodes_[n / 2] = 0.0;
    }

    std::vector<double> nodes_;
    std::vector<double> weights_;
};

struct QuadratureMoment {
    double value;
    bool order_sufficient;  // order >= m + l + 1, the polynomial-exactness bound
};

// Tensor-product Gauss-Hermite integral of q^{exp_q} p^{exp_p} against the
// Wigner density; axes are scaled so the density's Gaussian decay matches
// the e^{-x^2} weight. Exact (to round-off) for polynomial integrands when
// order >= m + l + 1.
inline QuadratureMoment quad_bath_moment(const SqueezedState& state, int exp_q, int exp_p,
                                         int order) {
    if (exp_q < 0 || exp_p < 0 || exp_q % 2 != 0 || exp_p % 2 != 0)
        throw std::invalid_argument("quad_bath_moment: exponents must be even and non-negative");
    const GaussHermiteRule rule(order);
    const double sig_q = std::sqrt(state.hbar) * std::exp(-state.s);
    const double sig_p = std::sqrt(state.hbar) * std::exp(state.s);

    double total = 0.0;
    for (int i = 0; i < rule.order(); ++i) {
        const double xi = rule.nodes()[i];
        const double q = sig_q * xi;
        const double fq = saddle_squeeze::detail::pow_int(q, exp_q);
        double row = 0.0;
        for (int j = 0; j < rule.order(); ++j) {
            const double yj = rule.nodes()[j];
            const double p = sig_p * yj;
            row += rule.weights()[j] * std::exp(xi * xi + yj * yj) *
                   saddle_squeeze::detail::pow_int(p, exp_p) * wigner_density(state, q, p);
        }
        total += rule.weights()[i] * fq * row;
    }
    total *= sig_q * sig_p;
    return {total, order >= exp_q / 2 + exp_p / 2 + 1};
}

// Quadrature of the Wigner density alone; 1 for a normalized state.
inline double quad_wigner_normalization(const SqueezedState& state, int order) {
    return quad_bath_moment(state, 0, 0, order).value;
}

namespace detail_series {

// Same logistic barrier factor as the production path, written out locally
// so the reference sum shares no code with it.
inline double logistic_barrier(double delta_e, double lambda, double hbar) {
    const double x = 2.0 * std::numbers::pi * delta_e / (hbar * lambda);
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double ex = std::exp(x);
    return ex / (1.0 + ex);
}

}  // namespace detail_series

// Reference evaluation of the quadratic level sum using the factorial closed
// form of P_{2m} in log space (lgamma, no recurrence), truncated at m_max
// terms. Cross-check only; makes no convergence claims of its own.
inline double series_tquad_reference(const ModelParams& params, const SqueezedState& state,
                                     double E, long m_max) {
    params.validate();
    if (m_max < 1) throw std::invalid_argument("series_tquad_reference: m_max must be >= 1");
    const double omega2 = params.omega.front();
    const double log_tanh = std::log(std::fabs(std::tanh(state.s)));  // -inf at s = 0
    const double log_cosh_s = saddle_squeeze::detail::log_cosh(state.s);

    saddle_squeeze::detail::KahanSum total;
    for (long m = 0; m < m_max; ++m) {
        double log_p;
        if (m == 0) {
            log_p = -log_cosh_s;
        } else {
            log_p = 2.0 * m * (log_tanh - std::numbers::ln2) - log_cosh_s +
                    std::lgamma(2.0 * m + 1.0) - 2.0 * std::lgamma(m + 1.0);
        }
        const double level_energy = params.hbar * omega2 * (2.0 * m + 0.5);
        total.add(std::exp(log_p) *
                  detail_series::logistic_barrier(E - level_energy, params.lambda, params.hbar));
    }
    return total.value();
}

}  // namespace saddle_squeeze::oracle
