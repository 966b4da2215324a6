#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "saddle_squeeze/config.hpp"
#include "saddle_squeeze/oracle.hpp"
#include "saddle_squeeze/transmission.hpp"

namespace saddle_squeeze {

struct OracleCheck {
    std::string name;
    bool pass;
    double measured;   // worst observed discrepancy, in the check's own units
    double threshold;  // failure above this
    std::string detail;
};

struct OracleReport {
    std::vector<OracleCheck> checks;

    bool all_pass() const {
        for (const OracleCheck& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace suite_detail {

inline double mixed_rel(double got, double want) {
    return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

// Up to three representative values off an axis: ends and middle.
inline std::vector<double> sample_axis(const std::vector<double>& values) {
    std::vector<double> out = {values.front()};
    if (values.size() > 2) out.push_back(values[values.size() / 2]);
    if (values.size() > 1) out.push_back(values.back());
    return out;
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

}  // namespace suite_detail

// Cross-checks every closed-form path against its independent oracle at the
// configured parameters. j2_mean_perturbation is a test hook: it offsets the
// closed-form bath action fed into the comparisons so tests can confirm the
// suite actually bites.
inline OracleReport run_oracle_suite(const RunConfig& cfg, double j2_mean_perturbation = 0.0) {
    cfg.validate();
    OracleReport report;
    const double hbar = cfg.model.hbar;
    const std::vector<double> s_samples = suite_detail::sample_axis(cfg.s_axis.values);
    const std::vector<double> e_samples = suite_detail::sample_axis(cfg.e_axis.values);

    // Quadrature machinery: monomial exactness up to degree 2N-1 against
    // Gamma(k + 1/2) = sqrt(pi) (2k-1)!!/2^k.
    {
        const int order = 8;
        const oracle::GaussHermiteRule rule(order);
        double worst = 0.0;
        for (int k = 0; 2 * k <= 2 * order - 1; ++k) {
            double sum = 0.0;
            for (int i = 0; i < order; ++i)
                sum += rule.weights()[i] * detail::pow_int(rule.nodes()[i], 2 * k);
            const double want = std::sqrt(std::numbers::pi) * double_factorial(2L * k - 1) /
                                detail::pow_int(2.0, k);
            worst = std::max(worst, std::fabs(sum - want) / want);
        }
        report.checks.push_back({"quadrature_exactness", worst <= 1e-12, worst, 1e-12,
                                 "monomials through degree 15 at order 8"});
    }

    // The implemented Wigner density integrates to one.
    {
        double worst = 0.0;
        for (double s : s_samples)
            worst = std::max(worst,
                             std::fabs(oracle::quad_wigner_normalization(SqueezedState(s, hbar), 40) - 1.0));
        report.checks.push_back({"wigner_normalization", worst <= 1e-8, worst, 1e-8,
                                 "2-D Gauss-Hermite integral of W_s"});
    }

    // Closed-form mixed moments vs direct quadrature of the density.
    {
        double worst = 0.0;
        for (double s : s_samples) {
            const SqueezedState state(s, hbar);
            for (int m = 0; m + 0 <= 4; ++m)
                for (int l = 0; m + l <= 4; ++l) {
                    const double got = oracle::quad_bath_moment(state, 2 * m, 2 * l, 12).value;
                    const double want = wick_moment(state, {m, l});
                    worst = std::max(worst, suite_detail::mixed_rel(got, want));
                }
        }
        report.checks.push_back({"wick_vs_quadrature", worst <= 1e-11, worst, 1e-11,
                                 "all half-orders m + l <= 4"});
    }

    // Mean bath action: closed form vs quadrature assembly of (q^2 + p^2)/2.
    {
        double worst = 0.0;
        for (double s : s_samples) {
            const SqueezedState state(s, hbar);
            const double got = 0.5 * (oracle::quad_bath_moment(state, 2, 0, 8).value +
                                      oracle::quad_bath_moment(state, 0, 2, 8).value);
            const double want = expected_bath_action(state) + j2_mean_perturbation;
            worst = std::max(worst, suite_detail::mixed_rel(got, want));
        }
        report.checks.push_back({"j2_mean_closed_vs_quadrature", worst <= 1e-11, worst, 1e-11,
                                 "<J2> assembled from second moments"});
    }

    // Closed forms vs seeded Monte Carlo, in units of the standard error.
    for (int n = 1; n <= 2; ++n) {
        double worst = 0.0;
        for (double s : s_samples) {
            const SqueezedState state(s, hbar);
            const oracle::McEstimate est =
                oracle::mc_bath_moment(state, n, cfg.oracle_samples, cfg.seed);
            const double want =
                bath_action_power_moment(state, n) + (n == 1 ? j2_mean_perturbation : 0.0);
            worst = std::max(worst, std::fabs(est.mean - want) / est.std_error);
        }
        report.checks.push_back({n == 1 ? "j2_mean_vs_mc" : "j2_sq_vs_mc", worst <= 5.0, worst,
                                 5.0, "discrepancy in standard errors"});
    }

    // Recurrence-based level sum vs log-space factorial reference.
    {
        const double tol_pair = std::max(cfg.tol, 1e-13);
        double worst = 0.0;
        for (double s : s_samples) {
            const SqueezedState state(s, hbar);
            for (double e : e_samples) {
                const TransmissionResult got =
                    transmission_quadratic(cfg.model, state, e, cfg.tol);
                const long m_max = 3 * got.terms_used + 64;
                const double want = oracle::series_tquad_reference(cfg.model, state, e, m_max);
                worst = std::max(worst, std::fabs(got.value - want));
            }
        }
        report.checks.push_back({"tquad_vs_series", worst <= tol_pair, worst, tol_pair,
                                 "recurrence sum vs lgamma series"});
    }

    // Identical seeds reproduce identical estimates, bit for bit.
    {
        const SqueezedState state(s_samples.back(), hbar);
        const long n = std::min(cfg.oracle_samples, 100000L);
        const oracle::McEstimate a = oracle::mc_bath_moment(state, 1, n, cfg.seed);
        const oracle::McEstimate b = oracle::mc_bath_moment(state, 1, n, cfg.seed);
        const bool same = a.mean == b.mean && a.std_error == b.std_error;
        report.checks.push_back({"mc_determinism", same, same ? 0.0 : 1.0, 0.0,
                                 "two runs with the configured seed"});
    }

    // Standard error should halve when the sample count quadruples.
    {
        const SqueezedState state(s_samples.back(), hbar);
        const long n = std::max(std::min(cfg.oracle_samples, 250000L), 1000L);
        const double se1 = oracle::mc_bath_moment(state, 1, n, cfg.seed).std_error;
        const double se4 = oracle::mc_bath_moment(state, 1, 4 * n, cfg.seed + 1).std_error;
        const double ratio = se1 / se4;
        const bool pass = ratio > 2.0 * 0.7 && ratio < 2.0 * 1.3;
        report.checks.push_back({"mc_se_scaling", pass, ratio, 2.0,
                                 "se(n)/se(4n), expected 2 within 30%"});
    }

    return report;
}

inline void write_report(std::ostream& os, const OracleReport& report) {
    os << "oracle cross-check report\n";
    for (const OracleCheck& c : report.checks) {
        os << (c.pass ? "  PASS  " : "  FAIL  ") << c.name << "  measured=" << suite_detail::fmt(c.measured)
           << " threshold=" << suite_detail::fmt(c.threshold) << "  (" << c.detail << ")\n";
    }
    int passed = 0;
    for (const OracleCheck& c : report.checks) passed += c.pass ? 1 : 0;
    os << "overall: " << (report.all_pass() ? "PASS" : "FAIL") << " (" << passed << '/'
       << report.checks.size() << ")\n";
}

// Machine-readable list of failed checks (empty array when everything passed).
inline std::string report_failures_json(const OracleReport& report) {
    nlohmann::json arr = nlohmann::json::array();
    for (const OracleCheck& c : report.checks) {
        if (c.pass) continue;
        arr.push_back({{"name", c.name},
                       {"measured", c.measured},
                       {"threshold", c.threshold},
                       {"detail", c.detail}});
    }
    return arr.dump(2) + "\n";
}

}  // namespace saddle_squeeze
