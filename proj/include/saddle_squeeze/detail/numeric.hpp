#pragma once

#include <cmath>
#include <numbers>

namespace saddle_squeeze::detail {

// x^n by repeated multiplication; n is a small non-negative polynomial degree.
inline double pow_int(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// log(cosh(x)) without forming cosh(x); exact 0 at x = 0.
inline double log_cosh(double x) {
    const double a = std::fabs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

// Kahan-compensated accumulator. Long occupation-probability sums approach 1
// and their complement is the truncation bound, so the naive O(n*eps) drift
// of a plain sum is not acceptable there.
struct KahanSum {
    double sum = 0.0;
    double c = 0.0;

    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

}  // namespace saddle_squeeze::detail
