#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace grss::special {

inline double log_binom(int n, int k) {
    if (k < 0 || k > n) throw std::domain_error("log_binom: k out of range");
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

/// log(1 + e^t) without overflow.
inline double softplus(double t) {
    if (t > 36.0) return t;
    if (t < -36.0) return std::exp(t);
    return std::log1p(std::exp(t));
}

/// Standard normal quantile, Wichura's AS 241 (PPND16), ~1e-16 accurate.
inline double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("norm_quantile: p not in (0,1)");
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                  3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -val : val;
}

/// Regularized incomplete beta I_x(a,b) for positive integer a, b
/// (binomial tail sum: P(Bin(a+b-1, x) >= a)).
inline double ibeta_int(int a, int b, double x) {
    if (a < 1 || b < 1) throw std::domain_error("ibeta_int: non-positive parameter");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const int n = a + b - 1;
    // Sum the smaller tail in log space for stability.
    if (x > static_cast<double>(a) / n) return 1.0 - ibeta_int(b, a, 1.0 - x);
    const double lx = std::log(x), l1x = std::log1p(-x);
    double s = 0.0;
    for (int k = a; k <= n; ++k)
        s += std::exp(log_binom(n, k) + k * lx + (n - k) * l1x);
    return std::min(s, 1.0);
}

inline double beta_pdf_int(int a, int b, double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return std::exp(-log_beta(a, b) + (a - 1) * std::log(x) + (b - 1) * std::log1p(-x));
}

/// Inverse of ibeta_int in x for fixed integer (a,b): Newton with bisection safeguard.
inline double ibeta_int_inv(int a, int b, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("ibeta_int_inv: p not in (0,1)");
    double lo = 0.0, hi = 1.0;
    double x = static_cast<double>(a) / (a + b);  // mean start
    for (int it = 0; it < 200; ++it) {
        const double fx = ibeta_int(a, b, x) - p;
        if (fx > 0.0) hi = x; else lo = x;
        const double d = beta_pdf_int(a, b, x);
        double step = (d > 0.0) ? fx / d : 0.0;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) <= 1e-15 * (1.0 + std::fabs(x))) return xn;
        x = xn;
    }
    return x;
}

}  // namespace grss::special
