#include "grss/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "grss/special.hpp"

namespace grss {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// log Phi(v), stable in both tails. erfc is accurate until it underflows
// near v = -37.5; beyond that use the standard asymptotic expansion.
double norm_log_cdf(double v) {
    if (v > -37.0) return std::log(0.5 * std::erfc(-v * kInvSqrt2));
    const double w = 1.0 / (v * v);
    const double series = -w * (1.0 - w * (3.0 - w * (15.0 - 105.0 * w)));
    return -0.5 * v * v - std::log(-v) - kLogSqrt2Pi + std::log1p(series);
}
}  // namespace

bool is_symmetric(Family family) { return family != Family::TwoParamExponential; }

std::string family_name(Family family) {
    switch (family) {
        case Family::Normal: return "normal";
        case Family::Logistic: return "logistic";
        case Family::Laplace: return "laplace";
        case Family::TwoParamExponential: return "exponential";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "normal") return Family::Normal;
    if (name == "logistic") return Family::Logistic;
    if (name == "laplace") return Family::Laplace;
    if (name == "exponential" || name == "two-param-exp") return Family::TwoParamExponential;
    throw std::domain_error("unknown family: " + name);
}

double std_log_pdf(Family family, double v) {
    switch (family) {
        case Family::Normal:
            return -0.5 * v * v - kLogSqrt2Pi;
        case Family::Logistic:
            // f = e^{-v}/(1+e^{-v})^2; log f = -v - 2 log(1+e^{-v}) = -|v| - 2 softplus(-|v|)
            return -std::fabs(v) - 2.0 * special::softplus(-std::fabs(v));
        case Family::Laplace:
            return -std::fabs(v) - std::numbers::ln2;
        case Family::TwoParamExponential:
            return (v > 0.0) ? -v : -kInf;
    }
    return -kInf;
}

double std_pdf(Family family, double v) { return std::exp(std_log_pdf(family, v)); }

double std_log_cdf(Family family, double v) {
    switch (family) {
        case Family::Normal:
            return norm_log_cdf(v);
        case Family::Logistic:
            return -special::softplus(-v);
        case Family::Laplace:
            return (v < 0.0) ? v - std::numbers::ln2 : std::log1p(-0.5 * std::exp(-v));
        case Family::TwoParamExponential:
            if (v <= 0.0) return -kInf;
            return std::log(-std::expm1(-v));
    }
    return -kInf;
}

double std_log_sf(Family family, double v) {
    switch (family) {
        case Family::Normal:
            return norm_log_cdf(-v);
        case Family::Logistic:
            return -special::softplus(v);
        case Family::Laplace:
            return std_log_cdf(Family::Laplace, -v);
        case Family::TwoParamExponential:
            return (v > 0.0) ? -v : 0.0;
    }
    return -kInf;
}

double std_cdf(Family family, double v) { return std::exp(std_log_cdf(family, v)); }

double std_pdf_deriv(Family family, double v) {
    switch (family) {
        case Family::Normal:
            return -v * std_pdf(Family::Normal, v);
        case Family::Logistic: {
            const double f = std_pdf(Family::Logistic, v);
            const double F = std_cdf(Family::Logistic, v);
            return f * (1.0 - 2.0 * F);
        }
        case Family::Laplace:
            if (v == 0.0) return 0.0;  // midpoint of the subdifferential
            return (v > 0.0 ? -0.5 : 0.5) * std::exp(-std::fabs(v));
        case Family::TwoParamExponential:
            return (v > 0.0) ? -std::exp(-v) : 0.0;
    }
    return 0.0;
}

double std_quantile(Family family, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("std_quantile: p not in (0,1)");
    switch (family) {
        case Family::Normal:
            return special::norm_quantile(p);
        case Family::Logistic:
            return std::log(p) - std::log1p(-p);
        case Family::Laplace:
            return (p < 0.5) ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p));
        case Family::TwoParamExponential:
            return -std::log1p(-p);
    }
    return 0.0;
}

double kurtosis(Family family) {
    switch (family) {
        case Family::Normal: return 3.0;
        case Family::Logistic: return 4.2;
        case Family::Laplace: return 6.0;
        case Family::TwoParamExponential: return 9.0;
    }
    return 0.0;
}

double std_sd(Family family) {
    switch (family) {
        case Family::Normal: return 1.0;
        case Family::Logistic: return std::numbers::pi / std::sqrt(3.0);
        case Family::Laplace: return std::numbers::sqrt2;
        case Family::TwoParamExponential: return 1.0;
    }
    return 1.0;
}

double std_mean(Family family) {
    return family == Family::TwoParamExponential ? 1.0 : 0.0;
}

double LocationScaleModel::pdf(double x) const {
    return std_pdf(family, standardize(x)) / sigma;
}

double LocationScaleModel::cdf(double x) const {
    return std_cdf(family, standardize(x));
}

double LocationScaleModel::quantile(double p) const {
    return mu + sigma * std_quantile(family, p);
}

}  // namespace grss
