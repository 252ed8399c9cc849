#pragma once

#include <string>

namespace grss {

enum class Family { Normal, Logistic, Laplace, TwoParamExponential };

inline constexpr Family kAllFamilies[] = {Family::Normal, Family::Logistic,
                                          Family::Laplace, Family::TwoParamExponential};

bool is_symmetric(Family family);
std::string family_name(Family family);
Family family_from_name(const std::string& name);

// Standard (mu=0, sigma=1) forms. The two-parameter exponential's standard
// member is the unit exponential on (0, inf).
double std_pdf(Family family, double v);
double std_cdf(Family family, double v);
double std_log_pdf(Family family, double v);       // -inf outside support
double std_log_cdf(Family family, double v);       // tail-stable
double std_log_sf(Family family, double v);        // log(1 - F), tail-stable
double std_pdf_deriv(Family family, double v);     // f'(v); 0 at the Laplace kink
double std_quantile(Family family, double p);      // p in (0,1)
double kurtosis(Family family);                    // Pearson kurtosis

/// Standard-deviation of the standard member (used for moment-based starts).
double std_sd(Family family);
/// Mean of the standard member.
double std_mean(Family family);

struct LocationScaleModel {
    Family family;
    double mu;
    double sigma;  // > 0

    double standardize(double x) const { return (x - mu) / sigma; }
    double pdf(double x) const;
    double cdf(double x) const;
    double quantile(double p) const;
};

}  // namespace grss
