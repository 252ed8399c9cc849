#include "grss/likelihood.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "grss/special.hpp"

namespace grss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Coefficients of log F and log(1-F) per observation, plus the log of the
// per-observation combinatorial constant.
struct Coeffs {
    double a;       // multiplies log F
    double b;       // multiplies log(1-F)
    double log_c;
};

enum class Part { Grss, Rss, BinomialFactor };

Coeffs coeffs(Part part, const GrssObservation& o, int m) {
    using special::log_binom;
    switch (part) {
        case Part::Grss:
            return {static_cast<double>(o.z + o.rank - 1),
                    static_cast<double>(2 * m - o.z - o.rank),
                    std::log(static_cast<double>(o.rank)) + log_binom(m, o.z) + log_binom(m, o.rank)};
        case Part::Rss:
            return {static_cast<double>(o.rank - 1), static_cast<double>(m - o.rank),
                    std::log(static_cast<double>(o.rank)) + log_binom(m, o.rank)};
        case Part::BinomialFactor:
            return {static_cast<double>(o.z), static_cast<double>(m - o.z), log_binom(m, o.z)};
    }
    return {};
}

bool include_density(Part part) { return part != Part::BinomialFactor; }

double loglik_impl(Part part, const GrssDataset& data, Family family, const ThetaVector& theta) {
    data.validate();
    if (!(theta.sigma > 0.0)) throw std::domain_error("loglik: sigma must be > 0");
    double total = 0.0;
    for (const auto& o : data.observations) {
        const double v = (o.x - theta.mu) / theta.sigma;
        const Coeffs c = coeffs(part, o, data.m);
        const double lF = std_log_cdf(family, v);
        const double lS = std_log_sf(family, v);
        // zero coefficient times log 0 contributes nothing (0^0 = 1 convention)
        if (c.a > 0.0) {
            if (lF == -kInf) return -kInf;
            total += c.a * lF;
        }
        if (c.b > 0.0) {
            if (lS == -kInf) return -kInf;
            total += c.b * lS;
        }
        if (include_density(part)) {
            const double lf = std_log_pdf(family, v);
            if (lf == -kInf) return -kInf;
            total += lf;
        }
        total += c.log_c;
    }
    if (include_density(part)) total -= data.n() * std::log(theta.sigma);
    return total;
}

ScoreVector score_impl(Part part, const GrssDataset& data, Family family,
                       const ThetaVector& theta) {
    data.validate();
    if (!(theta.sigma > 0.0)) throw std::domain_error("score: sigma must be > 0");
    double su = 0.0, ss = 0.0;  // sums over observations, before the 1/sigma factor
    for (const auto& o : data.observations) {
        const double v = (o.x - theta.mu) / theta.sigma;
        const Coeffs c = coeffs(part, o, data.m);
        const double lf = std_log_pdf(family, v);
        double t = 0.0;
        if (c.a > 0.0) {
            const double lF = std_log_cdf(family, v);
            if (lF == -kInf) throw std::domain_error("score: log-likelihood is -inf");
            t -= c.a * std::exp(lf - lF);  // a * f/F
        }
        if (c.b > 0.0) {
            const double lS = std_log_sf(family, v);
            if (lS == -kInf) throw std::domain_error("score: log-likelihood is -inf");
            t += c.b * std::exp(lf - lS);  // b * f/(1-F)
        }
        if (include_density(part)) {
            if (lf == -kInf) throw std::domain_error("score: log-likelihood is -inf");
            t -= std_pdf_deriv(family, v) / std_pdf(family, v);  // f'/f
        }
        su += t;
        ss += v * t;
    }
    if (include_density(part)) ss -= data.n();
    return {su / theta.sigma, ss / theta.sigma};
}

}  // namespace

double grss_loglik(const GrssDataset& data, Family family, const ThetaVector& theta) {
    if (!data.has_z) throw std::invalid_argument("grss_loglik: dataset lacks side counts");
    return loglik_impl(Part::Grss, data, family, theta);
}

double rss_loglik(const RssDataset& data, Family family, const ThetaVector& theta) {
    return loglik_impl(Part::Rss, data, family, theta);
}

double binomial_factor_loglik(const GrssDataset& data, Family family, const ThetaVector& theta) {
    if (!data.has_z) throw std::invalid_argument("binomial_factor_loglik: dataset lacks side counts");
    return loglik_impl(Part::BinomialFactor, data, family, theta);
}

ScoreVector grss_score(const GrssDataset& data, Family family, const ThetaVector& theta) {
    if (!data.has_z) throw std::invalid_argument("grss_score: dataset lacks side counts");
    return score_impl(Part::Grss, data, family, theta);
}

ScoreVector rss_score(const RssDataset& data, Family family, const ThetaVector& theta) {
    return score_impl(Part::Rss, data, family, theta);
}

ScoreVector binomial_factor_score(const GrssDataset& data, Family family,
                                  const ThetaVector& theta) {
    if (!data.has_z) throw std::invalid_argument("binomial_factor_score: dataset lacks side counts");
    return score_impl(Part::BinomialFactor, data, family, theta);
}

}  // namespace grss
