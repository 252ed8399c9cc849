#pragma once

#include "grss/distributions.hpp"
#include "grss/sampling.hpp"

namespace grss {

struct ThetaVector {
    double mu;
    double sigma;  // > 0
};

struct ScoreVector {
    double d_mu;
    double d_sigma;
};

// Log-likelihoods include the combinatorial constant, so the exact
// decomposition  grss = rss + binomial factor  holds term by term.
// Both return -inf when any observation falls outside the support implied
// by theta or a positive coefficient multiplies log 0.
double grss_loglik(const GrssDataset& data, Family family, const ThetaVector& theta);
double rss_loglik(const RssDataset& data, Family family, const ThetaVector& theta);

/// Log-likelihood of the binomial side-count factor alone: sum of
/// log C(m,z) + z log F(v) + (m-z) log(1-F(v)).
double binomial_factor_loglik(const GrssDataset& data, Family family, const ThetaVector& theta);

// Analytic score vectors; only valid where the log-likelihood is finite
// (throws std::domain_error otherwise).
ScoreVector grss_score(const GrssDataset& data, Family family, const ThetaVector& theta);
ScoreVector rss_score(const RssDataset& data, Family family, const ThetaVector& theta);
ScoreVector binomial_factor_score(const GrssDataset& data, Family family, const ThetaVector& theta);

}  // namespace grss
