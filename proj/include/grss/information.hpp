#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "grss/distributions.hpp"
#include "grss/likelihood.hpp"

namespace grss {

enum class InfoRole { SRS, Delta, X, ZgivenX, Total };
enum class CoefficientRule { PaperRMinus1, ChenMMinus1 };
enum class CondInfoMethod { Formula, MonteCarlo };

struct InfoMatrix {
    std::array<std::array<double, 2>, 2> entries{};  // ordered (mu, sigma)
    InfoRole role = InfoRole::SRS;

    double operator()(int i, int j) const { return entries[i][j]; }
    InfoMatrix scaled(double factor) const;
    InfoMatrix plus(const InfoMatrix& other, InfoRole new_role) const;
};

struct AbcConstants {
    double a;
    double b;
    double c;
    int m;
};

/// Per-observation SRS Fisher information of the location-scale family.
InfoMatrix srs_fisher(Family family, const ThetaVector& theta);

/// The per-unit RSS information gain matrix (f^2/(F(1-F)) expectations).
/// Not integrable in the mu entries for the exponential family (throws).
InfoMatrix delta_matrix(Family family, const ThetaVector& theta);

/// Scale-only exponential subfamily gain: E[v^2 f^2 / (F(1-F))] / sigma^2.
double one_param_exponential_delta(double sigma);

/// I_X = mr * I_SRS + mr * k * Delta, with k = m-1 (Chen) or r-1 (as printed).
InfoMatrix rss_fisher(Family family, const ThetaVector& theta, int m, int r,
                      CoefficientRule rule = CoefficientRule::ChenMMinus1);

/// A, B, C constants: order-statistic expectations of the printed integrands,
/// summed over ranks i = 1..m.
AbcConstants abc_constants(Family family, int m);

/// I_{Z|X}: Formula assembles [[mrA, mrC],[mrC, mrB]]/sigma^2; MonteCarlo
/// estimates the covariance of the binomial-factor score over mc_datasets
/// simulated datasets (definitionally correct, used as the oracle).
InfoMatrix conditional_info(Family family, const ThetaVector& theta, int m, int r,
                            CondInfoMethod method = CondInfoMethod::Formula,
                            int mc_datasets = 200000, std::uint64_t mc_seed = 20240901);

struct TotalInfo {
    InfoMatrix total;      // I_D = I_X + I_{Z|X}, whole-sample scaling (n = mr)
    double se_mu;          // sqrt of inverse-information diagonal for mu-hat
    double se_sigma;
};

TotalInfo total_info_and_se(Family family, const ThetaVector& theta, int m, int r,
                            CoefficientRule rule = CoefficientRule::ChenMMinus1,
                            CondInfoMethod method = CondInfoMethod::Formula);

}  // namespace grss
