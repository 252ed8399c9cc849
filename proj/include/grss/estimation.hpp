#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "grss/likelihood.hpp"
#include "grss/sampling.hpp"

namespace grss {

enum class Mode { RSS, GRSS };

std::string mode_name(Mode mode);

struct FitOptions {
    double score_tolerance = 1e-8;
    int max_iterations = 200;
    int multistart_count = 5;
    double boundary_gap = 1e-6;  // exponential only
};

struct FitResult {
    ThetaVector theta_hat{0.0, 1.0};
    Mode mode = Mode::GRSS;
    bool converged = false;
    double loglik_at_opt = 0.0;
    std::array<std::array<double, 2>, 2> hessian{};  // second differences at the optimum
    std::optional<std::pair<double, double>> std_errors;
    int iterations = 0;
    bool boundary_hit = false;
};

/// Maximum-likelihood fit of (mu, sigma) by quasi-Newton search in (mu, log sigma)
/// with analytic scores and deterministic multistarts. Never fabricates an
/// estimate: all starts failing yields converged = false.
FitResult fit_mle(const GrssDataset& data, Family family, Mode mode,
                  const FitOptions& opts = {});

struct BootstrapResult {
    double mse_mu = 0.0;
    double mse_sigma = 0.0;
    int used = 0;
    int dropped = 0;
};

/// Parametric bootstrap dispersion about the original estimate,
/// (1/(B-1)) * sum (theta_b - theta_hat)^2 per parameter.
/// strict_normal resamples from Normal(mu_hat, sigma_hat) regardless of family.
BootstrapResult bootstrap_mse(const FitResult& fit, Family family, int m, int r, int B,
                              std::uint64_t seed, const FitOptions& opts = {},
                              bool strict_normal = false);

/// The four m=3, r=5 benchmark datasets, keyed by their parent family.
GrssDataset load_fixture(Family family);

}  // namespace grss
