#include <cmath>
#include <vector>

#include "doctest.h"
#include "grss/estimation.hpp"
#include "grss/rng.hpp"

using namespace grss;

namespace {

struct GridOpt {
    double mu, sigma, dmu, dlogsigma;
};

// Exhaustive 2-D grid search oracle over mu in [mean +/- 5 sd],
// log sigma in [log sd - 3, log sd + 3].
GridOpt grid_search(const GrssDataset& d, Family fam, Mode mode, int cells = 400) {
    double mean = 0.0, sd = 0.0;
    for (const auto& o : d.observations) mean += o.x;
    mean /= d.observations.size();
    for (const auto& o : d.observations) sd += (o.x - mean) * (o.x - mean);
    sd = std::sqrt(sd / (d.observations.size() - 1));
    const double mu_lo = mean - 5.0 * sd, mu_hi = mean + 5.0 * sd;
    const double ls_lo = std::log(sd) - 3.0, ls_hi = std::log(sd) + 3.0;
    GridOpt best{0.0, 1.0, (mu_hi - mu_lo) / (cells - 1), (ls_hi - ls_lo) / (cells - 1)};
    double best_ll = -1e308;
    for (int a = 0; a < cells; ++a) {
        const double mu = mu_lo + best.dmu * a;
        for (int b = 0; b < cells; ++b) {
            const double sigma = std::exp(ls_lo + best.dlogsigma * b);
            const ThetaVector th{mu, sigma};
            const double ll = mode == Mode::GRSS ? grss_loglik(d, fam, th)
                                                 : rss_loglik(d, fam, th);
            if (ll > best_ll) {
                best_ll = ll;
                best.mu = mu;
                best.sigma = sigma;
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("fit_mle matches the grid-search oracle on tiny datasets") {
    RngStream seeds(11);
    for (Family fam : kAllFamilies) {
        for (int k = 0; k < 3; ++k) {
            const GrssDataset d = draw_grss({fam, 2.0, 1.5}, 2, 2, seeds.next_u64());
            const FitResult fit = fit_mle(d, fam, Mode::GRSS);
            REQUIRE(fit.converged);
            const GridOpt g = grid_search(d, fam, Mode::GRSS, 400);
            // The fit must be at least as good as the best grid node, and the
            // best grid node can sit up to a couple of cells from the argmax.
            const double grid_ll = grss_loglik(d, fam, {g.mu, g.sigma});
            CHECK(fit.loglik_at_opt >= grid_ll - 1e-9);
            CHECK(std::fabs(fit.theta_hat.mu - g.mu) <= 2.0 * g.dmu);
            CHECK(std::fabs(std::log(fit.theta_hat.sigma) - std::log(g.sigma)) <=
                  2.0 * g.dlogsigma);
        }
    }
}

TEST_CASE("consistency at large n (Normal GRSS)") {
    const GrssDataset d = draw_grss({Family::Normal, 5.0, 3.0}, 3, 500, 42);
    const FitResult fit = fit_mle(d, Family::Normal, Mode::GRSS);
    REQUIRE(fit.converged);
    CHECK(std::fabs(fit.theta_hat.mu - 5.0) < 0.15);
    CHECK(std::fabs(fit.theta_hat.sigma - 3.0) < 0.15);
}

TEST_CASE("fit equivariance under affine data transforms") {
    const GrssDataset d = draw_grss({Family::Logistic, 1.0, 2.0}, 3, 5, 7);
    const FitResult base = fit_mle(d, Family::Logistic, Mode::GRSS);
    REQUIRE(base.converged);
    const double a = 4.0, b = 2.5;
    GrssDataset t = d;
    for (auto& o : t.observations) o.x = a + b * o.x;
    const FitResult moved = fit_mle(t, Family::Logistic, Mode::GRSS);
    REQUIRE(moved.converged);
    CHECK(moved.theta_hat.mu == doctest::Approx(a + b * base.theta_hat.mu).epsilon(1e-5));
    CHECK(moved.theta_hat.sigma == doctest::Approx(b * base.theta_hat.sigma).epsilon(1e-5));
}

TEST_CASE("stationarity and second-order conditions at interior optima") {
    RngStream seeds(23);
    FitOptions opts;
    for (Family fam : {Family::Normal, Family::Logistic, Family::Laplace}) {
        for (Mode mode : {Mode::RSS, Mode::GRSS}) {
            const GrssDataset d = draw_grss({fam, 0.0, 1.0}, 3, 10, seeds.next_u64());
            const FitResult fit = fit_mle(d, fam, mode, opts);
            REQUIRE(fit.converged);
            if (fit.boundary_hit) {
                // Laplace optimum on a data-point kink: the mu-score jumps
                // through zero instead of vanishing. Certify by sign change.
                REQUIRE(fam == Family::Laplace);
                const double delta = 1e-6 * fit.theta_hat.sigma;
                auto sc_at = [&](double mu) {
                    const ThetaVector th{mu, fit.theta_hat.sigma};
                    return mode == Mode::GRSS ? grss_score(d, fam, th) : rss_score(d, fam, th);
                };
                CHECK(sc_at(fit.theta_hat.mu - delta).d_mu > -1e-4);
                CHECK(sc_at(fit.theta_hat.mu + delta).d_mu < 1e-4);
                CHECK(std::fabs(sc_at(fit.theta_hat.mu).d_sigma) <
                      1e-4 * (1.0 + std::fabs(fit.loglik_at_opt)));
                continue;
            }
            const ScoreVector sc = mode == Mode::GRSS ? grss_score(d, fam, fit.theta_hat)
                                                      : rss_score(d, fam, fit.theta_hat);
            const double tol = opts.score_tolerance * (1.0 + std::fabs(fit.loglik_at_opt));
            CHECK(std::fabs(sc.d_mu) <= tol * 1.01);
            CHECK(std::fabs(sc.d_sigma) <= tol * 1.01);
            // Hessian negative definite
            const auto& H = fit.hessian;
            CHECK(H[0][0] + H[1][1] < 0.0);
            CHECK(H[0][0] * H[1][1] - H[0][1] * H[1][0] > 0.0);
        }
    }
}

TEST_CASE("exponential fits stay below the support boundary") {
    RngStream seeds(29);
    for (int k = 0; k < 10; ++k) {
        const GrssDataset d =
            draw_grss({Family::TwoParamExponential, 5.0, 3.0}, 3, 5, seeds.next_u64());
        const FitResult fit = fit_mle(d, Family::TwoParamExponential, Mode::GRSS);
        REQUIRE(fit.converged);
        double minx = 1e300;
        for (const auto& o : d.observations) minx = std::min(minx, o.x);
        CHECK(fit.theta_hat.mu < minx);
    }
}

TEST_CASE("fit_mle is deterministic") {
    const GrssDataset d = draw_grss({Family::Laplace, 5.0, 3.0}, 3, 5, 31);
    const FitResult a = fit_mle(d, Family::Laplace, Mode::GRSS);
    const FitResult b = fit_mle(d, Family::Laplace, Mode::GRSS);
    CHECK(a.theta_hat.mu == b.theta_hat.mu);
    CHECK(a.theta_hat.sigma == b.theta_hat.sigma);
    CHECK(a.loglik_at_opt == b.loglik_at_opt);
}

TEST_CASE("GRSS beats RSS on average (location MSE, 500 replicates)") {
    double mse_rss = 0.0, mse_grss = 0.0;
    int used = 0;
    for (int k = 0; k < 500; ++k) {
        const std::uint64_t seed = RngStream::derive(4242, {static_cast<std::uint64_t>(k)});
        const GrssDataset d = draw_grss({Family::Normal, 5.0, 3.0}, 3, 5, seed);
        const FitResult fr = fit_mle(d, Family::Normal, Mode::RSS);
        const FitResult fg = fit_mle(d, Family::Normal, Mode::GRSS);
        if (!fr.converged || !fg.converged) continue;
        mse_rss += (fr.theta_hat.mu - 5.0) * (fr.theta_hat.mu - 5.0);
        mse_grss += (fg.theta_hat.mu - 5.0) * (fg.theta_hat.mu - 5.0);
        ++used;
    }
    CHECK(used > 475);
    CHECK(mse_grss < mse_rss);
}

TEST_CASE("fixtures load exactly as printed") {
    const GrssDataset normal = load_fixture(Family::Normal);
    CHECK(normal.m == 3);
    CHECK(normal.r == 5);
    CHECK(normal.observations.size() == 15);
    const auto& first = normal.observations.front();
    CHECK(first.cycle == 1);
    CHECK(first.rank == 1);
    CHECK(first.x == doctest::Approx(4.4474));
    CHECK(first.z == 1);
    const GrssDataset laplace = load_fixture(Family::Laplace);
    bool found = false;
    for (const auto& o : laplace.observations)
        if (o.cycle == 3 && o.rank == 1) {
            CHECK(o.x == doctest::Approx(-6.0655));
            CHECK(o.z == 0);
            found = true;
        }
    CHECK(found);
    for (Family fam : kAllFamilies) {
        const GrssDataset f = load_fixture(fam);
        CHECK(f.observations.size() == 15);
        for (const auto& o : f.observations) {
            CHECK(o.z >= 0);
            CHECK(o.z <= 3);
        }
    }
}

TEST_CASE("bootstrap degenerate and basic properties") {
    const GrssDataset d = load_fixture(Family::Normal);
    const FitResult fit = fit_mle(d, Family::Normal, Mode::GRSS);
    REQUIRE(fit.converged);
    const BootstrapResult a = bootstrap_mse(fit, Family::Normal, 3, 5, 200, 1);
    CHECK(a.mse_mu > 0.0);
    CHECK(a.mse_sigma > 0.0);
    CHECK(a.used + a.dropped == 200);
    // dispersion should be in a sane band for this fixture (Table-2 scale)
    CHECK(a.mse_mu > 0.02);
    CHECK(a.mse_mu < 2.0);
    CHECK_THROWS(bootstrap_mse(FitResult{}, Family::Normal, 3, 5, 10, 1));
}

TEST_CASE("fit_mle rejects degenerate data") {
    GrssDataset d;
    d.m = 2;
    d.r = 1;
    d.observations = {{1.0, 0, 1, 1}, {1.0, 1, 2, 1}};
    CHECK_THROWS(fit_mle(d, Family::Normal, Mode::GRSS));
}
