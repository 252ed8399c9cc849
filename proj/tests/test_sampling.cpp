#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "grss/quadrature.hpp"
#include "grss/sampling.hpp"
#include "grss/special.hpp"

using namespace grss;

namespace {

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i; else ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / a.size() -
                                  static_cast<double>(j) / b.size()));
    }
    return d;
}

// Sort-based order statistic draw: the oracle for the beta-quantile sampler.
double sorted_draw(const LocationScaleModel& model, int i, int m, RngStream& rng) {
    std::vector<double> xs(m);
    for (auto& x : xs) x = model.mu + model.sigma * rng.draw(model.family);
    std::nth_element(xs.begin(), xs.begin() + (i - 1), xs.end());
    return xs[i - 1];
}

}  // namespace

TEST_CASE("order statistic of one is a plain draw") {
    LocationScaleModel model{Family::Logistic, 2.0, 0.5};
    RngStream a(42), b(42);
    const double x = draw_order_statistic(model, 1, 1, a);
    const double y = model.mu + model.sigma * std_quantile(model.family, b.uniform());
    CHECK(x == doctest::Approx(y).epsilon(1e-12));
}

TEST_CASE("E[F(X_(i))] = i/(m+1)") {
    LocationScaleModel model{Family::Normal, 0.0, 1.0};
    RngStream rng(101);
    double s = 0.0;
    const int n = 100000;
    for (int k = 0; k < n; ++k) s += model.cdf(draw_order_statistic(model, 2, 3, rng));
    CHECK(s / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("beta-quantile sampler matches sort-based sampler (KS)") {
    for (int i : {1, 3, 5}) {
        const int m = 5;
        LocationScaleModel model{Family::Normal, 0.0, 1.0};
        RngStream r1(7 + i), r2(1007 + i);
        const int n = 10000;
        std::vector<double> a(n), b(n);
        for (int k = 0; k < n; ++k) {
            a[k] = draw_order_statistic(model, i, m, r1);
            b[k] = sorted_draw(model, i, m, r2);
        }
        const double d = ks_statistic(a, b);
        const double crit = 1.628 * std::sqrt(2.0 / n);  // alpha = 0.01
        CHECK(d < crit);
    }
}

TEST_CASE("draw_rss cardinality and max-of-3 mean") {
    LocationScaleModel model{Family::Normal, 0.0, 1.0};
    const RssDataset tiny = draw_rss(model, 1, 10, 5);
    CHECK(tiny.observations.size() == 10);
    CHECK_FALSE(tiny.has_z);

    const int r = 10000;
    const RssDataset data = draw_rss(model, 3, r, 99);
    CHECK(static_cast<int>(data.observations.size()) == 3 * r);
    double s = 0.0;
    for (const auto& o : data.observations)
        if (o.rank == 3) s += o.x;
    // E[max of 3 standard normals] = 0.8463
    CHECK(s / r == doctest::Approx(0.8463).epsilon(0.012));
}

TEST_CASE("z is Bin(m, F(x)) given x") {
    LocationScaleModel model{Family::Laplace, 0.0, 1.0};
    // median observation at m=1: z uniform on {0,1}
    int ones = 0;
    const int n = 100000;
    RngStream rng(11);
    for (int k = 0; k < n; ++k) ones += rng.binomial(1, 0.5);
    CHECK(static_cast<double>(ones) / n == doctest::Approx(0.5).epsilon(0.01));

    // empirical mean of z at fixed x
    const double x = 0.7;
    const int m = 4;
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += rng.binomial(m, model.cdf(x));
    CHECK(std::fabs(s / n - m * model.cdf(x)) < 3.0 * std::sqrt(m / 4.0 / n));
}

TEST_CASE("z_marginal_pmf closed form vs numeric integration oracle") {
    // (i=1, m=1): uniform U, Bin(1,U)
    CHECK(z_marginal_pmf(1, 1, 0) == doctest::Approx(0.5));
    CHECK(z_marginal_pmf(1, 1, 1) == doctest::Approx(0.5));
    // (i=1, m=2) exact values
    CHECK(z_marginal_pmf(1, 2, 0) == doctest::Approx(1.0 / 2.0));
    CHECK(z_marginal_pmf(1, 2, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(z_marginal_pmf(1, 2, 2) == doctest::Approx(1.0 / 6.0));
    // quadrature oracle for a grid of (i, m, z)
    for (int m : {2, 3, 5}) {
        for (int i = 1; i <= m; ++i) {
            double total = 0.0;
            for (int z = 0; z <= m; ++z) {
                const double numeric = integrate_adaptive(
                    [&](double u) {
                        return std::exp(special::log_binom(m, z) + z * std::log(u) +
                                        (m - z) * std::log1p(-u)) *
                               special::beta_pdf_int(i, m - i + 1, u);
                    },
                    0.0, 1.0);
                CHECK(z_marginal_pmf(i, m, z) == doctest::Approx(numeric).epsilon(1e-8));
                total += z_marginal_pmf(i, m, z);
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    CHECK_THROWS(z_marginal_pmf(1, 2, 3));
    CHECK_THROWS(z_marginal_pmf(0, 2, 0));
}

TEST_CASE("ancillarity: empirical z pmf per rank is family- and theta-free") {
    const int m = 3, n_datasets = 20000;
    const double chi2_crit = 11.345;  // df = 3, alpha = 0.01
    for (Family fam : kAllFamilies) {
        for (double sigma : {1.0, 4.0}) {
            LocationScaleModel model{fam, 2.5, sigma};
            std::vector<std::vector<int>> counts(m + 1, std::vector<int>(m + 1, 0));
            for (int k = 0; k < n_datasets; ++k) {
                const std::uint64_t seed = RngStream::derive(
                    777, {static_cast<std::uint64_t>(fam), static_cast<std::uint64_t>(sigma * 8),
                          static_cast<std::uint64_t>(k)});
                for (const auto& o : draw_grss(model, m, 1, seed).observations)
                    ++counts[o.rank][o.z];
            }
            for (int i = 1; i <= m; ++i) {
                double chi2 = 0.0;
                for (int z = 0; z <= m; ++z) {
                    const double expected = n_datasets * z_marginal_pmf(i, m, z);
                    const double diff = counts[i][z] - expected;
                    chi2 += diff * diff / expected;
                }
                CHECK(chi2 < chi2_crit);
            }
        }
    }
}

TEST_CASE("determinism: identical seed gives bit-identical datasets") {
    LocationScaleModel model{Family::Logistic, 5.0, 3.0};
    const GrssDataset a = draw_grss(model, 4, 7, 123456);
    const GrssDataset b = draw_grss(model, 4, 7, 123456);
    REQUIRE(a.observations.size() == b.observations.size());
    for (std::size_t k = 0; k < a.observations.size(); ++k) {
        CHECK(a.observations[k].x == b.observations[k].x);
        CHECK(a.observations[k].z == b.observations[k].z);
    }
    const GrssDataset c = draw_grss(model, 4, 7, 123457);
    bool any_diff = false;
    for (std::size_t k = 0; k < a.observations.size(); ++k)
        any_diff = any_diff || a.observations[k].x != c.observations[k].x;
    CHECK(any_diff);
}

TEST_CASE("dataset validation rejects malformed data") {
    GrssDataset d;
    d.m = 2;
    d.r = 1;
    d.observations = {{0.0, 0, 1, 1}, {1.0, 3, 2, 1}};  // z > m
    CHECK_THROWS(d.validate());
    d.observations = {{0.0, 0, 1, 1}, {1.0, 1, 1, 1}};  // duplicate pair
    CHECK_THROWS(d.validate());
    d.observations = {{0.0, 0, 1, 1}};  // wrong cardinality
    CHECK_THROWS(d.validate());
}
