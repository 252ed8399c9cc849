#include <cmath>

#include "doctest.h"
#include "grss/distributions.hpp"
#include "grss/rng.hpp"

using namespace grss;

TEST_CASE("standard pdf spot values") {
    CHECK(std_pdf(Family::Normal, 0.0) == doctest::Approx(0.3989423).epsilon(1e-6));
    CHECK(std_pdf(Family::Laplace, 0.0) == doctest::Approx(0.5));
    CHECK(std_pdf(Family::Logistic, 0.0) == doctest::Approx(0.25));
    CHECK(std_pdf(Family::TwoParamExponential, -0.5) == 0.0);
    CHECK(std_pdf(Family::TwoParamExponential, 1.0) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("standard cdf spot values") {
    CHECK(std_cdf(Family::Normal, 0.0) == doctest::Approx(0.5));
    CHECK(std_cdf(Family::TwoParamExponential, std::log(2.0)) == doctest::Approx(0.5));
    CHECK(std_cdf(Family::Logistic, 2.0) == doctest::Approx(0.8807971).epsilon(1e-6));
}

TEST_CASE("pdf derivative spot values") {
    CHECK(std_pdf_deriv(Family::Normal, 0.0) == doctest::Approx(0.0));
    CHECK(std_pdf_deriv(Family::Logistic, 0.0) == doctest::Approx(0.0));
    // f'(1) = -phi(1) for the normal
    CHECK(std_pdf_deriv(Family::Normal, 1.0) == doctest::Approx(-0.2419707).epsilon(1e-6));
    CHECK(std_pdf_deriv(Family::Laplace, 0.0) == 0.0);  // kink convention
}

TEST_CASE("quantile spot values") {
    CHECK(std_quantile(Family::Normal, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std_quantile(Family::TwoParamExponential, 1.0 - std::exp(-1.0)) == doctest::Approx(1.0));
    // solve 0.5 e^v = 0.25 analytically: v = -ln 2
    CHECK(std_quantile(Family::Laplace, 0.25) == doctest::Approx(-0.6931472).epsilon(1e-6));
    CHECK_THROWS(std_quantile(Family::Normal, 0.0));
    CHECK_THROWS(std_quantile(Family::Normal, 1.0));
}

TEST_CASE("standardize and location-scale model") {
    LocationScaleModel model{Family::Normal, 5.0, 3.0};
    CHECK(model.standardize(5.0) == doctest::Approx(0.0));
    CHECK(model.standardize(8.0) == doctest::Approx(1.0));
    LocationScaleModel exp_model{Family::TwoParamExponential, 5.0, 3.0};
    CHECK(exp_model.standardize(4.0) == doctest::Approx(-1.0 / 3.0));
    CHECK(exp_model.pdf(4.0) == 0.0);  // outside support
}

TEST_CASE("kurtosis table values") {
    CHECK(kurtosis(Family::Normal) == doctest::Approx(3.0));
    CHECK(kurtosis(Family::Logistic) == doctest::Approx(4.2));
    CHECK(kurtosis(Family::Laplace) == doctest::Approx(6.0));
    CHECK(kurtosis(Family::TwoParamExponential) == doctest::Approx(9.0));
}

TEST_CASE("symmetry of symmetric families") {
    for (Family fam : {Family::Normal, Family::Logistic, Family::Laplace}) {
        for (double v = -20.0; v <= 20.0; v += 0.37) {
            CHECK(std_pdf(fam, v) == doctest::Approx(std_pdf(fam, -v)).epsilon(1e-12));
            CHECK(std_cdf(fam, -v) == doctest::Approx(1.0 - std_cdf(fam, v)).epsilon(1e-9));
        }
    }
}

TEST_CASE("cdf derivative matches pdf by central differences") {
    RngStream rng(7);
    for (Family fam : kAllFamilies) {
        for (int k = 0; k < 1000; ++k) {
            const double u = 0.001 + 0.998 * rng.uniform();
            const double v = std_quantile(fam, u);
            const double h = 1e-6 * (1.0 + std::fabs(v));
            const double fd = (std_cdf(fam, v + h) - std_cdf(fam, v - h)) / (2.0 * h);
            CHECK(fd == doctest::Approx(std_pdf(fam, v)).epsilon(1e-6));
        }
    }
}

TEST_CASE("quantile inverts cdf") {
    RngStream rng(8);
    for (Family fam : kAllFamilies) {
        for (int k = 0; k < 1000; ++k) {
            const double u = rng.uniform();
            const double v = std_quantile(fam, u);
            CHECK(std_cdf(fam, v) == doctest::Approx(u).epsilon(1e-9));
            CHECK(std_quantile(fam, std_cdf(fam, v)) == doctest::Approx(v).epsilon(1e-8));
        }
    }
}

TEST_CASE("pdf derivative matches finite differences away from kinks") {
    RngStream rng(9);
    for (Family fam : kAllFamilies) {
        for (int k = 0; k < 500; ++k) {
            const double u = 0.001 + 0.998 * rng.uniform();
            const double v = std_quantile(fam, u);
            if (fam == Family::Laplace && std::fabs(v) < 1e-2) continue;
            if (fam == Family::TwoParamExponential && v < 1e-2) continue;
            const double h = 1e-5 * (1.0 + std::fabs(v));
            const double fd = (std_pdf(fam, v + h) - std_pdf(fam, v - h)) / (2.0 * h);
            CHECK(fd == doctest::Approx(std_pdf_deriv(fam, v)).epsilon(1e-5));
        }
    }
}

TEST_CASE("tail-stable log cdf and survival") {
    // finite and monotone far into the tails
    for (Family fam : {Family::Normal, Family::Logistic}) {
        double prev = std_log_cdf(fam, -200.0);
        CHECK(std::isfinite(prev));
        for (double v = -190.0; v <= -30.0; v += 10.0) {
            const double cur = std_log_cdf(fam, v);
            CHECK(std::isfinite(cur));
            CHECK(cur > prev);
            prev = cur;
        }
        CHECK(std_log_sf(fam, 250.0) < -200.0);
        CHECK(std::isfinite(std_log_sf(fam, 250.0)));
    }
    // normal asymptotic branch agrees with erfc where both are valid
    CHECK(std_log_cdf(Family::Normal, -36.5) ==
          doctest::Approx(std::log(0.5 * std::erfc(36.5 / std::sqrt(2.0)))).epsilon(1e-10));
}

TEST_CASE("sample kurtosis matches the family constant within 10%") {
    for (Family fam : kAllFamilies) {
        RngStream rng(RngStream::derive(1234, {static_cast<std::uint64_t>(fam)}));
        const int n = 1000000;
        double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
        for (int k = 0; k < n; ++k) {
            const double x = rng.draw(fam);
            s1 += x;
            s2 += x * x;
            s3 += x * x * x;
            s4 += x * x * x * x;
        }
        s1 /= n; s2 /= n; s3 /= n; s4 /= n;
        const double var = s2 - s1 * s1;
        const double m4 = s4 - 4 * s3 * s1 + 6 * s2 * s1 * s1 - 3 * s1 * s1 * s1 * s1;
        const double kurt = m4 / (var * var);
        CHECK(kurt == doctest::Approx(kurtosis(fam)).epsilon(0.10));
    }
}
