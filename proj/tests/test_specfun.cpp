#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mwin/errors.hpp"
#include "mwin/specfun.hpp"
#include "oracle/oracle.hpp"

using namespace mwin;
using specfun::bessel_k;
using specfun::ln_gamma;

TEST_SUITE("specfun")
{
    TEST_CASE("ln_gamma exact points")
    {
        CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(std::fabs(ln_gamma(1.0)) < 1e-15);
        CHECK(ln_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
        CHECK(ln_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    }

    TEST_CASE("ln_gamma relative accuracy on [0.5, 100]")
    {
        // Γ(n + 1/2) = (2n)! √π / (4^n n!) and Γ(n) = (n-1)!, summed in log form.
        double log_fact = 0.0;  // ln (n-1)!
        double worst = 0.0;
        for (int n = 1; n <= 100; ++n) {
            if (n > 1) log_fact += std::log(static_cast<double>(n - 1));
            worst = std::max(worst, std::fabs(ln_gamma(n) - log_fact) / std::max(1.0, std::fabs(log_fact)));
        }
        double log_half = 0.5 * std::log(std::numbers::pi);  // ln Γ(1/2)
        for (int n = 0; n < 100; ++n) {
            const double x = n + 0.5;
            if (std::fabs(log_half) > 0.1) worst = std::max(worst, std::fabs(ln_gamma(x) - log_half) / std::fabs(log_half));
            log_half += std::log(x);
        }
        CHECK(worst <= 1e-13);
    }

    TEST_CASE("ln_gamma rejects non-positive arguments")
    {
        CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
        CHECK_THROWS_AS(ln_gamma(-1.5), DomainError);
        CHECK_THROWS_AS(ln_gamma(std::nan("")), DomainError);
    }

    TEST_CASE("reciprocal gamma series against tgamma")
    {
        for (double mu = -0.5; mu <= 0.5; mu += 0.01) {
            CHECK(specfun::rgamma1p(mu) == doctest::Approx(1.0 / std::tgamma(1.0 + mu)).epsilon(1e-14));
        }
    }

    TEST_CASE("half-order closed form")
    {
        const double expected = std::sqrt(std::numbers::pi / 4.0) * std::exp(-2.0);
        CHECK(bessel_k(0.5, 2.0).value == doctest::Approx(expected).epsilon(1e-14));
        CHECK(bessel_k(0.5, 2.0).value == doctest::Approx(0.1199377).epsilon(1e-6));
        for (double x : {1e-6, 0.3, 1.0, 7.0, 45.0}) {
            CHECK(bessel_k(0.5, x).log_value ==
                  doctest::Approx(0.5 * std::log(std::numbers::pi / (2.0 * x)) - x).epsilon(1e-13));
        }
    }

    TEST_CASE("order reflection")
    {
        CHECK(bessel_k(-1.0, 1.0).value == bessel_k(1.0, 1.0).value);
        std::mt19937_64 gen(7);
        std::uniform_real_distribution<double> nu_d(1e-6, 3.0), x_d(1e-6, 20.0);
        for (int i = 0; i < 1000; ++i) {
            const double nu = nu_d(gen), x = x_d(gen);
            const double a = bessel_k(nu, x).value, b = bessel_k(-nu, x).value;
            CHECK(std::fabs(a - b) / a <= 1e-12);
        }
    }

    TEST_CASE("K_1(1) against the quadrature oracle")
    {
        const double oracle = oracle::bessel_k(1.0, 1.0);
        CHECK(oracle == doctest::Approx(0.601907).epsilon(1e-6));
        CHECK(bessel_k(1.0, 1.0).value == doctest::Approx(oracle).epsilon(1e-12));
    }

    TEST_CASE("strictly positive and decreasing in x")
    {
        std::mt19937_64 gen(11);
        std::uniform_real_distribution<double> nu_d(0.0, 60.0), lx(std::log(1e-6), std::log(50.0));
        int violations = 0;
        for (int i = 0; i < 10000; ++i) {
            const double nu = nu_d(gen);
            double x1 = std::exp(lx(gen)), x2 = std::exp(lx(gen));
            if (x1 == x2) continue;
            if (x1 > x2) std::swap(x1, x2);
            const auto a = bessel_k(nu, x1), b = bessel_k(nu, x2);
            if (!(a.log_value > b.log_value)) ++violations;
            if (a.value < 0.0 || b.value <= 0.0) ++violations;
        }
        CHECK(violations == 0);
    }

    TEST_CASE("log scale survives large orders and tiny arguments")
    {
        const auto k = bessel_k(50.0, 1e-6);
        CHECK(std::isfinite(k.log_value));
        // K_ν(x) ~ Γ(ν) 2^{ν-1} x^{-ν} as x -> 0
        const double asym = ln_gamma(50.0) + 49.0 * std::numbers::ln2 - 50.0 * std::log(1e-6);
        CHECK(k.log_value == doctest::Approx(asym).epsilon(1e-10));
        CHECK(bessel_k(300.0, 1e-3).log_value > 2000.0);
    }

    TEST_CASE("oracle equivalence on a log-spaced grid")
    {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            for (int j = 0; j < 50; ++j) {
                const double nu = i == 0 ? 0.0 : 0.05 * std::pow(60.0 / 0.05, (i - 1) / 48.0);
                const double x = 1e-6 * std::pow(50.0 / 1e-6, j / 49.0);
                const double rel = std::fabs(std::expm1(bessel_k(nu, x).log_value - oracle::log_bessel_k(nu, x)));
                worst = std::max(worst, rel);
            }
        }
        CHECK(worst <= 1e-10);
    }

    TEST_CASE("domain errors")
    {
        CHECK_THROWS_AS(bessel_k(1.0, 0.0), DomainError);
        CHECK_THROWS_AS(bessel_k(1.0, -2.0), DomainError);
        CHECK_THROWS_AS(bessel_k(std::nan(""), 1.0), DomainError);
    }
}
