#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "mwin/errors.hpp"
#include "mwin/matern.hpp"
#include "mwin/specfun.hpp"
#include "oracle/oracle.hpp"

using namespace mwin;

TEST_SUITE("matern")
{
    TEST_CASE("derived parameters")
    {
        const auto p = derive_params(1.0, 0.1, 0.5, 1);
        CHECK(p.kappa == doctest::Approx(10.0).epsilon(1e-15));
        CHECK(p.alpha == 1.0);
        CHECK(p.eta2 == doctest::Approx(0.2).epsilon(1e-13));

        const auto q = derive_params(1.0, 1.0, 1.0, 2);
        CHECK(q.kappa == std::sqrt(2.0));
        CHECK(q.alpha == 2.0);

        const auto r = derive_params(4.0, 0.1, 1.0, 1);
        const double expected = 4.0 * std::sqrt(4.0 * std::numbers::pi) * (0.5 * std::sqrt(std::numbers::pi)) /
                                std::sqrt(200.0);
        CHECK(std::fabs(r.eta2 - expected) / expected <= 1e-12);
        CHECK(r.kappa == std::sqrt(2.0) / 0.1);
    }

    TEST_CASE("eta2 formula across dimensions")
    {
        for (int d = 1; d <= 3; ++d) {
            for (double nu : {0.25, 1.0, 2.5, 50.0}) {
                const auto p = derive_params(2.0, 0.3, nu, d);
                const double expected = 2.0 * std::pow(4.0 * std::numbers::pi, 0.5 * d) *
                                        std::exp(std::lgamma(nu + 0.5 * d) - std::lgamma(nu)) / std::pow(p.kappa, d);
                CHECK(std::fabs(p.eta2 - expected) / expected <= 1e-12);
                CHECK(p.alpha == nu + 0.5 * d);
            }
        }
    }

    TEST_CASE("invalid parameters")
    {
        CHECK_THROWS_AS(derive_params(0.0, 0.1, 1.0, 1), DomainError);
        CHECK_THROWS_AS(derive_params(1.0, -0.1, 1.0, 1), DomainError);
        CHECK_THROWS_AS(derive_params(1.0, 0.1, 0.0, 1), DomainError);
        CHECK_THROWS_AS(derive_params(1.0, 0.1, 1.0, 4), DomainError);
        CHECK_THROWS_AS(derive_params(1.0, 0.1, 1.0, 0), DomainError);
    }

    TEST_CASE("unit matern closed forms")
    {
        for (double x : {0.0, 1e-8, 0.3, 1.0, 5.0, 30.0}) {
            CHECK(unit_matern(0.5, x) == doctest::Approx(std::exp(-x)).epsilon(1e-13));
        }
        CHECK(unit_matern(1.5, 2.0) == doctest::Approx(3.0 * std::exp(-2.0)).epsilon(1e-13));
        CHECK(unit_matern(2.5, 1.0) == doctest::Approx((1.0 + 1.0 + 1.0 / 3.0) * std::exp(-1.0)).epsilon(1e-13));
        for (double nu : {0.25, 1.0, 50.0}) CHECK(unit_matern(nu, 0.0) == 1.0);
    }

    TEST_CASE("unit matern range and monotonicity")
    {
        std::mt19937_64 gen(3);
        std::uniform_real_distribution<double> lt(std::log(1e-4), std::log(200.0));
        for (double nu : {0.25, 0.5, 1.0, 2.5, 10.0, 50.0}) {
            int bad = 0;
            for (int i = 0; i < 10000; ++i) {
                double a = std::exp(lt(gen)), b = std::exp(lt(gen));
                if (a == b) continue;
                if (a > b) std::swap(a, b);
                const double ma = unit_matern(nu, a), mb = unit_matern(nu, b);
                if (!(ma < 1.0 && mb >= 0.0 && ma >= mb)) ++bad;
                if (mb > 0.0 && !(ma > mb)) ++bad;
            }
            CHECK_MESSAGE(bad == 0, "nu = " << nu);
        }
    }

    TEST_CASE("covariance examples")
    {
        const auto p = derive_params(1.0, 0.1, 0.5, 1);
        const std::vector<double> x{0.2}, y{0.3};
        CHECK(matern_cov(p, x, y) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
        CHECK(matern_cov(p, x, x) == 1.0);

        const auto q = derive_params(1.0, 0.1, 1.0, 1);
        const double t = std::sqrt(2.0);
        CHECK(matern_cov(q, x, y) == doctest::Approx(t * oracle::bessel_k(1.0, t)).epsilon(1e-12));
        CHECK(matern_cov(q, x, y) == matern_cov(q, y, x));

        const auto r = derive_params(3.0, 0.2, 1.0, 2);
        const std::vector<double> a{0.1, 0.4};
        CHECK(matern_cov(r, a, a) == 3.0);
        CHECK_THROWS_AS(matern_cov(r, a, x), DomainError);
    }

    TEST_CASE("lower bound by the exponential for nu >= 1/2")
    {
        std::mt19937_64 gen(5);
        std::uniform_real_distribution<double> nu_d(0.5, 10.0), lt(std::log(1e-3), std::log(30.0));
        int bad = 0;
        for (int i = 0; i < 10000; ++i) {
            const double nu = nu_d(gen), t = std::exp(lt(gen));
            if (unit_matern(nu, t) < std::exp(-t) * (1.0 - 1e-12)) ++bad;
        }
        CHECK(bad == 0);
    }

    TEST_CASE("logarithmic subadditivity")
    {
        std::mt19937_64 gen(9);
        std::uniform_real_distribution<double> hi(0.5, 10.0), lo(1e-3, 0.5), lt(std::log(1e-3), std::log(30.0));
        int bad = 0, bad_mixed = 0;
        for (int i = 0; i < 10000; ++i) {
            double x = std::exp(lt(gen)), y = std::exp(lt(gen));
            if (x > y) std::swap(x, y);
            const double nu = hi(gen);
            if (unit_matern(nu, x + y) > unit_matern(nu, x) * unit_matern(nu, y) * (1.0 + 1e-12)) ++bad;
            const double mu = lo(gen);
            if (unit_matern(mu, x + y) > unit_matern(mu, x) * std::exp(-y) * (1.0 + 1e-12)) ++bad_mixed;
        }
        CHECK(bad == 0);
        CHECK(bad_mixed == 0);
    }

    TEST_CASE("ratio inequality for nu <= 1/2")
    {
        std::mt19937_64 gen(13);
        std::uniform_real_distribution<double> nu_d(1e-3, 0.5), lt(std::log(1e-3), std::log(30.0));
        int bad = 0;
        for (int i = 0; i < 10000; ++i) {
            const double nu = nu_d(gen);
            double x = std::exp(lt(gen)), y = std::exp(lt(gen));
            if (x > y) std::swap(x, y);
            const double lhs = specfun::log_bessel_k(nu, x) - specfun::log_bessel_k(nu, y);
            const double rhs = nu * std::log(y / x) + (y - x);
            if (lhs < rhs - 1e-12 * std::max(1.0, std::fabs(rhs))) ++bad;
        }
        CHECK(bad == 0);
    }

    TEST_CASE("anisotropic metric")
    {
        const auto iso = AnisoMetric::isotropic(2, 0.3);
        const auto p = derive_params(2.0, 0.3, 1.5, 2);
        const std::vector<double> x{0.1, 0.2}, y{0.4, -0.3};
        CHECK(matern_cov_aniso(2.0, 1.5, iso, x, y) == doctest::Approx(matern_cov(p, x, y)).epsilon(1e-14));

        const double c = std::cos(0.7), s = std::sin(0.7);
        Eigen::MatrixXd rot(2, 2);
        rot << c, -s, s, c;
        Eigen::VectorXd scales(2);
        scales << 0.1, 0.25;
        const auto m = AnisoMetric::from_factors(rot, scales);
        CHECK((m.theta() - m.theta().transpose()).cwiseAbs().maxCoeff() <= 1e-14);
        const Eigen::MatrixXd rebuilt = m.rotation() * scales.cwiseAbs2().asDiagonal() * m.rotation().transpose();
        CHECK((rebuilt - m.theta()).cwiseAbs().maxCoeff() <= 1e-12);

        const auto m2 = AnisoMetric::from_theta(m.theta());
        CHECK(m2.rho_max() == doctest::Approx(0.25).epsilon(1e-13));
        CHECK(matern_cov_aniso(1.0, 1.0, m2, x, y) == doctest::Approx(matern_cov_aniso(1.0, 1.0, m, x, y)).epsilon(1e-12));

        // Rotating both the offset and the metric leaves the value unchanged.
        Eigen::MatrixXd q(2, 2);
        q << std::cos(1.9), -std::sin(1.9), std::sin(1.9), std::cos(1.9);
        const auto mq = AnisoMetric::from_factors(q * rot, scales);
        Eigen::Vector2d v(x[0] - y[0], x[1] - y[1]);
        const Eigen::Vector2d qv = q * v;
        const std::vector<double> zero{0.0, 0.0}, off{qv[0], qv[1]};
        CHECK(matern_cov_aniso(1.0, 1.0, mq, off, zero) ==
              doctest::Approx(matern_cov_aniso(1.0, 1.0, m, x, y)).epsilon(1e-12));

        Eigen::VectorXd diag(2);
        diag << 0.1, 0.4;
        const auto md = AnisoMetric::from_factors(Eigen::MatrixXd::Identity(2, 2), diag);
        const std::vector<double> a{0.3, 0.5}, b{0.45, 0.5};
        const auto p1 = derive_params(1.0, 0.1, 1.0, 1);
        const std::vector<double> a1{0.3}, b1{0.45};
        CHECK(matern_cov_aniso(1.0, 1.0, md, a, b) == doctest::Approx(matern_cov(p1, a1, b1)).epsilon(1e-13));

        Eigen::MatrixXd singular(2, 2);
        singular << 1.0, 1.0, 1.0, 1.0;
        CHECK_THROWS_AS(AnisoMetric::from_theta(singular), DomainError);
    }

    TEST_CASE("decay-rate function")
    {
        const double kappa = std::sqrt(0.5) / 0.1;
        CHECK(f_func(0.25, kappa, 0.3) == doctest::Approx(std::exp(-kappa * 0.3)).epsilon(1e-13));
        CHECK(f_func(1.0, 5.0, 0.2) == doctest::Approx(unit_matern(1.0, 1.0)).epsilon(1e-15));
        CHECK(f_func(0.5, 10.0, 0.1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
        CHECK(f_func(3.0, 2.0, 1.0) < 1.0);
        CHECK_THROWS_AS(f_func(1.0, 1.0, 0.0), DomainError);
    }

    TEST_CASE("radiation residual decays")
    {
        for (double nu : {0.5, 1.0, 2.0}) {
            const double kappa = 3.0;
            CHECK(std::fabs(radiation_residual(nu, kappa, 40.0 / kappa)) <= 1e-12);
            CHECK(std::fabs(radiation_residual(nu, kappa, 40.0 / kappa)) <
                  std::fabs(radiation_residual(nu, kappa, 2.0 / kappa)) + 1e-300);
        }
        CHECK(std::fabs(radiation_residual(0.5, 2.0, 0.7)) <= 1e-14);
    }

    TEST_CASE("euclidean norm")
    {
        const std::vector<double> a{-3.0}, b{3.0, 4.0}, c{1.0, 2.0, 2.0};
        CHECK(euclidean_norm(a) == 3.0);
        CHECK(euclidean_norm(b) == 5.0);
        CHECK(euclidean_norm(c) == doctest::Approx(3.0).epsilon(1e-15));
    }
}
