#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "mwin/bounds.hpp"
#include "mwin/errors.hpp"
#include "oracle/oracle.hpp"

using namespace mwin;

namespace {

// Independent transcription of A = (2^d − 1)(1 + 2^d d! f / (1 − f)^d).
double reference_a(int d, double f)
{
    double fact = 1.0;
    for (int i = 2; i <= d; ++i) fact *= i;
    const double two_d = std::ldexp(1.0, d);
    return (two_d - 1.0) * (1.0 + two_d * fact * f / std::pow(1.0 - f, d));
}

}  // namespace

TEST_SUITE("bounds")
{
    TEST_CASE("lattice sum against brute force")
    {
        const auto p = derive_params(1.0, 0.1, 1.0, 2);
        const auto box = BoxDomain::cubic(2, 0.2, 1.0);
        const auto s = lattice_sum(p, box);
        const double brute = oracle::lattice_sum(p, box, 200);
        CHECK(std::fabs(s.value - brute) <= s.tail_bound + 1e-15 * brute);
        CHECK(s.tail_bound <= 1e-13 * s.value);

        const auto p3 = derive_params(1.0, 0.5, 0.5, 3);
        const auto box3 = BoxDomain::cubic(3, 0.1, 1.0);
        const auto s3 = lattice_sum(p3, box3);
        CHECK(std::fabs(s3.value - oracle::lattice_sum(p3, box3, 60)) <= s3.tail_bound + 1e-13 * s3.value);
    }

    TEST_CASE("corollary bound in one dimension")
    {
        const auto p = derive_params(1.0, 0.1, 1.0, 1);
        const auto box = BoxDomain::cubic(1, 0.3, 1.0);
        double series = 0.0;
        for (int k = 1; k <= 50; ++k) series += matern_radial(p, k * 1.3);
        const double expected = matern_radial(p, 0.3) + 2.0 * series;
        CHECK(corollary_bound(p, 0.3, box) == doctest::Approx(expected).epsilon(1e-13));
        CHECK(corollary_bound(p, 0.3, box) >= expected);
        CHECK(dirichlet_bound(p, 0.3, box) == doctest::Approx(matern_radial(p, 0.3) + series).epsilon(1e-13));
    }

    TEST_CASE("corollary bound for a large box")
    {
        const auto p = derive_params(1.0, 0.1, 1.0, 2);
        const auto box = BoxDomain::rectangular(0.2, 1.0, {40.0, 40.0});
        CHECK(corollary_bound(p, 0.2, box) == doctest::Approx(3.0 * matern_radial(p, 0.2)).epsilon(1e-12));
    }

    TEST_CASE("two-dimensional bound values against brute force")
    {
        const auto p = derive_params(1.0, 0.1, 1.0, 2);
        const auto box = BoxDomain::cubic(2, 0.2, 1.0);
        const double c = matern_radial(p, 0.2);
        const double lattice = oracle::lattice_sum(p, box, 200);
        CHECK(corollary_bound(p, 0.2, box) == doctest::Approx(3.0 * c + 4.0 * lattice).epsilon(1e-13));
        CHECK(dirichlet_bound(p, 0.2, box) == doctest::Approx(2.0 * (c + lattice)).epsilon(1e-13));
        CHECK(dirichlet_bound(p, 0.2, box) <= corollary_bound(p, 0.2, box));
    }

    TEST_CASE("constant A")
    {
        for (int d = 1; d <= 3; ++d) {
            for (double nu : {0.25, 1.0, 50.0}) {
                const auto p = derive_params(1.0, 0.1, nu, d);
                for (double ell : {0.05, 0.3, 1.0, 3.0}) {
                    const double f = f_func(nu, p.kappa, ell);
                    CHECK(constant_a(p, ell) == doctest::Approx(reference_a(d, f)).epsilon(1e-14));
                }
                double prev = constant_a(p, 0.01);
                for (double ell = 0.02; ell < 5.0; ell += 0.01) {
                    const double a = constant_a(p, ell);
                    CHECK(a <= prev);
                    CHECK(a >= std::ldexp(1.0, d) - 1.0);
                    prev = a;
                }
                CHECK(constant_a(p, 100.0) == doctest::Approx(std::ldexp(1.0, d) - 1.0).epsilon(1e-14));
            }
        }
        CHECK_THROWS_AS(constant_a(derive_params(1.0, 0.1, 1.0, 1), 0.0), DomainError);
    }

    TEST_CASE("main bound examples")
    {
        const auto p = derive_params(1.0, 0.1, 0.5, 1);
        const auto r = main_bound(p, 0.3, 1.0);
        const double f = std::exp(-10.0);
        CHECK(r.f_ell == doctest::Approx(f).epsilon(1e-13));
        CHECK(r.A == doctest::Approx(1.0 + 2.0 * f / (1.0 - f)).epsilon(1e-14));
        CHECK(r.main_bound == doctest::Approx(r.A * std::exp(-3.0)).epsilon(1e-13));

        const auto p2 = derive_params(1.0, 0.1, 1.0, 2);
        const auto r2 = main_bound(p2, 0.2, 1.0);
        const double f2 = unit_matern(1.0, p2.kappa);
        CHECK(r2.A == doctest::Approx(reference_a(2, f2)).epsilon(1e-14));
        CHECK(r2.main_bound == doctest::Approx(reference_a(2, f2) * unit_matern(1.0, 0.2 * p2.kappa)).epsilon(1e-13));
        CHECK(r2.corollary_bound <= r2.main_bound);
        CHECK(r2.dirichlet_bound <= r2.main_bound);
    }

    TEST_CASE("report invariants across parameters")
    {
        for (int d = 1; d <= 3; ++d) {
            for (double nu : {0.25, 1.0, 50.0}) {
                for (double rho : {0.1, 1.0}) {
                    const auto p = derive_params(1.3, rho, nu, d);
                    for (double delta : {0.0, 0.01, 0.1, 0.5}) {
                        const auto r = main_bound(p, delta, 1.0);
                        CHECK(r.corollary_bound <= r.main_bound * (1.0 + 1e-12));
                        CHECK(r.dirichlet_bound <= r.corollary_bound);
                        CHECK(r.f_ell > 0.0);
                        CHECK(r.f_ell < 1.0);
                    }
                }
            }
        }
    }

    TEST_CASE("anisotropic bound")
    {
        const auto iso = AnisoMetric::isotropic(2, 0.15);
        const auto p = derive_params(1.0, 0.15, 1.0, 2);
        const auto a = aniso_bound(1.0, 1.0, iso, 0.2, 1.0, 2);
        CHECK(a.main_bound == doctest::Approx(main_bound(p, 0.2, 1.0).main_bound).epsilon(1e-14));

        Eigen::VectorXd scales(2);
        scales << 0.1, 0.2;
        const auto m = AnisoMetric::from_factors(Eigen::MatrixXd::Identity(2, 2), scales);
        const auto r = aniso_bound(1.0, 1.0, m, 0.3, 1.0, 2);
        const double kappa = std::sqrt(2.0) / 0.2;
        const double expected = reference_a(2, unit_matern(1.0, kappa)) * unit_matern(1.0, kappa * 0.3);
        CHECK(r.main_bound == doctest::Approx(expected).epsilon(1e-13));

        scales << 0.1, 0.4;
        const auto wider = aniso_bound(1.0, 1.0, AnisoMetric::from_factors(Eigen::MatrixXd::Identity(2, 2), scales),
                                       0.3, 1.0, 2);
        CHECK(wider.main_bound >= r.main_bound);
    }

    TEST_CASE("geometric domination of the lattice terms")
    {
        std::mt19937_64 gen(21);
        std::uniform_real_distribution<double> nu_d(0.1, 10.0), rho_d(0.05, 2.0), len_d(0.1, 3.0);
        int bad = 0;
        for (int t = 0; t < 300; ++t) {
            const auto p = derive_params(1.0, rho_d(gen), nu_d(gen), 1);
            const double len = len_d(gen);
            const double c1 = matern_radial(p, len), f = f_func(p.nu, p.kappa, len);
            for (int k = 1; k <= 50; ++k) {
                const double ck = matern_radial(p, k * len);
                const double dom = c1 * std::pow(f, k - 1);
                if (ck > dom * (1.0 + 1e-12) && ck > 1e-300) ++bad;
            }
        }
        CHECK(bad == 0);
    }

    TEST_CASE("eulerian numbers")
    {
        CHECK(eulerian(1, 0) == 1);
        CHECK(eulerian(3, 1) == 4);
        CHECK(eulerian(4, 1) == 11);
        CHECK(eulerian(5, 2) == 66);
        std::uint64_t fact = 1;
        for (int n = 1; n <= 8; ++n) {
            fact *= n;
            std::uint64_t row = 0;
            for (int k = 0; k < n; ++k) row += eulerian(n, k);
            CHECK(row == fact);
        }
    }

    TEST_CASE("power series closed form")
    {
        for (int d = 1; d <= 3; ++d) {
            double fact = 1.0;
            for (int i = 2; i < d; ++i) fact *= i;
            for (double z : {0.1, 0.5, 0.9}) {
                // Σ_{k>=1} k^{d-1} z^{k-1} = Li_{1-d}(z) / z
                const double partial = polylog_partial(1.0 - d, z, 1000000) / z;
                const double closed = power_series_closed_form(d, z);
                CHECK(std::fabs(partial - closed) <= 1e-10 * closed);
                CHECK(closed <= fact / std::pow(1.0 - z, d) * (1.0 + 1e-15));
            }
        }
        CHECK_THROWS_AS(polylog_partial(1.0, 1.0, 10), DomainError);
    }
}
