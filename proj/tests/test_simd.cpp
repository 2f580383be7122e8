#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "mwin/errors.hpp"
#include "mwin/simd/kernels.hpp"
#include "mwin/spectral.hpp"

using namespace mwin;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = u(gen);
    return v;
}

double abs_dot(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] * b[i]);
    return s;
}

}  // namespace

TEST_SUITE("simd")
{
    TEST_CASE("scalar kernels")
    {
        const std::vector<double> a{1, 2, 3}, b{4, 5, 6}, w{1, 0.5, 2};
        CHECK(simd::scalar::dot(a.data(), b.data(), 3) == 32.0);
        CHECK(simd::scalar::weighted_dot(w.data(), a.data(), b.data(), 3) == 4.0 + 5.0 + 36.0);
        std::vector<double> out(3);
        simd::scalar::hadamard(a.data(), b.data(), out.data(), 3);
        CHECK(out == std::vector<double>{4, 10, 18});
        const std::vector<double> m{1, 2, 3, 4, 5, 6};
        std::vector<double> y(2);
        simd::scalar::gemv(m.data(), 2, 3, a.data(), y.data());
        CHECK(y == std::vector<double>{14, 32});
    }

    TEST_CASE("avx2 matches scalar")
    {
        if (!simd::isa_supported(simd::Isa::Avx2)) {
            MESSAGE("AVX2 not available on this CPU");
            return;
        }
        std::mt19937_64 gen(99);
        for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 63u, 1000u, 1001u}) {
            const auto a = random_vector(n, gen), b = random_vector(n, gen), w = random_vector(n, gen);
            const double scale = abs_dot(a, b) + 1e-300;
            CHECK(std::fabs(simd::avx2::dot(a.data(), b.data(), n) - simd::scalar::dot(a.data(), b.data(), n)) <=
                  1e-14 * scale);
            std::vector<double> wa(n);
            for (std::size_t i = 0; i < n; ++i) wa[i] = w[i] * a[i];
            CHECK(std::fabs(simd::avx2::weighted_dot(w.data(), a.data(), b.data(), n) -
                            simd::scalar::weighted_dot(w.data(), a.data(), b.data(), n)) <=
                  1e-14 * (abs_dot(wa, b) + 1e-300));
            std::vector<double> h1(n), h2(n);
            simd::avx2::hadamard(a.data(), b.data(), h1.data(), n);
            simd::scalar::hadamard(a.data(), b.data(), h2.data(), n);
            CHECK(h1 == h2);
        }
        for (std::size_t rows : {1u, 3u, 8u, 33u}) {
            for (std::size_t cols : {1u, 4u, 6u, 101u}) {
                const auto m = random_vector(rows * cols, gen), x = random_vector(cols, gen);
                std::vector<double> y1(rows), y2(rows);
                simd::avx2::gemv(m.data(), rows, cols, x.data(), y1.data());
                simd::scalar::gemv(m.data(), rows, cols, x.data(), y2.data());
                for (std::size_t r = 0; r < rows; ++r) CHECK(std::fabs(y1[r] - y2[r]) <= 1e-14 * cols);
            }
        }
    }

    TEST_CASE("dispatch")
    {
        const auto initial = simd::active_isa();
        CHECK(simd::isa_supported(simd::Isa::Scalar));
        simd::force_isa(simd::Isa::Scalar);
        CHECK(simd::active_isa() == simd::Isa::Scalar);
        CHECK(std::string(simd::isa_name(simd::Isa::Scalar)) == "scalar");
        if (!simd::isa_supported(simd::Isa::Avx2)) CHECK_THROWS_AS(simd::force_isa(simd::Isa::Avx2), DomainError);
        const std::vector<double> a{1, 2}, b{3, 4};
        CHECK(simd::dot(a, b) == 11.0);
        simd::force_isa(initial);
    }

    TEST_CASE("spectral covariance agrees across kernels")
    {
        if (!simd::isa_supported(simd::Isa::Avx2)) return;
        const auto initial = simd::active_isa();
        const auto p = derive_params(1.0, 0.1, 1.0, 2);
        const auto box = BoxDomain::cubic(2, 0.1, 1.0);
        const SpectralCovariance cov(p, BoundarySpec::neumann(), box, TruncationSpec::from_h(1e-2));
        const auto grid = domain_grid(box, 4);
        simd::force_isa(simd::Isa::Scalar);
        const auto g_scalar = cov.gram(grid);
        simd::force_isa(simd::Isa::Avx2);
        const auto g_avx = cov.gram(grid);
        simd::force_isa(initial);
        for (std::size_t i = 0; i < g_scalar.size(); ++i) CHECK(std::fabs(g_scalar[i] - g_avx[i]) <= 1e-13);
    }
}
