#include "mwin/sampler.hpp"

#include <cmath>

#include "mwin/errors.hpp"
#include "mwin/rng.hpp"
#include "mwin/simd/kernels.hpp"

namespace mwin {

FieldSampler::FieldSampler(const MaternParams& params, const BoundarySpec& bc, const BoxDomain& box,
                           std::vector<double> grid, const TruncationSpec& trunc)
    : cov_(params, bc, box, trunc), bc_(bc), trunc_(trunc), grid_(std::move(grid))
{
    const std::size_t d = static_cast<std::size_t>(cov_.dim());
    if (grid_.empty() || grid_.size() % d != 0) detail::domain_fail("FieldSampler", "grid must hold whole points");
    amplitudes_ = cov_.mode_amplitudes();
    const std::size_t n = points();
    for (std::size_t i = 0; i < d; ++i) {
        const auto& ax = cov_.axes()[i];
        std::vector<double> phi(n * ax.modes());
        for (std::size_t p = 0; p < n; ++p) {
            ax.mode_values(grid_[p * d + i], std::span<double>(phi).subspan(p * ax.modes(), ax.modes()));
        }
        phi_.push_back(std::move(phi));
    }
}

FieldSample FieldSampler::sample(std::uint64_t seed) const
{
    const std::size_t d = static_cast<std::size_t>(cov_.dim());
    const std::size_t m = amplitudes_.size();
    std::vector<double> coeff(m);
    for (std::size_t k = 0; k < m; ++k) coeff[k] = amplitudes_[k] * rng::standard_normal(seed, k);

    const auto& axes = cov_.axes();
    const std::size_t m0 = axes[0].modes();
    const std::size_t n = points();
    std::vector<double> values(n);
    std::vector<double> t0(m0);
    std::vector<double> t1;
    for (std::size_t p = 0; p < n; ++p) {
        auto row = [&](std::size_t axis) {
            const std::size_t mi = axes[axis].modes();
            return std::span<const double>(phi_[axis]).subspan(p * mi, mi);
        };
        if (d == 1) {
            values[p] = simd::dot(row(0), coeff);
        } else if (d == 2) {
            simd::gemv(coeff, m0, axes[1].modes(), row(1), t0);
            values[p] = simd::dot(row(0), t0);
        } else {
            const std::size_t m1 = axes[1].modes();
            t1.resize(m0 * m1);
            simd::gemv(coeff, m0 * m1, axes[2].modes(), row(2), t1);
            simd::gemv(t1, m0, m1, row(1), t0);
            values[p] = simd::dot(row(0), t0);
        }
    }

    FieldSample s;
    s.dim = static_cast<int>(d);
    s.grid = grid_;
    s.values = std::move(values);
    s.seed = seed;
    s.bc = bc_;
    s.trunc = trunc_;
    return s;
}

FieldSample sample_field(const MaternParams& params, const BoundarySpec& bc, const BoxDomain& box,
                         std::vector<double> grid, const TruncationSpec& trunc, std::uint64_t seed)
{
    return FieldSampler(params, bc, box, std::move(grid), trunc).sample(seed);
}

EmpiricalCov empirical_cov(std::span<const FieldSample> samples)
{
    if (samples.size() < 2) detail::domain_fail("empirical_cov", "need at least two samples");
    const auto& first = samples.front();
    for (const auto& s : samples) {
        if (s.dim != first.dim || s.grid != first.grid || s.values.size() != first.values.size()) {
            detail::domain_fail("empirical_cov", "samples are on different grids");
        }
    }
    const std::size_t n = first.values.size();
    const double count = static_cast<double>(samples.size());

    EmpiricalCov out;
    out.points = n;
    out.n_samples = static_cast<long>(samples.size());
    out.mean.assign(n, 0.0);
    for (const auto& s : samples) {
        for (std::size_t i = 0; i < n; ++i) out.mean[i] += s.values[i];
    }
    for (double& v : out.mean) v /= count;

    out.matrix.assign(n * n, 0.0);
    std::vector<double> c(n);
    for (const auto& s : samples) {
        for (std::size_t i = 0; i < n; ++i) c[i] = s.values[i] - out.mean[i];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) out.matrix[i * n + j] += c[i] * c[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            out.matrix[i * n + j] /= count - 1.0;
            out.matrix[j * n + i] = out.matrix[i * n + j];
        }
    }
    out.std_error.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double cij = out.matrix[i * n + j];
            out.std_error[i * n + j] = std::sqrt((out.matrix[i * n + i] * out.matrix[j * n + j] + cij * cij) / count);
        }
    }
    return out;
}

}  // namespace mwin
