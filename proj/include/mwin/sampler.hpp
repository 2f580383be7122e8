#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mwin/domain.hpp"
#include "mwin/matern.hpp"
#include "mwin/spectral.hpp"

namespace mwin {

/// One realisation of the truncated field on a point set.
struct FieldSample {
    int dim = 1;
    std::vector<double> grid;    // points, d consecutive doubles each
    std::vector<double> values;  // one per point
    std::uint64_t seed = 0;
    BoundarySpec bc = BoundarySpec::neumann();
    TruncationSpec trunc = TruncationSpec::from_kmax(0);

    std::size_t size() const { return values.size(); }
};

/// Spectral synthesis u = η Σ_k λ_k^{−α/2} ξ_k w_k on a fixed point set.
///
/// The coefficient ξ_k of the k-th real mode (row-major over the per-axis modes) is
/// rng::standard_normal(seed, k), so a sample depends only on the seed and the
/// truncation, and its covariance is exactly the truncated spectral covariance.
class FieldSampler {
public:
    FieldSampler(const MaternParams& params, const BoundarySpec& bc, const BoxDomain& box,
                 std::vector<double> grid, const TruncationSpec& trunc);

    const SpectralCovariance& covariance() const { return cov_; }
    std::size_t points() const { return grid_.size() / static_cast<std::size_t>(cov_.dim()); }
    std::size_t modes() const { return amplitudes_.size(); }

    FieldSample sample(std::uint64_t seed) const;

private:
    SpectralCovariance cov_;
    BoundarySpec bc_;
    TruncationSpec trunc_;
    std::vector<double> grid_;
    std::vector<double> amplitudes_;
    std::vector<std::vector<double>> phi_;  // per axis: points × modes, row-major
};

FieldSample sample_field(const MaternParams& params, const BoundarySpec& bc, const BoxDomain& box,
                         std::vector<double> grid, const TruncationSpec& trunc, std::uint64_t seed);

/// Unbiased sample covariance over samples sharing one grid.
struct EmpiricalCov {
    std::size_t points = 0;
    long n_samples = 0;
    std::vector<double> mean;       // per point
    std::vector<double> matrix;     // points × points, row-major
    std::vector<double> std_error;  // sqrt((C_ii C_jj + C_ij²) / n)

    double operator()(std::size_t i, std::size_t j) const { return matrix[i * points + j]; }
    double error(std::size_t i, std::size_t j) const { return std_error[i * points + j]; }
};

/// Throws DomainError for fewer than two samples or mismatched grids.
EmpiricalCov empirical_cov(std::span<const FieldSample> samples);

}  // namespace mwin
