#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mwin/domain.hpp"
#include "mwin/matern.hpp"
#include "mwin/robin.hpp"

namespace mwin {

/// One real eigenfunction factor along a single axis.
struct AxisMode {
    BoundaryKind kind = BoundaryKind::Neumann;
    long index = 0;           // D, R: >= 1; N: >= 0; P: any integer (k < 0 is the sine partner)
    double length = 1.0;      // axis length of D_ext
    double wavenumber = 0.0;  // s with −u'' = s² u
    double scale = 1.0;       // L²-normalisation
    double robin_ratio = 0.0; // α/H for Robin modes

    double operator()(double x) const;
};

/// Eigenpair of (I − κ⁻²Δ) on D_ext: a tensor product of axis modes.
struct Eigenpair {
    double lambda = 1.0;
    std::vector<AxisMode> factors;

    double operator()(std::span<const double> x) const;
};

/// Eigenpair for multi-index k. Throws DomainError when k is outside the index
/// set of the boundary condition (D, R: k_i >= 1; N: k_i >= 0; P: any).
Eigenpair eigenpair(const BoundarySpec& bc, std::span<const long> k, const BoxDomain& box, double kappa);

/// Truncated eigenbasis along one axis, organised in frequency groups: a group holds
/// the modes that share one Laplacian eigenvalue (two for periodic k >= 1, else one).
class AxisBasis {
public:
    AxisBasis(const BoundarySpec& bc, double length, long kmax);

    BoundaryKind kind() const { return kind_; }
    double length() const { return length_; }
    std::size_t groups() const { return mu_.size(); }
    std::size_t modes() const { return group_of_mode_.size(); }
    double laplace_eigenvalue(std::size_t group) const { return mu_[group]; }
    std::size_t group_of_mode(std::size_t mode) const { return group_of_mode_[mode]; }

    /// Values of every mode at x.
    void mode_values(double x, std::span<double> out) const;
    /// Per-group Σ_{modes} φ(x)φ(y), given precomputed mode values at x and y.
    void pair_factors(std::span<const double> phi_x, std::span<const double> phi_y, std::span<double> out) const;

    /// Lower bound Q on the frequency number q = s·(period/π) of every omitted group,
    /// with s >= q·spacing(); used by the tail certificate.
    double omitted_frequency_floor() const { return omitted_floor_; }
    /// Wavenumber spacing: π/L for D, N, R and 2π/L for P.
    double spacing() const;

private:
    BoundaryKind kind_;
    double length_;
    std::vector<double> mu_;
    std::vector<std::size_t> group_of_mode_;
    std::shared_ptr<const RobinEigen1D> robin_;
    double omitted_floor_ = 0.0;
};

struct SpectralValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

/// Truncated covariance η² Σ_{‖k‖∞ <= kmax} λ_k^{−α} w_k(x) w_k(y) on D_ext.
///
/// Builds the per-axis bases and the weight table η² λ^{−α} once; evaluation cost
/// per pair is the product of the per-axis group counts. Immutable after
/// construction.
class SpectralCovariance {
public:
    SpectralCovariance(const MaternParams& params, const BoundarySpec& bc, const BoxDomain& box,
                       const TruncationSpec& trunc);

    int dim() const { return static_cast<int>(axes_.size()); }
    const std::vector<AxisBasis>& axes() const { return axes_; }
    const MaternParams& params() const { return params_; }

    /// Certified bound on |C_full − C_truncated| uniformly over D_ext × D_ext.
    double tail_bound() const { return tail_bound_; }

    double operator()(std::span<const double> x, std::span<const double> y) const;
    SpectralValue evaluate(std::span<const double> x, std::span<const double> y) const;

    /// P × P covariance matrix for P points stored consecutively (d doubles each).
    std::vector<double> gram(std::span<const double> points) const;

    /// η λ^{−α/2} for every real mode of the tensor basis (row-major over axes).
    std::vector<double> mode_amplitudes() const;

private:
    double contract(std::vector<std::vector<double>>& factors) const;

    MaternParams params_;
    std::vector<AxisBasis> axes_;
    std::vector<double> weights_;  // over frequency groups, row-major
    double tail_bound_ = 0.0;
};

/// One-shot evaluation of the truncated spectral covariance.
SpectralValue cov_spectral(const MaternParams& params, const BoundarySpec& bc, const BoxDomain& box,
                           std::span<const double> x, std::span<const double> y, const TruncationSpec& trunc);

/// Certified tail bound for a truncation with per-axis frequency floors.
double spectral_tail_bound(const MaternParams& params, const std::vector<AxisBasis>& axes);

}  // namespace mwin
