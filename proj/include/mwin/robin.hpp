#pragma once

#include <vector>

namespace mwin {

/// Eigenpairs of −u'' on (0, ℓ) with u'(0) = h u(0) and u'(ℓ) = −h u(ℓ).
///
/// With s = α/ℓ and H = hℓ the boundary conditions reduce to
/// tan α = 2Hα / (α² − H²), equivalently α − 2 arctan(H/α) = (n − 1)π, which has
/// exactly one root α_n in ((n − 1)π, nπ) for every n >= 1. Each root is stored as
/// its offset θ_n = α_n − (n − 1)π so the residual stays resolvable for large n.
///
/// Eigenfunctions are u_n(x) = (α_n / H) cos(α_n x/ℓ) + sin(α_n x/ℓ) with
/// ‖u_n‖² = (α_n² + 2H + H²) / (2h²ℓ).
struct RobinEigen1D {
    double h = 0.0;
    double ell_axis = 0.0;
    std::vector<double> alphas;
    std::vector<double> offsets;  // θ_n = α_n − (n − 1)π
    std::vector<double> norms;    // ‖u_n‖²

    std::size_t size() const { return alphas.size(); }
    /// Laplacian eigenvalue (α_n/ℓ)² of mode n (0-based index).
    double laplace_eigenvalue(std::size_t idx) const;
    /// Unnormalised u_n(x).
    double raw_mode(std::size_t idx, double x) const;
    /// L²-normalised mode u_n(x)/‖u_n‖.
    double mode(std::size_t idx, double x) const;
    /// θ − 2 arctan(H/α), zero at an exact root.
    double residual(std::size_t idx) const;
};

/// Closed-form ‖u_n‖² for the normalisation above.
double robin_norm_closed_form(double alpha, double h, double ell);

/// ∫_0^ℓ u_n(x)² dx by composite Gauss–Legendre quadrature.
double robin_norm_quadrature(double alpha, double h, double ell);

/// First `count` Robin eigenpairs. Roots are bracketed in ((n−1)π, nπ), bisected to
/// 1e-13 and polished with one secant step. The closed-form norms of the first
/// modes are checked by quadrature; on disagreement beyond 1e-8 every norm is
/// recomputed by quadrature and a warning is printed to stderr.
RobinEigen1D robin_eigen_1d(double h, double ell_axis, long count);

/// Offset θ_n of a single root (n >= 1).
double robin_root_offset(double big_h, long n);

}  // namespace mwin
