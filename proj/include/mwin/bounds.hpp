#pragma once

#include <cstdint>

#include "mwin/domain.hpp"
#include "mwin/matern.hpp"

namespace mwin {

/// Error bounds of the window technique for one (δ, ℓ) pair.
struct BoundReport {
    double delta = 0.0;
    double ell = 0.0;
    double corollary_bound = 0.0;  // lattice-sum bound, includes lattice_tail
    double lattice_tail = 0.0;     // certified bound on the unsummed part of the lattice sum
    double main_bound = 0.0;       // A σ² M_ν(κδ)
    double A = 0.0;
    double f_ell = 0.0;
    double dirichlet_bound = 0.0;  // includes 2^{d-1} lattice_tail
};

/// Σ_{k ∈ ℕ₀^d \ {0}} C(‖L∘k‖₂) up to a certified remainder.
struct LatticeSum {
    double value = 0.0;
    double tail_bound = 0.0;
    long radius = 0;
};

/// Sums the one-sided lattice until the certified remainder is at most `rel_tol`
/// times the partial sum (or underflows).
LatticeSum lattice_sum(const MaternParams& params, const BoxDomain& box, double rel_tol = 1e-13);

/// (2^d − 1) C(δ) + 2^d Σ_{k ∈ ℕ₀^d \ {0}} C(‖L∘k‖₂), upper-rounded by the lattice remainder.
double corollary_bound(const MaternParams& params, double delta, const BoxDomain& box);

/// 2^{d−1} (C(δ) + Σ_{k ∈ ℕ₀^d \ {0}} C(‖L∘k‖₂)), upper-rounded by the lattice remainder.
double dirichlet_bound(const MaternParams& params, double delta, const BoxDomain& box);

/// A = (2^d − 1)(1 + 2^d d! f(ℓ) / (1 − f(ℓ))^d). Throws DomainError for ℓ <= 0.
double constant_a(const MaternParams& params, double ell);

/// Full report on the cubic box with L = δ + ℓ.
BoundReport main_bound(const MaternParams& params, double delta, double ell);

/// Main bound for the anisotropic kernel: κ is replaced by sqrt(2ν)/ρ_max.
BoundReport aniso_bound(double sigma2, double nu, const AnisoMetric& metric, double delta, double ell, int d);

/// Eulerian number A(n, k): permutations of n elements with k ascents.
std::uint64_t eulerian(int n, int k);

/// Σ_{k=1}^{terms} z^k / k^s, compensated.
double polylog_partial(double s, double z, long terms);

/// Σ_{k>=1} k^{d−1} z^{k−1} in closed form: Σ_j A(d−1, j) z^j / (1 − z)^d for d >= 2,
/// 1/(1 − z) for d = 1.
double power_series_closed_form(int d, double z);

}  // namespace mwin
