#pragma once

#include <span>

#include "mwin/domain.hpp"
#include "mwin/matern.hpp"

// Slow, independent reference computations used only by tests and the
// acceptance suite.
namespace mwin::oracle {

/// ln K_ν(x) from K_ν(x) = ½ (x/2)^ν ∫₀^∞ exp(−t − x²/(4t)) t^{−ν−1} dt, integrated
/// in s = ln t around the peak of the integrand with adaptive Gauss–Kronrod.
double log_bessel_k(double nu, double x);
double bessel_k(double nu, double x);

/// Σ C(‖L∘k‖₂) over k ∈ ℕ₀^d \ {0}, ‖k‖∞ <= radius, plain loop.
double lattice_sum(const MaternParams& params, const BoxDomain& box, long radius);

/// Σ C(r + P∘k) over shells first <= ‖k‖∞ <= last, plain loop.
double image_shells(const MaternParams& params, std::span<const double> periods, std::span<const double> r,
                    long first, long last);

}  // namespace mwin::oracle
