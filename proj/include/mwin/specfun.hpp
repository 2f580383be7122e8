#pragma once

namespace mwin::specfun {

/// ln Γ(x) for x > 0. Throws DomainError otherwise.
double ln_gamma(double x);

/// 1/Γ(1+μ) for |μ| <= 1/2, from the Taylor series of the reciprocal gamma function.
double rgamma1p(double mu);

/// Result of a modified Bessel function evaluation. `log_value` is always finite
/// for finite inputs; `value` may overflow to +inf or underflow to 0 when the true
/// magnitude is outside the double range.
struct BesselEval {
    double order = 0.0;
    double argument = 0.0;
    double value = 0.0;
    double log_value = 0.0;
};

/// Modified Bessel function of the second kind K_ν(x), x > 0, any finite real ν.
///
/// Negative orders use K_{-ν} = K_ν. The fractional part μ ∈ [-1/2, 1/2) of the
/// order is evaluated with Temme's series for x <= 2 and Steed's continued
/// fraction otherwise; integer steps up to ν use the forward recurrence
/// K_{μ+1} = (2μ/x) K_μ + K_{μ-1}, which is stable in this direction.
/// The recurrence is carried in log-scaled form so orders up to several hundred
/// and arguments down to 1e-300 do not overflow.
BesselEval bessel_k(double nu, double x);

/// Convenience: natural log of K_ν(x).
double log_bessel_k(double nu, double x);

}  // namespace mwin::specfun
