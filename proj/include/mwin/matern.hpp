#pragma once

#include <span>

#include <Eigen/Dense>

namespace mwin {

/// Matérn model parameters together with the derived SPDE constants.
///
/// kappa = sqrt(2 nu) / rho is the inverse length scale, alpha = nu + d/2 the
/// operator exponent and eta2 the white-noise scaling that makes the marginal
/// variance of the full-space field equal to sigma2.
struct MaternParams {
    double sigma2 = 1.0;
    double rho = 1.0;
    double nu = 0.5;
    int d = 1;
    double kappa = 0.0;
    double alpha = 0.0;
    double eta2 = 0.0;
};

/// Throws DomainError for non-positive inputs or d outside {1, 2, 3}.
MaternParams derive_params(double sigma2, double rho, double nu, int d);

/// Unit Matérn function M_ν(t) = t^ν K_ν(t) / (2^{ν-1} Γ(ν)), with M_ν(0) = 1.
/// Evaluated in log space, so ν = 50 and large t are safe.
double unit_matern(double nu, double t);

/// ln M_ν(t); returns 0 at t = 0.
double log_unit_matern(double nu, double t);

/// ‖v‖₂ for d <= 3 via hypot, exact when only one component is non-zero.
double euclidean_norm(std::span<const double> v);

/// σ² M_ν(κ r) for a distance r >= 0.
double matern_radial(const MaternParams& p, double r);

/// σ² M_ν(κ ‖x − y‖₂).
double matern_cov(const MaternParams& p, std::span<const double> x, std::span<const double> y);

/// Anisotropic metric Θ = R D² Rᵀ, D = diag(scales). The factored form is authoritative;
/// `theta` is assembled from it.
class AnisoMetric {
public:
    static AnisoMetric from_factors(const Eigen::MatrixXd& rotation, const Eigen::VectorXd& scales);
    /// Factorises a symmetric positive definite Θ by symmetric eigendecomposition.
    static AnisoMetric from_theta(const Eigen::MatrixXd& theta);
    static AnisoMetric isotropic(int d, double rho);

    int dim() const { return static_cast<int>(scales_.size()); }
    const Eigen::MatrixXd& rotation() const { return rotation_; }
    const Eigen::VectorXd& scales() const { return scales_; }
    const Eigen::MatrixXd& theta() const { return theta_; }
    double rho_max() const { return scales_.maxCoeff(); }

    /// ‖v‖_{Θ⁻¹} = sqrt(vᵀ Θ⁻¹ v), evaluated as ‖D⁻¹ Rᵀ v‖₂.
    double inverse_norm(std::span<const double> v) const;

private:
    AnisoMetric(Eigen::MatrixXd rotation, Eigen::VectorXd scales);

    Eigen::MatrixXd rotation_;
    Eigen::VectorXd scales_;
    Eigen::MatrixXd theta_;
};

/// σ² M_ν(sqrt(2ν) ‖x − y‖_{Θ⁻¹}).
double matern_cov_aniso(double sigma2, double nu, const AnisoMetric& metric,
                        std::span<const double> x, std::span<const double> y);

/// Decay-rate function f(x) = M_{max(ν, 1/2)}(κ x), x > 0.
double f_func(double nu, double kappa, double x);

/// (κr)^{1/2-ν} (∂_r + κ) M_ν(κr), which vanishes as r → ∞ for every ν > 0.
double radiation_residual(double nu, double kappa, double r);

}  // namespace mwin
