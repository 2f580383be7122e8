#include "mwin/matern.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mwin/errors.hpp"
#include "mwin/specfun.hpp"

namespace mwin {

MaternParams derive_params(double sigma2, double rho, double nu, int d)
{
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) detail::domain_fail("derive_params", "sigma2 must be positive");
    if (!(rho > 0.0) || !std::isfinite(rho)) detail::domain_fail("derive_params", "rho must be positive");
    if (!(nu > 0.0) || !std::isfinite(nu)) detail::domain_fail("derive_params", "nu must be positive");
    if (d < 1 || d > 3) detail::domain_fail("derive_params", "d must be 1, 2 or 3");

    MaternParams p;
    p.sigma2 = sigma2;
    p.rho = rho;
    p.nu = nu;
    p.d = d;
    p.kappa = std::sqrt(2.0 * nu) / rho;
    p.alpha = nu + 0.5 * d;
    const double half_d = 0.5 * d;
    const double log_eta2 = std::log(sigma2) + half_d * std::log(4.0 * std::numbers::pi) +
                            specfun::ln_gamma(p.alpha) - d * std::log(p.kappa) -
                            specfun::ln_gamma(nu);
    p.eta2 = std::exp(log_eta2);
    return p;
}

double log_unit_matern(double nu, double t)
{
    if (!(nu > 0.0)) detail::domain_fail("unit_matern", "nu must be positive");
    if (!(t >= 0.0)) detail::domain_fail("unit_matern", "t must be non-negative");
    if (t == 0.0) return 0.0;
    const double log_k = specfun::log_bessel_k(nu, t);
    const double v = nu * std::log(t) + log_k - (nu - 1.0) * std::numbers::ln2 - specfun::ln_gamma(nu);
    return std::min(v, 0.0);
}

double unit_matern(double nu, double t)
{
    return std::exp(log_unit_matern(nu, t));
}

double matern_radial(const MaternParams& p, double r)
{
    return p.sigma2 * unit_matern(p.nu, p.kappa * r);
}

double euclidean_norm(std::span<const double> v)
{
    switch (v.size()) {
    case 1: return std::fabs(v[0]);
    case 2: return std::hypot(v[0], v[1]);
    case 3: return std::hypot(v[0], v[1], v[2]);
    default: {
        double r2 = 0.0;
        for (double c : v) r2 += c * c;
        return std::sqrt(r2);
    }
    }
}

double matern_cov(const MaternParams& p, std::span<const double> x, std::span<const double> y)
{
    if (x.size() != static_cast<std::size_t>(p.d) || y.size() != static_cast<std::size_t>(p.d)) {
        detail::domain_fail("matern_cov", "point dimension does not match parameters");
    }
    double diff[3];
    for (int i = 0; i < p.d; ++i) diff[i] = x[i] - y[i];
    return matern_radial(p, euclidean_norm(std::span<const double>(diff, p.d)));
}

AnisoMetric::AnisoMetric(Eigen::MatrixXd rotation, Eigen::VectorXd scales)
    : rotation_(std::move(rotation)), scales_(std::move(scales))
{
    theta_ = rotation_ * scales_.array().square().matrix().asDiagonal() * rotation_.transpose();
    theta_ = 0.5 * (theta_ + theta_.transpose()).eval();
}

AnisoMetric AnisoMetric::from_factors(const Eigen::MatrixXd& rotation, const Eigen::VectorXd& scales)
{
    const auto n = scales.size();
    if (n < 1 || n > 3) detail::domain_fail("AnisoMetric", "dimension must be 1, 2 or 3");
    if (rotation.rows() != n || rotation.cols() != n) {
        detail::domain_fail("AnisoMetric", "rotation shape does not match scales");
    }
    if ((scales.array() <= 0.0).any()) detail::domain_fail("AnisoMetric", "scales must be positive");
    const Eigen::MatrixXd gram = rotation.transpose() * rotation;
    if (!gram.isApprox(Eigen::MatrixXd::Identity(n, n), 1e-12)) {
        detail::domain_fail("AnisoMetric", "rotation is not orthogonal");
    }
    return AnisoMetric(rotation, scales);
}

AnisoMetric AnisoMetric::from_theta(const Eigen::MatrixXd& theta)
{
    const auto n = theta.rows();
    if (n < 1 || n > 3 || theta.cols() != n) detail::domain_fail("AnisoMetric", "theta must be square, d <= 3");
    if (!theta.isApprox(theta.transpose(), 1e-14)) detail::domain_fail("AnisoMetric", "theta is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(theta);
    if (eig.info() != Eigen::Success) throw NumericalError("AnisoMetric: eigendecomposition failed");
    const Eigen::VectorXd ev = eig.eigenvalues();
    if ((ev.array() <= 0.0).any()) detail::domain_fail("AnisoMetric", "theta is not positive definite");
    return AnisoMetric(eig.eigenvectors(), ev.array().sqrt().matrix());
}

AnisoMetric AnisoMetric::isotropic(int d, double rho)
{
    return from_factors(Eigen::MatrixXd::Identity(d, d), Eigen::VectorXd::Constant(d, rho));
}

double AnisoMetric::inverse_norm(std::span<const double> v) const
{
    const auto n = dim();
    if (v.size() != static_cast<std::size_t>(n)) detail::domain_fail("AnisoMetric", "vector dimension mismatch");
    const Eigen::Map<const Eigen::VectorXd> vec(v.data(), n);
    const Eigen::VectorXd z = (rotation_.transpose() * vec).cwiseQuotient(scales_);
    return z.norm();
}

double matern_cov_aniso(double sigma2, double nu, const AnisoMetric& metric,
                        std::span<const double> x, std::span<const double> y)
{
    if (!(sigma2 > 0.0) || !(nu > 0.0)) detail::domain_fail("matern_cov_aniso", "sigma2 and nu must be positive");
    const auto n = static_cast<std::size_t>(metric.dim());
    if (x.size() != n || y.size() != n) detail::domain_fail("matern_cov_aniso", "point dimension mismatch");
    double diff[3];
    for (std::size_t i = 0; i < n; ++i) diff[i] = x[i] - y[i];
    const double r = metric.inverse_norm(std::span<const double>(diff, n));
    return sigma2 * unit_matern(nu, std::sqrt(2.0 * nu) * r);
}

double f_func(double nu, double kappa, double x)
{
    if (!(x > 0.0)) detail::domain_fail("f_func", "x must be positive");
    if (!(kappa > 0.0)) detail::domain_fail("f_func", "kappa must be positive");
    return unit_matern(std::max(nu, 0.5), kappa * x);
}

double radiation_residual(double nu, double kappa, double r)
{
    if (!(r > 0.0) || !(kappa > 0.0) || !(nu > 0.0)) {
        detail::domain_fail("radiation_residual", "nu, kappa and r must be positive");
    }
    const double t = kappa * r;
    const double log_k = specfun::log_bessel_k(nu, t);
    const double log_k_lower = specfun::log_bessel_k(nu - 1.0, t);
    // K_ν − K_{ν−1} = K_ν (1 − K_{ν−1}/K_ν)
    const double diff_factor = -std::expm1(log_k_lower - log_k);
    const double log_prefactor = std::log(kappa) + 0.5 * std::log(t) + log_k -
                                 (nu - 1.0) * std::numbers::ln2 - specfun::ln_gamma(nu);
    return std::exp(log_prefactor) * diff_factor;
}

}  // namespace mwin
