#include "mwin/robin.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "mwin/errors.hpp"

namespace mwin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBisectTol = 1e-13;
constexpr std::size_t kValidatedModes = 4;
constexpr double kNormTol = 1e-8;

double offset_equation(double theta, double big_h, long n)
{
    const double alpha = static_cast<double>(n - 1) * kPi + theta;
    return theta - 2.0 * std::atan(big_h / alpha);
}

}  // namespace

double robin_root_offset(double big_h, long n)
{
    if (n < 1) detail::domain_fail("robin_root_offset", "mode index must be >= 1");
    double lo = 0.0;
    double hi = kPi;
    if (n > 1) hi = std::min(kPi, 2.0 * big_h / (static_cast<double>(n - 1) * kPi));
    double f_lo = offset_equation(lo, big_h, n);
    double f_hi = offset_equation(hi, big_h, n);
    if (!(f_lo < 0.0) || !(f_hi > 0.0)) {
        std::ostringstream os;
        os << "robin_eigen_1d: lost bracket for mode " << n << " in ((n-1)pi + " << lo << ", (n-1)pi + " << hi
           << "), H=" << big_h;
        throw NumericalError(os.str());
    }
    while (hi - lo > kBisectTol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = offset_equation(mid, big_h, n);
        if (f_mid == 0.0) return mid;
        if (f_mid < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    // Secant polish across the final bracket.
    double best = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
    double best_res = std::min(std::abs(f_lo), std::abs(f_hi));
    if (f_hi != f_lo) {
        const double cand = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        if (cand >= lo && cand <= hi) {
            const double res = std::abs(offset_equation(cand, big_h, n));
            if (res <= best_res) best = cand;
        }
    }
    return best;
}

double RobinEigen1D::laplace_eigenvalue(std::size_t idx) const
{
    const double s = alphas[idx] / ell_axis;
    return s * s;
}

double RobinEigen1D::raw_mode(std::size_t idx, double x) const
{
    const double a = alphas[idx];
    const double arg = a * x / ell_axis;
    return a / (h * ell_axis) * std::cos(arg) + std::sin(arg);
}

double RobinEigen1D::mode(std::size_t idx, double x) const
{
    return raw_mode(idx, x) / std::sqrt(norms[idx]);
}

double RobinEigen1D::residual(std::size_t idx) const
{
    return offset_equation(offsets[idx], h * ell_axis, static_cast<long>(idx) + 1);
}

double robin_norm_closed_form(double alpha, double h, double ell)
{
    const double big_h = h * ell;
    return (alpha * alpha + 2.0 * big_h + big_h * big_h) / (2.0 * h * h * ell);
}

double robin_norm_quadrature(double alpha, double h, double ell)
{
    using Gauss = boost::math::quadrature::gauss<double, 20>;
    const double big_h = h * ell;
    const auto sq = [&](double x) {
        const double arg = alpha * x / ell;
        const double u = alpha / big_h * std::cos(arg) + std::sin(arg);
        return u * u;
    };
    const int pieces = std::max(8, static_cast<int>(std::ceil(2.0 * alpha / kPi)) * 4);
    const double width = ell / pieces;
    double total = 0.0;
    for (int i = 0; i < pieces; ++i) {
        total += Gauss::integrate(sq, i * width, (i + 1) * width);
    }
    return total;
}

RobinEigen1D robin_eigen_1d(double h, double ell_axis, long count)
{
    if (!(h > 0.0) || !std::isfinite(h)) detail::domain_fail("robin_eigen_1d", "h must be positive");
    if (!(ell_axis > 0.0) || !std::isfinite(ell_axis)) detail::domain_fail("robin_eigen_1d", "ell must be positive");
    if (count < 1) detail::domain_fail("robin_eigen_1d", "count must be >= 1");

    RobinEigen1D out;
    out.h = h;
    out.ell_axis = ell_axis;
    out.alphas.resize(count);
    out.offsets.resize(count);
    out.norms.resize(count);
    const double big_h = h * ell_axis;
    for (long n = 1; n <= count; ++n) {
        const double theta = robin_root_offset(big_h, n);
        out.offsets[n - 1] = theta;
        out.alphas[n - 1] = static_cast<double>(n - 1) * kPi + theta;
        out.norms[n - 1] = robin_norm_closed_form(out.alphas[n - 1], h, ell_axis);
    }

    bool mismatch = false;
    const std::size_t checked = std::min<std::size_t>(kValidatedModes, out.size());
    for (std::size_t i = 0; i < checked; ++i) {
        const double quad = robin_norm_quadrature(out.alphas[i], h, ell_axis);
        if (std::abs(quad - out.norms[i]) > kNormTol * quad) mismatch = true;
    }
    if (mismatch) {
        std::cerr << "warning: robin_eigen_1d: closed-form eigenfunction norms disagree with quadrature "
                     "(h=" << h << ", ell=" << ell_axis << "); using quadrature norms\n";
        for (std::size_t i = 0; i < out.size(); ++i) {
            out.norms[i] = robin_norm_quadrature(out.alphas[i], h, ell_axis);
        }
    }
    return out;
}

}  // namespace mwin
