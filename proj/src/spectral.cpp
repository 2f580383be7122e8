#include "mwin/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "mwin/errors.hpp"
#include "mwin/simd/kernels.hpp"

namespace mwin {

namespace {

constexpr double kPi = std::numbers::pi;
// Weight tables above this many entries (256 MiB) are refused.
constexpr std::size_t kMaxWeights = std::size_t{1} << 25;

double trig_scale(long k, double length)
{
    return k == 0 ? std::sqrt(1.0 / length) : std::sqrt(2.0 / length);
}

AxisMode make_axis_mode(const BoundarySpec& bc, long k, double length)
{
    AxisMode m;
    m.kind = bc.kind();
    m.index = k;
    m.length = length;
    switch (bc.kind()) {
    case BoundaryKind::Dirichlet:
        if (k < 1) detail::domain_fail("eigenpair", "Dirichlet indices must be >= 1");
        m.wavenumber = kPi * k / length;
        m.scale = trig_scale(k, length);
        break;
    case BoundaryKind::Neumann:
        if (k < 0) detail::domain_fail("eigenpair", "Neumann indices must be >= 0");
        m.wavenumber = kPi * k / length;
        m.scale = trig_scale(k, length);
        break;
    case BoundaryKind::Periodic:
        m.wavenumber = 2.0 * kPi * std::abs(k) / length;
        m.scale = trig_scale(k, length);
        break;
    case BoundaryKind::Robin: {
        if (k < 1) detail::domain_fail("eigenpair", "Robin indices must be >= 1");
        const double big_h = bc.beta() * length;
        const double alpha = static_cast<double>(k - 1) * kPi + robin_root_offset(big_h, k);
        m.wavenumber = alpha / length;
        m.robin_ratio = alpha / big_h;
        m.scale = 1.0 / std::sqrt(robin_norm_closed_form(alpha, bc.beta(), length));
        break;
    }
    }
    return m;
}

}  // namespace

double AxisMode::operator()(double x) const
{
    const double arg = wavenumber * x;
    switch (kind) {
    case BoundaryKind::Dirichlet: return scale * std::sin(arg);
    case BoundaryKind::Neumann: return scale * std::cos(arg);
    case BoundaryKind::Periodic:
        if (index > 0) return scale * std::cos(arg);
        if (index < 0) return scale * std::sin(arg);
        return scale;
    case BoundaryKind::Robin: return scale * (robin_ratio * std::cos(arg) + std::sin(arg));
    }
    return 0.0;
}

double Eigenpair::operator()(std::span<const double> x) const
{
    if (x.size() != factors.size()) detail::domain_fail("Eigenpair", "point dimension mismatch");
    double v = 1.0;
    for (std::size_t i = 0; i < factors.size(); ++i) v *= factors[i](x[i]);
    return v;
}

Eigenpair eigenpair(const BoundarySpec& bc, std::span<const long> k, const BoxDomain& box, double kappa)
{
    if (k.size() != static_cast<std::size_t>(box.dim())) detail::domain_fail("eigenpair", "index dimension mismatch");
    if (!(kappa > 0.0)) detail::domain_fail("eigenpair", "kappa must be positive");
    Eigenpair ep;
    double mu = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        ep.factors.push_back(make_axis_mode(bc, k[i], box.length(static_cast<int>(i))));
        mu += ep.factors.back().wavenumber * ep.factors.back().wavenumber;
    }
    ep.lambda = 1.0 + mu / (kappa * kappa);
    return ep;
}

AxisBasis::AxisBasis(const BoundarySpec& bc, double length, long kmax) : kind_(bc.kind()), length_(length)
{
    if (!(length > 0.0)) detail::domain_fail("AxisBasis", "length must be positive");
    if (kmax < 0) detail::domain_fail("AxisBasis", "kmax must be non-negative");
    switch (kind_) {
    case BoundaryKind::Dirichlet:
        if (kmax < 1) detail::domain_fail("AxisBasis", "Dirichlet truncation needs kmax >= 1");
        for (long k = 1; k <= kmax; ++k) {
            const double s = kPi * k / length;
            mu_.push_back(s * s);
            group_of_mode_.push_back(mu_.size() - 1);
        }
        omitted_floor_ = static_cast<double>(kmax + 1);
        break;
    case BoundaryKind::Neumann:
        for (long k = 0; k <= kmax; ++k) {
            const double s = kPi * k / length;
            mu_.push_back(s * s);
            group_of_mode_.push_back(mu_.size() - 1);
        }
        omitted_floor_ = static_cast<double>(kmax + 1);
        break;
    case BoundaryKind::Periodic:
        for (long k = 0; k <= kmax; ++k) {
            const double s = 2.0 * kPi * k / length;
            mu_.push_back(s * s);
            group_of_mode_.push_back(mu_.size() - 1);
            if (k > 0) group_of_mode_.push_back(mu_.size() - 1);
        }
        omitted_floor_ = static_cast<double>(kmax + 1);
        break;
    case BoundaryKind::Robin: {
        if (kmax < 1) detail::domain_fail("AxisBasis", "Robin truncation needs kmax >= 1");
        robin_ = std::make_shared<const RobinEigen1D>(robin_eigen_1d(bc.beta(), length, kmax));
        for (std::size_t n = 0; n < robin_->size(); ++n) {
            mu_.push_back(robin_->laplace_eigenvalue(n));
            group_of_mode_.push_back(n);
        }
        // α_n > (n − 1)π, so every omitted mode n >= kmax + 1 has α/π >= kmax.
        omitted_floor_ = static_cast<double>(kmax);
        break;
    }
    }
}

double AxisBasis::spacing() const
{
    return kind_ == BoundaryKind::Periodic ? 2.0 * kPi / length_ : kPi / length_;
}

void AxisBasis::mode_values(double x, std::span<double> out) const
{
    if (out.size() != modes()) detail::domain_fail("AxisBasis::mode_values", "output size mismatch");
    switch (kind_) {
    case BoundaryKind::Dirichlet:
        for (std::size_t j = 0; j < out.size(); ++j) {
            const long k = static_cast<long>(j) + 1;
            out[j] = trig_scale(k, length_) * std::sin(kPi * k * x / length_);
        }
        break;
    case BoundaryKind::Neumann:
        for (std::size_t j = 0; j < out.size(); ++j) {
            const long k = static_cast<long>(j);
            out[j] = trig_scale(k, length_) * std::cos(kPi * k * x / length_);
        }
        break;
    case BoundaryKind::Periodic: {
        out[0] = trig_scale(0, length_);
        const double a = trig_scale(1, length_);
        for (std::size_t g = 1; g < groups(); ++g) {
            const double arg = 2.0 * kPi * static_cast<double>(g) * x / length_;
            out[2 * g - 1] = a * std::cos(arg);
            out[2 * g] = a * std::sin(arg);
        }
        break;
    }
    case BoundaryKind::Robin:
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = robin_->mode(j, x);
        break;
    }
}

void AxisBasis::pair_factors(std::span<const double> phi_x, std::span<const double> phi_y,
                             std::span<double> out) const
{
    if (phi_x.size() != modes() || phi_y.size() != modes() || out.size() != groups()) {
        detail::domain_fail("AxisBasis::pair_factors", "size mismatch");
    }
    if (kind_ != BoundaryKind::Periodic) {
        simd::hadamard(phi_x, phi_y, out);
        return;
    }
    out[0] = phi_x[0] * phi_y[0];
    for (std::size_t g = 1; g < groups(); ++g) {
        out[g] = phi_x[2 * g - 1] * phi_y[2 * g - 1] + phi_x[2 * g] * phi_y[2 * g];
    }
}

double spectral_tail_bound(const MaternParams& params, const std::vector<AxisBasis>& axes)
{
    const int d = static_cast<int>(axes.size());
    double c_min = std::numeric_limits<double>::infinity();
    double q_min = std::numeric_limits<double>::infinity();
    double sup_product = 1.0;
    for (const auto& ax : axes) {
        c_min = std::min(c_min, ax.spacing() / params.kappa);
        q_min = std::min(q_min, ax.omitted_frequency_floor());
        // Every group pair factor is bounded by 2/L (1/L for the constant mode).
        sup_product *= 2.0 / ax.length();
    }
    if (!(q_min >= 1.0)) return std::numeric_limits<double>::infinity();
    const double two_alpha = 2.0 * params.alpha;
    // Σ_{t>=Q} d (t+1)^{d-1} (1 + c² t²)^{-α}
    //   <= d (1 + 1/Q)^{d-1} c^{-2α} (Q^{d-1-2α} + Q^{d-2α} / (2α − d))
    const double lattice = d * std::pow(1.0 + 1.0 / q_min, d - 1) * std::pow(c_min, -two_alpha) *
                           (std::pow(q_min, d - 1 - two_alpha) + std::pow(q_min, d - two_alpha) / (two_alpha - d));
    return params.eta2 * sup_product * lattice;
}

SpectralCovariance::SpectralCovariance(const MaternParams& params, const BoundarySpec& bc, const BoxDomain& box,
                                       const TruncationSpec& trunc)
    : params_(params)
{
    if (params.d != box.dim()) detail::domain_fail("SpectralCovariance", "parameter and box dimensions differ");
    std::size_t total = 1;
    for (int i = 0; i < box.dim(); ++i) {
        axes_.emplace_back(bc, box.length(i), trunc.kmax_for(box.length(i)));
        total *= axes_.back().groups();
        if (total > kMaxWeights) detail::domain_fail("SpectralCovariance", "truncation too large for the weight table");
    }

    weights_.resize(total);
    const double inv_k2 = 1.0 / (params.kappa * params.kappa);
    const double log_eta2 = std::log(params.eta2);
    std::vector<std::size_t> idx(axes_.size(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        double mu = 0.0;
        for (std::size_t i = 0; i < axes_.size(); ++i) mu += axes_[i].laplace_eigenvalue(idx[i]);
        weights_[flat] = std::exp(log_eta2 - params.alpha * std::log1p(mu * inv_k2));
        for (std::size_t i = axes_.size(); i-- > 0;) {
            if (++idx[i] < axes_[i].groups()) break;
            idx[i] = 0;
        }
    }
    tail_bound_ = spectral_tail_bound(params, axes_);
}

double SpectralCovariance::contract(std::vector<std::vector<double>>& factors) const
{
    const std::size_t g0 = axes_[0].groups();
    switch (axes_.size()) {
    case 1: return simd::dot(weights_, factors[0]);
    case 2: {
        const std::size_t g1 = axes_[1].groups();
        std::vector<double> t(g0);
        simd::gemv(weights_, g0, g1, factors[1], t);
        return simd::dot(factors[0], t);
    }
    default: {
        const std::size_t g1 = axes_[1].groups();
        const std::size_t g2 = axes_[2].groups();
        std::vector<double> t1(g0 * g1);
        simd::gemv(weights_, g0 * g1, g2, factors[2], t1);
        std::vector<double> t0(g0);
        simd::gemv(t1, g0, g1, factors[1], t0);
        return simd::dot(factors[0], t0);
    }
    }
}

double SpectralCovariance::operator()(std::span<const double> x, std::span<const double> y) const
{
    const std::size_t d = axes_.size();
    if (x.size() != d || y.size() != d) detail::domain_fail("cov_spectral", "point dimension mismatch");
    std::vector<std::vector<double>> factors(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> px(axes_[i].modes()), py(axes_[i].modes());
        axes_[i].mode_values(x[i], px);
        axes_[i].mode_values(y[i], py);
        factors[i].resize(axes_[i].groups());
        axes_[i].pair_factors(px, py, factors[i]);
    }
    return contract(factors);
}

SpectralValue SpectralCovariance::evaluate(std::span<const double> x, std::span<const double> y) const
{
    return {(*this)(x, y), tail_bound_};
}

std::vector<double> SpectralCovariance::gram(std::span<const double> points) const
{
    const std::size_t d = axes_.size();
    if (points.size() % d != 0) detail::domain_fail("SpectralCovariance::gram", "point buffer not a multiple of d");
    const std::size_t n = points.size() / d;
    std::vector<double> out(n * n);

    // mode values per axis and point
    std::vector<std::vector<std::vector<double>>> phi(d, std::vector<std::vector<double>>(n));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t p = 0; p < n; ++p) {
            phi[i][p].resize(axes_[i].modes());
            axes_[i].mode_values(points[p * d + i], phi[i][p]);
        }
    }

    if (d == 1) {
        std::vector<double> mode_w(axes_[0].modes());
        for (std::size_t m = 0; m < mode_w.size(); ++m) mode_w[m] = weights_[axes_[0].group_of_mode(m)];
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p; q < n; ++q) {
                const double v = simd::weighted_dot(mode_w, phi[0][p], phi[0][q]);
                out[p * n + q] = v;
                out[q * n + p] = v;
            }
        }
        return out;
    }

    // Contract the trailing axes once per distinct set of trailing coordinate pairs.
    const std::size_t g0 = axes_[0].groups();
    std::map<std::vector<double>, std::vector<double>> memo;
    std::vector<double> g_lead(g0);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p; q < n; ++q) {
            std::vector<double> key;
            for (std::size_t i = 1; i < d; ++i) {
                const double a = points[p * d + i];
                const double b = points[q * d + i];
                key.push_back(std::min(a, b));
                key.push_back(std::max(a, b));
            }
            auto it = memo.find(key);
            if (it == memo.end()) {
                std::vector<std::vector<double>> factors(d);
                for (std::size_t i = 1; i < d; ++i) {
                    factors[i].resize(axes_[i].groups());
                    axes_[i].pair_factors(phi[i][p], phi[i][q], factors[i]);
                }
                std::vector<double> t(g0);
                if (d == 2) {
                    simd::gemv(weights_, g0, axes_[1].groups(), factors[1], t);
                } else {
                    const std::size_t g1 = axes_[1].groups();
                    std::vector<double> t1(g0 * g1);
                    simd::gemv(weights_, g0 * g1, axes_[2].groups(), factors[2], t1);
                    simd::gemv(t1, g0, g1, factors[1], t);
                }
                it = memo.emplace(std::move(key), std::move(t)).first;
            }
            axes_[0].pair_factors(phi[0][p], phi[0][q], g_lead);
            const double v = simd::dot(g_lead, it->second);
            out[p * n + q] = v;
            out[q * n + p] = v;
        }
    }
    return out;
}

std::vector<double> SpectralCovariance::mode_amplitudes() const
{
    const std::size_t d = axes_.size();
    std::size_t total = 1;
    for (const auto& ax : axes_) total *= ax.modes();
    std::vector<double> amp(total);
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t gflat = 0;
        for (std::size_t i = 0; i < d; ++i) gflat = gflat * axes_[i].groups() + axes_[i].group_of_mode(idx[i]);
        amp[flat] = std::sqrt(weights_[gflat]);
        for (std::size_t i = d; i-- > 0;) {
            if (++idx[i] < axes_[i].modes()) break;
            idx[i] = 0;
        }
    }
    return amp;
}

SpectralValue cov_spectral(const MaternParams& params, const BoundarySpec& bc, const BoxDomain& box,
                           std::span<const double> x, std::span<const double> y, const TruncationSpec& trunc)
{
    const SpectralCovariance cov(params, bc, box, trunc);
    return cov.evaluate(x, y);
}

}  // namespace mwin
