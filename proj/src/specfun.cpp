#include "mwin/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mwin/errors.hpp"

namespace mwin::specfun {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

// Taylor coefficients of 1/Γ(z) = Σ_{k>=1} c_k z^k (Abramowitz & Stegun 6.1.34).
constexpr std::array<double, 26> kRecipGamma = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
};

// Even and odd parts of 1/Γ(1+μ) = Σ c_{k+1} μ^k, split so that the Temme
// coefficients Γ1, Γ2 need no division by μ.
struct RecipGammaParts {
    double even;  // Σ c_{2j+1} μ^{2j}
    double odd;   // Σ c_{2j+2} μ^{2j}
};

RecipGammaParts recip_gamma_parts(double mu)
{
    const double mu2 = mu * mu;
    double even = 0.0;
    double odd = 0.0;
    for (int k = static_cast<int>(kRecipGamma.size()) - 2; k >= 0; k -= 2) {
        even = even * mu2 + kRecipGamma[k];
        odd = odd * mu2 + kRecipGamma[k + 1];
    }
    return {even, odd};
}

struct KPair {
    double k_mu;   // K_μ(x) · e^{-log_scale}
    double k_mu1;  // K_{μ+1}(x) · e^{-log_scale}
    double log_scale;
};

// Temme's series, |μ| <= 1/2, 0 < x <= 2.
KPair temme_series(double mu, double x)
{
    const auto parts = recip_gamma_parts(mu);
    const double gam1 = -parts.odd;
    const double gam2 = parts.even;
    const double gampl = parts.even + mu * parts.odd;  // 1/Γ(1+μ)
    const double gammi = parts.even - mu * parts.odd;  // 1/Γ(1-μ)

    const double x2 = 0.5 * x;
    const double pimu = std::numbers::pi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    const double mu2 = mu * mu;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
        ff = (i * ff + p + q) / (i * i - mu2);
        c *= d / i;
        p /= i - mu;
        q /= i + mu;
        const double del = c * ff;
        sum += del;
        sum1 += c * (p - i * ff);
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i > kMaxIter) {
        std::ostringstream os;
        os << "bessel_k: Temme series did not converge (mu=" << mu << ", x=" << x << ")";
        throw NumericalError(os.str());
    }
    return {sum, sum1 * 2.0 / x, 0.0};
}

// Steed's continued fraction CF2 with the Temme normalisation, |μ| <= 1/2, x > 2.
// Values are returned scaled by e^{x}.
KPair steed_cf2(double mu, double x)
{
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu * mu;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) break;
    }
    if (i > kMaxIter) {
        std::ostringstream os;
        os << "bessel_k: continued fraction did not converge (mu=" << mu << ", x=" << x << ")";
        throw NumericalError(os.str());
    }
    h *= a1;
    const double k_mu = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    const double k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
    return {k_mu, k_mu1, -x};
}

}  // namespace

double ln_gamma(double x)
{
    if (!(x > 0.0) || std::isnan(x)) {
        detail::domain_fail("ln_gamma", "argument must be positive");
    }
    if (x == std::numeric_limits<double>::infinity()) return x;
    if (x < 150.0) return std::log(std::tgamma(x));
    // Stirling series; the first omitted term is below 1e-17 for x >= 150.
    const double ix = 1.0 / x;
    const double ix2 = ix * ix;
    const double series =
        ix * (1.0 / 12.0 - ix2 * (1.0 / 360.0 - ix2 * (1.0 / 1260.0 - ix2 / 1680.0)));
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

double rgamma1p(double mu)
{
    const auto parts = recip_gamma_parts(mu);
    return parts.even + mu * parts.odd;
}

BesselEval bessel_k(double nu, double x)
{
    if (!std::isfinite(nu)) detail::domain_fail("bessel_k", "order must be finite");
    if (!(x > 0.0) || std::isnan(x)) detail::domain_fail("bessel_k", "argument must be positive");

    BesselEval out;
    out.order = nu;
    out.argument = x;
    if (x == std::numeric_limits<double>::infinity()) {
        out.value = 0.0;
        out.log_value = -std::numeric_limits<double>::infinity();
        return out;
    }

    const double anu = std::abs(nu);
    const int steps = static_cast<int>(anu + 0.5);
    const double mu = anu - steps;

    KPair kp = x <= 2.0 ? temme_series(mu, x) : steed_cf2(mu, x);
    if (!(kp.k_mu > 0.0) || !std::isfinite(kp.k_mu)) {
        std::ostringstream os;
        os << "bessel_k: non-positive seed value (nu=" << nu << ", x=" << x << ")";
        throw NumericalError(os.str());
    }

    double log_scale = kp.log_scale + std::log(kp.k_mu);
    double k_lo = 1.0;
    double k_hi = kp.k_mu1 / kp.k_mu;
    const double two_over_x = 2.0 / x;
    constexpr double kRescale = 1e250;
    for (int i = 1; i <= steps; ++i) {
        const double next = (mu + i) * two_over_x * k_hi + k_lo;
        k_lo = k_hi;
        k_hi = next;
        if (k_hi > kRescale) {
            k_lo /= kRescale;
            k_hi /= kRescale;
            log_scale += std::log(kRescale);
        }
    }
    out.log_value = log_scale + std::log(k_lo);
    out.value = std::exp(out.log_value);
    return out;
}

double log_bessel_k(double nu, double x)
{
    return bessel_k(nu, x).log_value;
}

}  // namespace mwin::specfun
