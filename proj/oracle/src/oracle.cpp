#include "oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

namespace mwin::oracle {

namespace {

template <class F>
void for_each_index(int d, long lo, long hi, F&& f)
{
    std::vector<long> k(d, lo);
    for (;;) {
        f(k);
        int i = d - 1;
        while (i >= 0 && k[i] == hi) {
            k[i] = lo;
            --i;
        }
        if (i < 0) return;
        ++k[i];
    }
}

}  // namespace

double log_bessel_k(double nu, double x)
{
    nu = std::fabs(nu);
    const double q = 0.25 * x * x;
    // log integrand in s = ln t: −e^s − q e^{−s} − ν s, peaked where e^{2s} + ν e^s = q.
    auto log_g = [&](double s) { return -std::exp(s) - q * std::exp(-s) - nu * s; };
    const double peak_t = x * x / (2.0 * (nu + std::hypot(nu, x)));
    const double s0 = std::log(peak_t);
    const double m = log_g(s0);

    const double cut = 60.0;
    double a = s0 - 1.0;
    while (log_g(a) - m > -cut) a -= 1.0;
    double b = s0 + 1.0;
    while (log_g(b) - m > -cut) b += 1.0;

    auto g = [&](double s) { return std::exp(log_g(s) - m); };
    // Composite Gauss–Legendre on panels no wider than the peak's curvature scale.
    const double width = std::min(0.5, 1.0 / std::sqrt(nu + 2.0 * peak_t + 1.0));
    double total = 0.0;
    for (double lo = a; lo < b; lo += width) {
        const double hi = std::min(lo + width, b);
        total += boost::math::quadrature::gauss<double, 30>::integrate(g, lo, hi);
    }
    return std::log(0.5) + nu * std::log(0.5 * x) + m + std::log(total);
}

double bessel_k(double nu, double x)
{
    return std::exp(log_bessel_k(nu, x));
}

double lattice_sum(const MaternParams& params, const BoxDomain& box, long radius)
{
    double sum = 0.0;
    for_each_index(params.d, 0, radius, [&](const std::vector<long>& k) {
        double r2 = 0.0;
        bool zero = true;
        for (int i = 0; i < params.d; ++i) {
            const double c = box.length(i) * static_cast<double>(k[i]);
            r2 += c * c;
            zero = zero && k[i] == 0;
        }
        if (!zero) sum += matern_radial(params, std::sqrt(r2));
    });
    return sum;
}

double image_shells(const MaternParams& params, std::span<const double> periods, std::span<const double> r,
                    long first, long last)
{
    double sum = 0.0;
    for_each_index(params.d, -last, last, [&](const std::vector<long>& k) {
        long inf = 0;
        double r2 = 0.0;
        for (int i = 0; i < params.d; ++i) {
            inf = std::max(inf, std::labs(k[i]));
            const double c = r[i] + periods[i] * static_cast<double>(k[i]);
            r2 += c * c;
        }
        if (inf >= first) sum += matern_radial(params, std::sqrt(r2));
    });
    return sum;
}

}  // namespace mwin::oracle
