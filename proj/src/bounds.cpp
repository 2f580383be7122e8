#include "mwin/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mwin/errors.hpp"
#include "mwin/sum.hpp"

namespace mwin {

namespace {

constexpr long kMaxLatticeRadius = 20000;

double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Σ_{i>=0} (a + i)^p z^i for p in {0, 1, 2}.
double unit_step_series(double a, int p, double z)
{
    const double w = 1.0 - z;
    const double s0 = 1.0 / w;
    const double s1 = z / (w * w);
    const double s2 = z * (1.0 + z) / (w * w * w);
    switch (p) {
    case 0: return s0;
    case 1: return a * s0 + s1;
    default: return a * a * s0 + 2.0 * a * s1 + s2;
    }
}

// One-sided shell t = ‖k‖∞ >= K+1 of ℕ₀^d: at most d(t+1)^{d-1} points, each with
// ‖L∘k‖₂ >= t L_min, and C((K+1+i)L) <= C((K+1)L) f(L)^i.
double lattice_tail(const MaternParams& params, double l_min, double z, long radius)
{
    const int d = params.d;
    const double lead = matern_radial(params, static_cast<double>(radius + 1) * l_min);
    return d * lead * unit_step_series(static_cast<double>(radius) + 2.0, d - 1, z);
}

double shell_sum(const MaternParams& params, const BoxDomain& box, long t)
{
    const int d = params.d;
    std::vector<double> terms;
    std::vector<long> k(d, 0);
    for (;;) {
        long inf = 0;
        double c[3];
        for (int i = 0; i < d; ++i) {
            inf = std::max(inf, k[i]);
            c[i] = box.length(i) * static_cast<double>(k[i]);
        }
        if (inf == t) terms.push_back(matern_radial(params, euclidean_norm(std::span<const double>(c, d))));
        int i = d - 1;
        while (i >= 0 && k[i] == t) {
            k[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++k[i];
    }
    return sum_descending(terms);
}

void check_delta(double delta, const char* where)
{
    if (!(delta >= 0.0) || !std::isfinite(delta)) detail::domain_fail(where, "delta must be non-negative");
}

}  // namespace

LatticeSum lattice_sum(const MaternParams& params, const BoxDomain& box, double rel_tol)
{
    if (params.d != box.dim()) detail::domain_fail("lattice_sum", "parameter and box dimensions differ");
    const double l_min = box.min_length();
    const double z = f_func(params.nu, params.kappa, l_min);
    if (!(z < 1.0)) throw NumericalError("lattice_sum: decay ratio f(L) is not below 1");
    std::vector<double> shells;
    LatticeSum out;
    for (long t = 1; t <= kMaxLatticeRadius; ++t) {
        shells.push_back(shell_sum(params, box, t));
        const double tail = lattice_tail(params, l_min, z, t);
        CompensatedSum s;
        for (double v : shells) s.add(v);
        if (tail <= rel_tol * s.value() || tail < std::numeric_limits<double>::min()) {
            out.value = s.value();
            out.tail_bound = tail;
            out.radius = t;
            return out;
        }
    }
    throw NumericalError("lattice_sum: remainder not certified within radius 20000");
}

double corollary_bound(const MaternParams& params, double delta, const BoxDomain& box)
{
    check_delta(delta, "corollary_bound");
    const auto lat = lattice_sum(params, box);
    const double two_d = std::ldexp(1.0, params.d);
    return (two_d - 1.0) * matern_radial(params, delta) + two_d * (lat.value + lat.tail_bound);
}

double dirichlet_bound(const MaternParams& params, double delta, const BoxDomain& box)
{
    check_delta(delta, "dirichlet_bound");
    const auto lat = lattice_sum(params, box);
    const double half = std::ldexp(1.0, params.d - 1);
    return half * (matern_radial(params, delta) + lat.value + lat.tail_bound);
}

namespace {

// X = 2^d d! f(ℓ) / (1 − f(ℓ))^d, so that A = (2^d − 1)(1 + X).
double a_excess(const MaternParams& params, double ell, const char* where)
{
    if (!(ell > 0.0)) detail::domain_fail(where, "ell must be positive");
    const int d = params.d;
    const double f = f_func(params.nu, params.kappa, ell);
    if (!(f < 1.0)) detail::domain_fail(where, "f(ell) must be below 1");
    return std::ldexp(1.0, d) * factorial(d) * f / std::pow(1.0 - f, d);
}

}  // namespace

double constant_a(const MaternParams& params, double ell)
{
    return (std::ldexp(1.0, params.d) - 1.0) * (1.0 + a_excess(params, ell, "constant_a"));
}

BoundReport main_bound(const MaternParams& params, double delta, double ell)
{
    check_delta(delta, "main_bound");
    if (!(ell > 0.0)) detail::domain_fail("main_bound", "ell must be positive");
    const auto box = BoxDomain::cubic(params.d, delta, ell);
    const auto lat = lattice_sum(params, box);
    const double c_delta = matern_radial(params, delta);
    const double two_d = std::ldexp(1.0, params.d);

    BoundReport r;
    r.delta = delta;
    r.ell = ell;
    r.f_ell = f_func(params.nu, params.kappa, ell);
    r.A = constant_a(params, ell);
    // (2^d − 1)C(δ) + (2^d − 1)X C(δ): keeps X C(δ) even when it is below one ulp of A.
    r.main_bound = (two_d - 1.0) * c_delta + (two_d - 1.0) * a_excess(params, ell, "main_bound") * c_delta;
    r.lattice_tail = lat.tail_bound;
    r.corollary_bound = (two_d - 1.0) * c_delta + two_d * (lat.value + lat.tail_bound);
    r.dirichlet_bound = 0.5 * two_d * (c_delta + lat.value + lat.tail_bound);
    return r;
}

BoundReport aniso_bound(double sigma2, double nu, const AnisoMetric& metric, double delta, double ell, int d)
{
    if (metric.dim() != d) detail::domain_fail("aniso_bound", "metric dimension does not match d");
    const auto params = derive_params(sigma2, metric.rho_max(), nu, d);
    return main_bound(params, delta, ell);
}

std::uint64_t eulerian(int n, int k)
{
    if (n < 1) detail::domain_fail("eulerian", "n must be at least 1");
    if (k < 0 || k > n - 1) detail::domain_fail("eulerian", "k must lie in [0, n-1]");
    if (n > 20) detail::domain_fail("eulerian", "n above 20 overflows 64 bits");
    // A(m, j) = (j + 1) A(m-1, j) + (m - j) A(m-1, j-1)
    std::vector<std::uint64_t> row{1};
    for (int m = 2; m <= n; ++m) {
        std::vector<std::uint64_t> next(m, 0);
        for (int j = 0; j < m; ++j) {
            const std::uint64_t keep = j < m - 1 ? static_cast<std::uint64_t>(j + 1) * row[j] : 0;
            const std::uint64_t move = j > 0 ? static_cast<std::uint64_t>(m - j) * row[j - 1] : 0;
            next[j] = keep + move;
        }
        row = std::move(next);
    }
    return row[k];
}

double polylog_partial(double s, double z, long terms)
{
    if (!(std::fabs(z) < 1.0)) detail::domain_fail("polylog_partial", "|z| must be below 1");
    if (terms < 0) detail::domain_fail("polylog_partial", "terms must be non-negative");
    CompensatedSum sum;
    double zk = 1.0;
    for (long k = 1; k <= terms; ++k) {
        zk *= z;
        if (zk == 0.0) break;
        sum.add(zk * std::pow(static_cast<double>(k), -s));
    }
    return sum.value();
}

double power_series_closed_form(int d, double z)
{
    if (d < 1) detail::domain_fail("power_series_closed_form", "d must be at least 1");
    if (!(std::fabs(z) < 1.0)) detail::domain_fail("power_series_closed_form", "|z| must be below 1");
    if (d == 1) return 1.0 / (1.0 - z);
    double num = 0.0;
    double zj = 1.0;
    for (int j = 0; j <= d - 2; ++j) {
        num += static_cast<double>(eulerian(d - 1, j)) * zj;
        zj *= z;
    }
    return num / std::pow(1.0 - z, d);
}

}  // namespace mwin
