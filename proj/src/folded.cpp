#include "mwin/folded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mwin/errors.hpp"
#include "mwin/sum.hpp"

namespace mwin {

namespace {

constexpr long kMaxRadius = 100000;

// Σ_{i>=0} (a + b i)^p z^i for p in {0, 1, 2}.
double shifted_power_series(double a, double b, int p, double z)
{
    const double w = 1.0 - z;
    const double s0 = 1.0 / w;
    const double s1 = z / (w * w);
    const double s2 = z * (1.0 + z) / (w * w * w);
    switch (p) {
    case 0: return s0;
    case 1: return a * s0 + b * s1;
    default: return a * a * s0 + 2.0 * a * b * s1 + b * b * s2;
    }
}

// Shell t = ‖k‖∞ >= K+1 holds at most 2d(2t+1)^{d-1} points, each at distance
// >= (t-1)P_min from the source, and C((K+i)P) <= C(KP) f(P)^i.
double raw_tail(const MaternParams& params, double p_min, double z, long radius)
{
    const int d = params.d;
    const double lead = matern_radial(params, static_cast<double>(radius) * p_min);
    return 2.0 * d * lead * shifted_power_series(2.0 * radius + 3.0, 2.0, d - 1, z);
}

void check_periods(const MaternParams& params, std::span<const double> periods)
{
    if (periods.size() != static_cast<std::size_t>(params.d)) {
        detail::domain_fail("image_tail_bound", "period count does not match dimension");
    }
    for (double p : periods) {
        if (!(p > 0.0)) detail::domain_fail("image_tail_bound", "periods must be positive");
    }
}

void check_points(int d, std::span<const double> x, std::span<const double> y, const char* where)
{
    if (x.size() != static_cast<std::size_t>(d) || y.size() != static_cast<std::size_t>(d)) {
        detail::domain_fail(where, "point dimension mismatch");
    }
}

// Appends C(r + P∘k) for every ‖k‖∞ <= radius to `out`, optionally skipping k = 0.
// When `signed_out` is non-null the same terms multiplied by `sign` go there too.
void family_terms(const MaternParams& params, std::span<const double> periods, std::span<const double> r,
                  long radius, bool skip_origin, std::vector<double>& out, std::vector<double>* signed_out,
                  int sign)
{
    const int d = params.d;
    std::vector<long> k(d, -radius);
    for (;;) {
        bool origin = true;
        double c[3];
        for (int i = 0; i < d; ++i) {
            c[i] = r[i] + periods[i] * static_cast<double>(k[i]);
            origin = origin && k[i] == 0;
        }
        if (!(skip_origin && origin)) {
            const double v = matern_radial(params, euclidean_norm(std::span<const double>(c, d)));
            out.push_back(v);
            if (signed_out) signed_out->push_back(sign * v);
        }
        int i = d - 1;
        while (i >= 0 && k[i] == radius) {
            k[i] = -radius;
            --i;
        }
        if (i < 0) break;
        ++k[i];
    }
}

std::vector<double> doubled(const BoxDomain& box)
{
    std::vector<double> out(box.lengths());
    for (double& v : out) v *= 2.0;
    return out;
}

}  // namespace

std::vector<SignVector> sign_vectors(int d)
{
    if (d < 1 || d > 3) detail::domain_fail("sign_vectors", "d must be 1, 2 or 3");
    std::vector<SignVector> out;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        SignVector s;
        for (int i = 0; i < d; ++i) {
            const int e = (mask >> i) & 1u ? -1 : 1;
            s.eps.push_back(e);
            s.parity *= e;
        }
        out.push_back(std::move(s));
    }
    return out;
}

double image_tail_bound(const MaternParams& params, std::span<const double> periods, long radius)
{
    check_periods(params, periods);
    if (radius < 0) detail::domain_fail("image_tail_bound", "radius must be non-negative");
    const double p_min = *std::min_element(periods.begin(), periods.end());
    const double z = f_func(params.nu, params.kappa, p_min);
    if (!(z < 1.0)) throw NumericalError("image_tail_bound: decay ratio f(L) is not below 1");
    double best = std::numeric_limits<double>::infinity();
    for (long j = 0; j <= radius; ++j) best = std::min(best, raw_tail(params, p_min, z, j));
    return best;
}

double image_tail_bound(const MaternParams& params, const BoxDomain& box, long radius)
{
    return image_tail_bound(params, box.lengths(), radius);
}

long image_radius(const MaternParams& params, std::span<const double> periods, double tol)
{
    check_periods(params, periods);
    if (!(tol > 0.0)) detail::domain_fail("image_radius", "tolerance must be positive");
    const double p_min = *std::min_element(periods.begin(), periods.end());
    const double z = f_func(params.nu, params.kappa, p_min);
    if (!(z < 1.0)) throw NumericalError("image_radius: decay ratio f(L) is not below 1");
    for (long k = 0; k <= kMaxRadius; ++k) {
        if (raw_tail(params, p_min, z, k) <= tol) return k;
    }
    throw NumericalError("image_radius: no radius up to 100000 meets the tolerance");
}

FoldedEvaluator::FoldedEvaluator(const MaternParams& params, const BoxDomain& box, double tol)
    : params_(params), periods_(box.lengths()), doubled_(doubled(box)), signs_(sign_vectors(box.dim()))
{
    if (params.d != box.dim()) detail::domain_fail("FoldedEvaluator", "parameter and box dimensions differ");
    radius_p_ = image_radius(params, periods_, tol);
    // Every reflected family shares the budget.
    radius_r_ = image_radius(params, doubled_, tol / static_cast<double>(signs_.size()));
    tail_p_ = image_tail_bound(params, periods_, radius_p_);
    tail_r_ = static_cast<double>(signs_.size()) * image_tail_bound(params, doubled_, radius_r_);
}

FoldedEvaluator::FoldedEvaluator(const MaternParams& params, const BoxDomain& box, long periodic_radius,
                                 long reflected_radius)
    : params_(params), periods_(box.lengths()), doubled_(doubled(box)), signs_(sign_vectors(box.dim())),
      radius_p_(periodic_radius), radius_r_(reflected_radius)
{
    if (params.d != box.dim()) detail::domain_fail("FoldedEvaluator", "parameter and box dimensions differ");
    if (periodic_radius < 0 || reflected_radius < 0) detail::domain_fail("FoldedEvaluator", "radius must be non-negative");
    tail_p_ = image_tail_bound(params, periods_, radius_p_);
    tail_r_ = static_cast<double>(signs_.size()) * image_tail_bound(params, doubled_, radius_r_);
}

ImageSum FoldedEvaluator::periodic(std::span<const double> x, std::span<const double> y) const
{
    check_points(params_.d, x, y, "cov_folded_periodic");
    std::vector<double> r(params_.d);
    for (int i = 0; i < params_.d; ++i) r[i] = x[i] - y[i];
    std::vector<double> terms;
    family_terms(params_, periods_, r, radius_p_, true, terms, nullptr, 1);
    ImageSum s;
    s.radius = radius_p_;
    s.excess = sum_descending(terms);
    s.value = matern_cov(params_, x, y) + s.excess;
    s.tail_bound = tail_p_;
    return s;
}

FoldedEvaluator::Reflected FoldedEvaluator::reflected(std::span<const double> x, std::span<const double> y) const
{
    check_points(params_.d, x, y, "cov_folded_neumann");
    std::vector<double> plus;
    std::vector<double> alternating;
    std::vector<double> r(params_.d);
    for (std::size_t f = 0; f < signs_.size(); ++f) {
        for (int i = 0; i < params_.d; ++i) r[i] = x[i] - signs_[f].eps[i] * y[i];
        family_terms(params_, doubled_, r, radius_r_, f == 0, plus, &alternating, signs_[f].parity);
    }
    const double direct = matern_cov(params_, x, y);
    Reflected out;
    out.neumann.radius = out.dirichlet.radius = radius_r_;
    out.neumann.tail_bound = out.dirichlet.tail_bound = tail_r_;
    out.neumann.excess = sum_descending(plus);
    out.neumann.value = direct + out.neumann.excess;
    out.dirichlet.excess = sum_descending(alternating);
    out.dirichlet.value = direct + out.dirichlet.excess;
    return out;
}

namespace {

FoldedEvaluator make_evaluator(const MaternParams& params, const BoxDomain& box)
{
    return FoldedEvaluator(params, box, kDefaultImageTol * params.sigma2);
}

ImageSum fixed_radius_periodic(const MaternParams& params, std::span<const double> periods,
                               std::span<const double> x, std::span<const double> y, long radius)
{
    std::vector<double> r(params.d);
    for (int i = 0; i < params.d; ++i) r[i] = x[i] - y[i];
    std::vector<double> terms;
    family_terms(params, periods, r, radius, true, terms, nullptr, 1);
    ImageSum s;
    s.radius = radius;
    s.excess = sum_descending(terms);
    s.value = matern_cov(params, x, y) + s.excess;
    s.tail_bound = image_tail_bound(params, periods, radius);
    return s;
}

ImageSum fixed_radius_reflected(const MaternParams& params, const BoxDomain& box, std::span<const double> x,
                                std::span<const double> y, long radius, bool alternate)
{
    const auto periods = doubled(box);
    const auto signs = sign_vectors(params.d);
    std::vector<double> plus;
    std::vector<double> alternating;
    std::vector<double> r(params.d);
    for (std::size_t f = 0; f < signs.size(); ++f) {
        for (int i = 0; i < params.d; ++i) r[i] = x[i] - signs[f].eps[i] * y[i];
        family_terms(params, periods, r, radius, f == 0, plus, &alternating, signs[f].parity);
    }
    ImageSum s;
    s.radius = radius;
    s.excess = sum_descending(alternate ? alternating : plus);
    s.value = matern_cov(params, x, y) + s.excess;
    s.tail_bound = static_cast<double>(signs.size()) * image_tail_bound(params, periods, radius);
    return s;
}

void check_radius(std::optional<long> radius, const char* where)
{
    if (radius && *radius < 0) detail::domain_fail(where, "radius must be non-negative");
}

}  // namespace

ImageSum cov_folded_periodic(const MaternParams& params, const BoxDomain& box, std::span<const double> x,
                             std::span<const double> y, std::optional<long> radius)
{
    check_points(params.d, x, y, "cov_folded_periodic");
    check_radius(radius, "cov_folded_periodic");
    if (radius) return fixed_radius_periodic(params, box.lengths(), x, y, *radius);
    return make_evaluator(params, box).periodic(x, y);
}

ImageSum cov_folded_neumann(const MaternParams& params, const BoxDomain& box, std::span<const double> x,
                            std::span<const double> y, std::optional<long> radius)
{
    check_points(params.d, x, y, "cov_folded_neumann");
    check_radius(radius, "cov_folded_neumann");
    if (radius) return fixed_radius_reflected(params, box, x, y, *radius, false);
    return make_evaluator(params, box).reflected(x, y).neumann;
}

ImageSum cov_folded_dirichlet(const MaternParams& params, const BoxDomain& box, std::span<const double> x,
                              std::span<const double> y, std::optional<long> radius)
{
    check_points(params.d, x, y, "cov_folded_dirichlet");
    check_radius(radius, "cov_folded_dirichlet");
    if (radius) return fixed_radius_reflected(params, box, x, y, *radius, true);
    return make_evaluator(params, box).reflected(x, y).dirichlet;
}

}  // namespace mwin
