#include "mwin/domain.hpp"

#include <algorithm>
#include <cmath>

#include "mwin/errors.hpp"

namespace mwin {

BoxDomain::BoxDomain(double delta, double ell, std::vector<double> lengths)
    : delta_(delta), ell_(ell), lengths_(std::move(lengths))
{
}

BoxDomain BoxDomain::cubic(int d, double delta, double ell)
{
    if (d < 1 || d > 3) detail::domain_fail("BoxDomain", "d must be 1, 2 or 3");
    if (!(delta >= 0.0) || !std::isfinite(delta)) detail::domain_fail("BoxDomain", "delta must be non-negative");
    if (!(ell > 0.0) || !std::isfinite(ell)) detail::domain_fail("BoxDomain", "ell must be positive");
    return BoxDomain(delta, ell, std::vector<double>(d, delta + ell));
}

BoxDomain BoxDomain::rectangular(double delta, double ell, std::vector<double> lengths)
{
    if (lengths.empty() || lengths.size() > 3) detail::domain_fail("BoxDomain", "d must be 1, 2 or 3");
    if (!(delta >= 0.0) || !std::isfinite(delta)) detail::domain_fail("BoxDomain", "delta must be non-negative");
    if (!(ell > 0.0) || !std::isfinite(ell)) detail::domain_fail("BoxDomain", "ell must be positive");
    for (double len : lengths) {
        // D must fit inside D_ext with margin δ/2 on both sides.
        if (!(len >= delta + ell)) detail::domain_fail("BoxDomain", "every length must be >= delta + ell");
    }
    return BoxDomain(delta, ell, std::move(lengths));
}

double BoxDomain::min_length() const
{
    return *std::min_element(lengths_.begin(), lengths_.end());
}

double BoxDomain::max_length() const
{
    return *std::max_element(lengths_.begin(), lengths_.end());
}

bool BoxDomain::contains_closure(std::span<const double> x) const
{
    if (x.size() != lengths_.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0.0 || x[i] > lengths_[i]) return false;
    }
    return true;
}

BoundarySpec BoundarySpec::robin(double beta)
{
    if (!(beta > 0.0) || !std::isfinite(beta)) detail::domain_fail("BoundarySpec", "Robin coefficient must be positive");
    return BoundarySpec(BoundaryKind::Robin, beta);
}

double BoundarySpec::beta() const
{
    if (!beta_) detail::domain_fail("BoundarySpec", "beta is only defined for Robin conditions");
    return *beta_;
}

char BoundarySpec::tag() const
{
    switch (kind_) {
    case BoundaryKind::Dirichlet: return 'D';
    case BoundaryKind::Neumann: return 'N';
    case BoundaryKind::Periodic: return 'P';
    case BoundaryKind::Robin: return 'R';
    }
    return '?';
}

TruncationSpec TruncationSpec::from_h(double h)
{
    if (!(h > 0.0) || !std::isfinite(h)) detail::domain_fail("TruncationSpec", "h must be positive");
    return TruncationSpec(h, 0);
}

TruncationSpec TruncationSpec::from_kmax(long kmax)
{
    if (kmax < 0) detail::domain_fail("TruncationSpec", "kmax must be non-negative");
    return TruncationSpec(std::nullopt, kmax);
}

long TruncationSpec::kmax_for(double length) const
{
    if (!h_) return kmax_;
    return static_cast<long>(std::ceil(length / *h_)) + 1;
}

std::vector<double> domain_grid(const BoxDomain& box, int n)
{
    if (n < 2) detail::domain_fail("domain_grid", "need at least 2 points per axis");
    const int d = box.dim();
    std::vector<double> axis(n);
    for (int i = 0; i < n; ++i) {
        axis[i] = box.domain_lo() + box.ell() * static_cast<double>(i) / (n - 1);
    }
    long total = 1;
    for (int i = 0; i < d; ++i) total *= n;
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(total * d));
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        std::vector<double> p(d);
        for (int ax = d - 1; ax >= 0; --ax) {
            p[ax] = axis[rem % n];
            rem /= n;
        }
        pts.insert(pts.end(), p.begin(), p.end());
    }
    return pts;
}

}  // namespace mwin
