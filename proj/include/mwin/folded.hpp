#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mwin/domain.hpp"
#include "mwin/matern.hpp"

namespace mwin {

/// Truncated lattice image sum. `excess` is value − C(x, y), summed without the
/// direct term so that tiny differences keep full relative precision.
struct ImageSum {
    long radius = 0;
    double value = 0.0;
    double excess = 0.0;
    double tail_bound = 0.0;
};

/// Reflection pattern ε ∈ {−1, +1}^d.
struct SignVector {
    std::vector<int> eps;
    int parity = 1;
};

/// All 2^d sign vectors, the identity first.
std::vector<SignVector> sign_vectors(int d);

/// Certified bound on Σ |C(r + P∘k)| over ‖k‖∞ > radius, valid for every offset
/// r with |r_i| <= P_i. Nonincreasing in radius.
double image_tail_bound(const MaternParams& params, std::span<const double> periods, long radius);

/// Tail bound of the periodic image sum on the box (periods L_i).
double image_tail_bound(const MaternParams& params, const BoxDomain& box, long radius);

/// Smallest radius whose tail bound is at most `tol`.
long image_radius(const MaternParams& params, std::span<const double> periods, double tol);

/// Default certification level for image sums, relative to σ².
inline constexpr double kDefaultImageTol = 1e-8;

/// C_P(x, y) = Σ_k C(x + L∘k, y). Without a radius the default tolerance picks one.
ImageSum cov_folded_periodic(const MaternParams& params, const BoxDomain& box, std::span<const double> x,
                             std::span<const double> y, std::optional<long> radius = std::nullopt);

/// C_N(x, y) = Σ_ε C_P^{2L}(x, ε∘y).
ImageSum cov_folded_neumann(const MaternParams& params, const BoxDomain& box, std::span<const double> x,
                            std::span<const double> y, std::optional<long> radius = std::nullopt);

/// C_D(x, y) = Σ_ε parity(ε) C_P^{2L}(x, ε∘y). The tail bound counts every image in absolute value.
ImageSum cov_folded_dirichlet(const MaternParams& params, const BoxDomain& box, std::span<const double> x,
                              std::span<const double> y, std::optional<long> radius = std::nullopt);

/// Reusable evaluator for many point pairs on one box. Picks the image radius once
/// for the absolute tolerance `tol` and shares the reflected families between the
/// Neumann and Dirichlet sums.
class FoldedEvaluator {
public:
    FoldedEvaluator(const MaternParams& params, const BoxDomain& box, double tol);
    /// Fixed radii for the periodic (period L) and reflected (period 2L) families.
    FoldedEvaluator(const MaternParams& params, const BoxDomain& box, long periodic_radius, long reflected_radius);

    long periodic_radius() const { return radius_p_; }
    long reflected_radius() const { return radius_r_; }

    ImageSum periodic(std::span<const double> x, std::span<const double> y) const;

    struct Reflected {
        ImageSum neumann;
        ImageSum dirichlet;
    };
    Reflected reflected(std::span<const double> x, std::span<const double> y) const;

private:
    MaternParams params_;
    std::vector<double> periods_;
    std::vector<double> doubled_;
    std::vector<SignVector> signs_;
    long radius_p_;
    long radius_r_;
    double tail_p_;
    double tail_r_;
};

}  // namespace mwin
