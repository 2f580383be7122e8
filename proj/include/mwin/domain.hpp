#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mwin {

/// Window geometry: the domain of interest D = [δ/2, δ/2 + ℓ]^d sits inside the
/// extended box D_ext = (0, L_1) × … × (0, L_d).
class BoxDomain {
public:
    /// Cubic box with L_i = δ + ℓ.
    static BoxDomain cubic(int d, double delta, double ell);
    /// Rectangular box; every L_i must be at least δ + ℓ.
    static BoxDomain rectangular(double delta, double ell, std::vector<double> lengths);

    int dim() const { return static_cast<int>(lengths_.size()); }
    double delta() const { return delta_; }
    double ell() const { return ell_; }
    const std::vector<double>& lengths() const { return lengths_; }
    double length(int axis) const { return lengths_.at(axis); }
    double min_length() const;
    double max_length() const;

    /// Lower and upper coordinate of D along every axis.
    double domain_lo() const { return 0.5 * delta_; }
    double domain_hi() const { return 0.5 * delta_ + ell_; }

    bool contains_closure(std::span<const double> x) const;

private:
    BoxDomain(double delta, double ell, std::vector<double> lengths);

    double delta_;
    double ell_;
    std::vector<double> lengths_;
};

enum class BoundaryKind { Dirichlet, Neumann, Periodic, Robin };

/// Boundary condition on ∂D_ext. `beta` is present exactly for Robin conditions
/// ∂u/∂n + β u = 0.
class BoundarySpec {
public:
    static BoundarySpec dirichlet() { return BoundarySpec(BoundaryKind::Dirichlet, std::nullopt); }
    static BoundarySpec neumann() { return BoundarySpec(BoundaryKind::Neumann, std::nullopt); }
    static BoundarySpec periodic() { return BoundarySpec(BoundaryKind::Periodic, std::nullopt); }
    static BoundarySpec robin(double beta);

    BoundaryKind kind() const { return kind_; }
    double beta() const;
    bool is_robin() const { return kind_ == BoundaryKind::Robin; }

    /// One-letter tag: D, N, P or R.
    char tag() const;

private:
    BoundarySpec(BoundaryKind kind, std::optional<double> beta) : kind_(kind), beta_(beta) {}

    BoundaryKind kind_;
    std::optional<double> beta_;
};

/// Spectral truncation: either a resolution h (per-axis cap ⌈L/h⌉ + 1) or a
/// fixed per-axis index cap.
class TruncationSpec {
public:
    static TruncationSpec from_h(double h);
    static TruncationSpec from_kmax(long kmax);

    /// Index cap on an axis of length L.
    long kmax_for(double length) const;
    std::optional<double> h() const { return h_; }

private:
    TruncationSpec(std::optional<double> h, long kmax) : h_(h), kmax_(kmax) {}

    std::optional<double> h_;
    long kmax_;
};

/// n equispaced points per axis on the closure of D, tensor ordered with the
/// last axis fastest. Each point is stored as d consecutive doubles.
std::vector<double> domain_grid(const BoxDomain& box, int n);

}  // namespace mwin
