#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mwin/domain.hpp"
#include "mwin/matern.hpp"

namespace mwin {

/// Experiment settings, read from a flat `key = value` file.
///
/// Keys: sigma2, rho, nu, d, bc (comma list of D, N, P, R), delta_list (comma list),
/// n_grid, trunc_h, robin_beta, n_samples, seed. Lines starting with '#' are
/// comments. Unknown keys and malformed values are errors. The domain of interest
/// has side ℓ = 1.
struct ExperimentConfig {
    double sigma2 = 1.0;
    double rho = 0.1;
    double nu = 1.0;
    int d = 1;
    std::vector<char> bcs{'D', 'N', 'P'};
    std::vector<double> deltas;      // empty: default_deltas()
    int n_grid = 0;                  // 0: default_n_grid()
    std::optional<double> trunc_h;   // unset: default_trunc_h()
    std::optional<double> robin_beta;  // unset: κ
    long n_samples = 10000;
    std::uint64_t seed = 1;

    static constexpr double ell = 1.0;

    MaternParams params() const;
    std::vector<double> delta_grid() const;
    int grid_points() const;
    double truncation_h() const;
    BoundarySpec boundary(char tag) const;
};

/// 25 values: 0 followed by 24 geometrically spaced points in [0.05ρ, 6ρ].
std::vector<double> default_deltas(double rho);
/// Points per axis: d = 1 → 15 (10 for ν < 1/2); d >= 2 → 5 (3 for ν < 1/2).
int default_n_grid(int d, double nu);
/// Spectral resolution: 1e-4 for d = 1, 5e-3 otherwise.
double default_trunc_h(int d);

/// Throws DomainError naming the offending line.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// Rectangular table rendered as CSV; numbers use 17 significant digits.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
    void write_csv(std::ostream& out) const;
};

std::string format_number(double v);

/// Max-norm errors max_{x,y ∈ G} |C*(x, y) − C(x, y)| on the n^d grid G of D.
///
/// D, N and P use the folded image sums certified to `image_rel_tol`·C(δ); R uses
/// the truncated spectral expansion with `trunc`.
struct ErrorOptions {
    double image_rel_tol = 1e-12;
    std::optional<long> image_radius;  // overrides the tolerance (same radius for every family)
    TruncationSpec trunc = TruncationSpec::from_h(1e-4);
    std::optional<double> robin_beta;  // unset: κ
};

struct MeasuredErrors {
    std::vector<char> bcs;
    std::vector<double> errors;   // aligned with bcs
    std::vector<double> certainty;  // certified bound on the evaluation error of each entry
};

MeasuredErrors measure_errors(const MaternParams& params, double delta, double ell, int n,
                              const std::vector<char>& bcs, const ErrorOptions& opts);

/// Columns: delta, s, matern, then C_<bc> for every configured condition. Points
/// y = x₀ + s(1, …, 1) run along the diagonal of D from x₀ = (δ/2, …, δ/2);
/// n_grid is the number of slice points (default 101).
Table run_cov_slice(const ExperimentConfig& cfg);

/// Columns: delta, err_<bc> per condition, corollary_bound, main_bound,
/// dirichlet_bound, A.
Table run_error_curve(const ExperimentConfig& cfg);

/// Columns: delta, C_delta, f_ell, A, main_bound, corollary_bound, dirichlet_bound, lattice_tail.
Table run_bounds(const ExperimentConfig& cfg);

/// Monte-Carlo check on the grid of D at the first delta (n_grid points per axis,
/// default 10 for d = 1 and 3 otherwise), seeds seed … seed + n_samples − 1.
/// Columns: bc, stat, i, j, empirical, reference, difference, std_error, z.
/// `stat` is "cov" for covariance entries (reference: spectral covariance) and
/// "mean" for point means (reference: 0, j = i). Throws DomainError when
/// n_samples < 2.
Table run_sampler_check(const ExperimentConfig& cfg);

}  // namespace mwin
