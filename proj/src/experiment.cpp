#include "mwin/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mwin/bounds.hpp"
#include "mwin/errors.hpp"
#include "mwin/folded.hpp"
#include "mwin/sampler.hpp"
#include "mwin/spectral.hpp"

namespace mwin {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

[[noreturn]] void config_fail(int line, const std::string& what)
{
    detail::domain_fail("config line " + std::to_string(line), what);
}

double parse_double(const std::string& s, int line)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) config_fail(line, "not a number: '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        config_fail(line, "not a number: '" + s + "'");
    }
}

long long parse_integer(const std::string& s, int line)
{
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) config_fail(line, "not an integer: '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        config_fail(line, "not an integer: '" + s + "'");
    }
}

}  // namespace

MaternParams ExperimentConfig::params() const
{
    return derive_params(sigma2, rho, nu, d);
}

std::vector<double> ExperimentConfig::delta_grid() const
{
    return deltas.empty() ? default_deltas(rho) : deltas;
}

int ExperimentConfig::grid_points() const
{
    return n_grid > 0 ? n_grid : default_n_grid(d, nu);
}

double ExperimentConfig::truncation_h() const
{
    return trunc_h ? *trunc_h : default_trunc_h(d);
}

BoundarySpec ExperimentConfig::boundary(char tag) const
{
    switch (tag) {
    case 'D': return BoundarySpec::dirichlet();
    case 'N': return BoundarySpec::neumann();
    case 'P': return BoundarySpec::periodic();
    case 'R': return BoundarySpec::robin(robin_beta ? *robin_beta : params().kappa);
    default: detail::domain_fail("ExperimentConfig", std::string("unknown boundary tag '") + tag + "'");
    }
}

std::vector<double> default_deltas(double rho)
{
    std::vector<double> out{0.0};
    const double lo = 0.05 * rho;
    const double hi = 6.0 * rho;
    for (int i = 0; i < 24; ++i) out.push_back(lo * std::pow(hi / lo, i / 23.0));
    out.back() = hi;
    return out;
}

int default_n_grid(int d, double nu)
{
    if (d == 1) return nu < 0.5 ? 10 : 15;
    return nu < 0.5 ? 3 : 5;
}

double default_trunc_h(int d)
{
    return d == 1 ? 1e-4 : 5e-3;
}

ExperimentConfig parse_config(std::istream& in)
{
    ExperimentConfig cfg;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(raw);
        if (text.empty() || text[0] == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) config_fail(line, "expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (value.empty()) config_fail(line, "empty value for '" + key + "'");

        if (key == "sigma2") {
            cfg.sigma2 = parse_double(value, line);
        } else if (key == "rho") {
            cfg.rho = parse_double(value, line);
        } else if (key == "nu") {
            cfg.nu = parse_double(value, line);
        } else if (key == "d") {
            cfg.d = static_cast<int>(parse_integer(value, line));
        } else if (key == "bc") {
            cfg.bcs.clear();
            for (const auto& item : split_list(value)) {
                if (item.size() != 1 || std::string("DNPR").find(item[0]) == std::string::npos) {
                    config_fail(line, "boundary must be one of D, N, P, R: '" + item + "'");
                }
                cfg.bcs.push_back(item[0]);
            }
        } else if (key == "delta_list") {
            cfg.deltas.clear();
            for (const auto& item : split_list(value)) {
                const double v = parse_double(item, line);
                if (v < 0.0) config_fail(line, "delta values must be non-negative");
                cfg.deltas.push_back(v);
            }
        } else if (key == "n_grid") {
            const long long n = parse_integer(value, line);
            if (n < 2) config_fail(line, "n_grid must be at least 2");
            cfg.n_grid = static_cast<int>(n);
        } else if (key == "trunc_h") {
            cfg.trunc_h = parse_double(value, line);
            if (!(*cfg.trunc_h > 0.0)) config_fail(line, "trunc_h must be positive");
        } else if (key == "robin_beta") {
            cfg.robin_beta = parse_double(value, line);
            if (!(*cfg.robin_beta > 0.0)) config_fail(line, "robin_beta must be positive");
        } else if (key == "n_samples") {
            cfg.n_samples = static_cast<long>(parse_integer(value, line));
            if (cfg.n_samples < 0) config_fail(line, "n_samples must be non-negative");
        } else if (key == "seed") {
            const long long s = parse_integer(value, line);
            if (s < 0) config_fail(line, "seed must be non-negative");
            cfg.seed = static_cast<std::uint64_t>(s);
        } else {
            config_fail(line, "unknown key '" + key + "'");
        }
    }
    cfg.params();  // validates sigma2, rho, nu, d
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    try {
        return parse_config(in);
    } catch (const DomainError& e) {
        throw DomainError(path + ": " + e.what());
    }
}

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void Table::add_row(const std::vector<double>& values)
{
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_number(v));
    rows.push_back(std::move(row));
}

void Table::write_csv(std::ostream& out) const
{
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

MeasuredErrors measure_errors(const MaternParams& params, double delta, double ell, int n,
                              const std::vector<char>& bcs, const ErrorOptions& opts)
{
    const auto box = BoxDomain::cubic(params.d, delta, ell);
    const auto grid = domain_grid(box, n);
    const std::size_t d = static_cast<std::size_t>(params.d);
    const std::size_t np = grid.size() / d;

    MeasuredErrors out;
    out.bcs = bcs;
    out.errors.assign(bcs.size(), 0.0);
    out.certainty.assign(bcs.size(), 0.0);

    auto find = [&](char tag) -> int {
        const auto it = std::find(bcs.begin(), bcs.end(), tag);
        return it == bcs.end() ? -1 : static_cast<int>(it - bcs.begin());
    };
    const int iD = find('D'), iN = find('N'), iP = find('P'), iR = find('R');

    if (iD >= 0 || iN >= 0 || iP >= 0) {
        const double tol = std::max(opts.image_rel_tol * matern_radial(params, delta), 1e-300);
        const FoldedEvaluator fe = opts.image_radius ? FoldedEvaluator(params, box, *opts.image_radius, *opts.image_radius)
                                                     : FoldedEvaluator(params, box, tol);
        for (std::size_t a = 0; a < np; ++a) {
            for (std::size_t b = a; b < np; ++b) {
                const std::span<const double> x(&grid[a * d], d), y(&grid[b * d], d);
                if (iD >= 0 || iN >= 0) {
                    const auto r = fe.reflected(x, y);
                    if (iN >= 0) {
                        out.errors[iN] = std::max(out.errors[iN], std::fabs(r.neumann.excess));
                        out.certainty[iN] = r.neumann.tail_bound;
                    }
                    if (iD >= 0) {
                        out.errors[iD] = std::max(out.errors[iD], std::fabs(r.dirichlet.excess));
                        out.certainty[iD] = r.dirichlet.tail_bound;
                    }
                }
                if (iP >= 0) {
                    const auto r = fe.periodic(x, y);
                    out.errors[iP] = std::max(out.errors[iP], std::fabs(r.excess));
                    out.certainty[iP] = r.tail_bound;
                }
            }
        }
    }

    if (iR >= 0) {
        const auto bc = BoundarySpec::robin(opts.robin_beta ? *opts.robin_beta : params.kappa);
        const SpectralCovariance cov(params, bc, box, opts.trunc);
        const auto g = cov.gram(grid);
        double err = 0.0;
        for (std::size_t a = 0; a < np; ++a) {
            for (std::size_t b = a; b < np; ++b) {
                const std::span<const double> x(&grid[a * d], d), y(&grid[b * d], d);
                err = std::max(err, std::fabs(g[a * np + b] - matern_cov(params, x, y)));
            }
        }
        out.errors[iR] = err;
        out.certainty[iR] = cov.tail_bound();
    }
    return out;
}

Table run_cov_slice(const ExperimentConfig& cfg)
{
    const auto params = cfg.params();
    const int n = cfg.n_grid > 0 ? cfg.n_grid : 101;
    const std::size_t d = static_cast<std::size_t>(cfg.d);
    const auto trunc = TruncationSpec::from_h(cfg.truncation_h());

    Table t;
    t.header = {"delta", "s", "matern"};
    for (char bc : cfg.bcs) t.header.push_back(std::string("C_") + bc);

    for (double delta : cfg.delta_grid()) {
        const auto box = BoxDomain::cubic(cfg.d, delta, ExperimentConfig::ell);
        const std::vector<double> x0(d, box.domain_lo());
        std::vector<double> pts;
        std::vector<double> svals;
        for (int i = 0; i < n; ++i) {
            const double s = box.ell() * static_cast<double>(i) / (n - 1);
            svals.push_back(s);
            for (std::size_t k = 0; k < d; ++k) pts.push_back(box.domain_lo() + s);
        }
        std::vector<std::vector<double>> cols(cfg.bcs.size(), std::vector<double>(n));
        const FoldedEvaluator fe(params, box, 1e-12 * params.sigma2);
        for (std::size_t b = 0; b < cfg.bcs.size(); ++b) {
            const char tag = cfg.bcs[b];
            if (tag == 'R') {
                const SpectralCovariance cov(params, cfg.boundary('R'), box, trunc);
                for (int i = 0; i < n; ++i) cols[b][i] = cov(x0, std::span<const double>(&pts[i * d], d));
                continue;
            }
            for (int i = 0; i < n; ++i) {
                const std::span<const double> y(&pts[i * d], d);
                if (tag == 'P') {
                    cols[b][i] = fe.periodic(x0, y).value;
                } else {
                    const auto r = fe.reflected(x0, y);
                    cols[b][i] = tag == 'N' ? r.neumann.value : r.dirichlet.value;
                }
            }
        }
        for (int i = 0; i < n; ++i) {
            std::vector<double> row{delta, svals[i], matern_cov(params, x0, std::span<const double>(&pts[i * d], d))};
            for (const auto& c : cols) row.push_back(c[i]);
            t.add_row(row);
        }
    }
    return t;
}

Table run_error_curve(const ExperimentConfig& cfg)
{
    const auto params = cfg.params();
    Table t;
    t.header = {"delta"};
    for (char bc : cfg.bcs) t.header.push_back(std::string("err_") + bc);
    for (const char* c : {"corollary_bound", "main_bound", "dirichlet_bound", "A"}) t.header.emplace_back(c);

    ErrorOptions opts;
    opts.trunc = TruncationSpec::from_h(cfg.truncation_h());
    opts.robin_beta = cfg.robin_beta;
    for (double delta : cfg.delta_grid()) {
        const auto m = measure_errors(params, delta, ExperimentConfig::ell, cfg.grid_points(), cfg.bcs, opts);
        const auto br = main_bound(params, delta, ExperimentConfig::ell);
        std::vector<double> row{delta};
        row.insert(row.end(), m.errors.begin(), m.errors.end());
        row.insert(row.end(), {br.corollary_bound, br.main_bound, br.dirichlet_bound, br.A});
        t.add_row(row);
    }
    return t;
}

Table run_bounds(const ExperimentConfig& cfg)
{
    const auto params = cfg.params();
    Table t;
    t.header = {"delta", "C_delta", "f_ell", "A", "main_bound", "corollary_bound", "dirichlet_bound", "lattice_tail"};
    for (double delta : cfg.delta_grid()) {
        const auto br = main_bound(params, delta, ExperimentConfig::ell);
        t.add_row({delta, matern_radial(params, delta), br.f_ell, br.A, br.main_bound, br.corollary_bound,
                   br.dirichlet_bound, br.lattice_tail});
    }
    return t;
}

Table run_sampler_check(const ExperimentConfig& cfg)
{
    if (cfg.n_samples < 2) detail::domain_fail("run_sampler_check", "n_samples must be at least 2");
    const auto params = cfg.params();
    const double delta = cfg.delta_grid().front();
    const auto box = BoxDomain::cubic(cfg.d, delta, ExperimentConfig::ell);
    const int n = cfg.n_grid > 0 ? cfg.n_grid : (cfg.d == 1 ? 10 : 3);
    const auto grid = domain_grid(box, n);
    const auto trunc = TruncationSpec::from_h(cfg.truncation_h());

    Table t;
    t.header = {"bc", "stat", "i", "j", "empirical", "reference", "difference", "std_error", "z"};
    for (char tag : cfg.bcs) {
        const FieldSampler sampler(params, cfg.boundary(tag), box, grid, trunc);
        std::vector<FieldSample> samples;
        samples.reserve(static_cast<std::size_t>(cfg.n_samples));
        for (long s = 0; s < cfg.n_samples; ++s) samples.push_back(sampler.sample(cfg.seed + static_cast<std::uint64_t>(s)));
        const auto emp = empirical_cov(samples);
        const auto ref = sampler.covariance().gram(grid);
        const std::size_t np = emp.points;
        auto emit = [&](const char* stat, std::size_t i, std::size_t j, double e, double r, double se) {
            const double diff = e - r;
            t.rows.push_back({std::string(1, tag), stat, std::to_string(i), std::to_string(j), format_number(e),
                              format_number(r), format_number(diff), format_number(se),
                              format_number(se > 0.0 ? diff / se : 0.0)});
        };
        for (std::size_t i = 0; i < np; ++i) {
            for (std::size_t j = i; j < np; ++j) emit("cov", i, j, emp(i, j), ref[i * np + j], emp.error(i, j));
        }
        for (std::size_t i = 0; i < np; ++i) {
            emit("mean", i, i, emp.mean[i], 0.0, std::sqrt(ref[i * np + i] / static_cast<double>(emp.n_samples)));
        }
    }
    return t;
}

}  // namespace mwin
