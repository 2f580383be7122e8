#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mwin/bounds.hpp"
#include "mwin/errors.hpp"
#include "mwin/experiment.hpp"
#include "mwin/folded.hpp"

using namespace mwin;

namespace {

ExperimentConfig parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_config(in);
}

std::string csv(const Table& t)
{
    std::ostringstream out;
    t.write_csv(out);
    return out.str();
}

}  // namespace

TEST_SUITE("experiment")
{
    TEST_CASE("config parsing")
    {
        const auto c = parse(
            "# comment\n"
            "sigma2 = 2\n"
            "rho=0.2\n"
            "nu = 1.5\n"
            "d = 2\n"
            "bc = N, R\n"
            "delta_list = 0, 0.1,0.3\n"
            "n_grid = 7\n"
            "trunc_h = 1e-3\n"
            "robin_beta = 4\n"
            "n_samples = 50\n"
            "seed = 9\n"
            "\n");
        CHECK(c.sigma2 == 2.0);
        CHECK(c.rho == 0.2);
        CHECK(c.nu == 1.5);
        CHECK(c.d == 2);
        CHECK(c.bcs == std::vector<char>{'N', 'R'});
        CHECK(c.deltas == std::vector<double>{0.0, 0.1, 0.3});
        CHECK(c.grid_points() == 7);
        CHECK(c.truncation_h() == 1e-3);
        CHECK(c.boundary('R').beta() == 4.0);
        CHECK(c.n_samples == 50);
        CHECK(c.seed == 9u);
    }

    TEST_CASE("config defaults")
    {
        const auto c = parse("");
        CHECK(c.delta_grid().size() == 25);
        CHECK(c.delta_grid().front() == 0.0);
        CHECK(c.delta_grid()[1] == doctest::Approx(0.005));
        CHECK(c.delta_grid().back() == doctest::Approx(0.6));
        CHECK(c.grid_points() == 15);
        CHECK(c.truncation_h() == 1e-4);
        CHECK(c.boundary('R').beta() == doctest::Approx(c.params().kappa));
        CHECK(default_n_grid(1, 0.25) == 10);
        CHECK(default_n_grid(2, 1.0) == 5);
        CHECK(default_n_grid(2, 0.25) == 3);
        CHECK(default_trunc_h(2) == 5e-3);
    }

    TEST_CASE("config errors")
    {
        CHECK_THROWS_AS(parse("colour = red\n"), DomainError);
        CHECK_THROWS_AS(parse("rho = abc\n"), DomainError);
        CHECK_THROWS_AS(parse("rho = 0.1x\n"), DomainError);
        CHECK_THROWS_AS(parse("rho\n"), DomainError);
        CHECK_THROWS_AS(parse("bc = D, Q\n"), DomainError);
        CHECK_THROWS_AS(parse("n_grid = 1\n"), DomainError);
        CHECK_THROWS_AS(parse("delta_list = -0.1\n"), DomainError);
        CHECK_THROWS_AS(parse("d = 4\n"), DomainError);
        try {
            parse("rho = 0.1\nbogus = 1\n");
            FAIL("expected an error");
        } catch (const DomainError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
        CHECK_THROWS(load_config("/nonexistent/path.cfg"));
    }

    TEST_CASE("number formatting")
    {
        CHECK(format_number(0.1) == "1.0000000000000001e-01");
        CHECK(format_number(-2.0) == "-2.0000000000000000e+00");
        CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
        Table t;
        t.header = {"a", "b"};
        t.add_row({1.0, 0.5});
        CHECK(csv(t) == "a,b\n1.0000000000000000e+00,5.0000000000000000e-01\n");
    }

    TEST_CASE("covariance slice")
    {
        auto c = parse("rho = 0.1\nnu = 1\nd = 1\nbc = D, N, P\ndelta_list = 0.2\n");
        const auto t = run_cov_slice(c);
        CHECK(t.header == std::vector<std::string>{"delta", "s", "matern", "C_D", "C_N", "C_P"});
        CHECK(t.rows.size() == 101);
        const auto p = c.params();
        const auto box = BoxDomain::cubic(1, 0.2, 1.0);
        for (const auto& row : t.rows) {
            const double s = std::stod(row[1]);
            const double m = std::stod(row[2]);
            if (s >= 0.2 - 1e-12) {
                CHECK(std::fabs(std::stod(row[3]) - m) <= 2e-2);
                CHECK(std::fabs(std::stod(row[4]) - m) <= 2e-2);
                // The periodic slice also sees the wrapped image at distance L − s.
                CHECK(std::fabs(std::stod(row[5]) - m - matern_radial(p, 1.2 - s)) <= 2e-2);
            }
            const std::vector<double> x0{0.1}, y{0.1 + s};
            CHECK(std::stod(row[5]) == doctest::Approx(cov_folded_periodic(p, box, x0, y).value).epsilon(1e-12));
        }
        CHECK(std::stod(t.rows[0][4]) > 1.0);
        CHECK(std::stod(t.rows[0][2]) == 1.0);
    }

    TEST_CASE("error curve rows are dominated by the bound")
    {
        const auto c = parse("rho = 0.1\nnu = 1\nd = 1\nbc = D, N, P\ndelta_list = 0.01, 0.1, 0.3\n");
        const auto t = run_error_curve(c);
        CHECK(t.header.size() == 8);
        for (const auto& row : t.rows) {
            const double bound = std::stod(row[5]);
            for (int k = 1; k <= 3; ++k) CHECK(std::stod(row[k]) <= bound);
            CHECK(std::stod(row[4]) <= bound * (1.0 + 1e-12));
        }
    }

    TEST_CASE("error value is stable under refinement")
    {
        const auto p = derive_params(1.0, 0.1, 1.0, 1);
        const double delta = 0.1;
        const auto box = BoxDomain::cubic(1, delta, 1.0);
        const std::vector<double> periods{2.0 * box.length(0)};
        const long radius = image_radius(p, periods, 1e-14);
        ErrorOptions base;
        base.image_radius = radius;
        base.trunc = TruncationSpec::from_h(1e-3);
        ErrorOptions fine = base;
        fine.image_radius = 2 * radius;
        fine.trunc = TruncationSpec::from_kmax(2 * base.trunc.kmax_for(box.length(0)));
        const std::vector<char> bcs{'D', 'N', 'P', 'R'};
        const auto a = measure_errors(p, delta, 1.0, 15, bcs, base);
        const auto b = measure_errors(p, delta, 1.0, 15, bcs, fine);
        for (std::size_t i = 0; i < bcs.size(); ++i) {
            CHECK_MESSAGE(std::fabs(a.errors[i] - b.errors[i]) <= 0.01 * b.errors[i], "bc " << bcs[i]);
        }
    }

    TEST_CASE("bounds table")
    {
        const auto c = parse("rho = 0.1\nnu = 0.5\nd = 1\ndelta_list = 0.3\n");
        const auto t = run_bounds(c);
        CHECK(t.header.front() == "delta");
        CHECK(t.rows.size() == 1);
        const auto r = main_bound(c.params(), 0.3, 1.0);
        CHECK(std::stod(t.rows[0][4]) == r.main_bound);
    }

    TEST_CASE("sampler check")
    {
        auto c = parse("rho = 0.1\nnu = 1\nd = 1\nbc = N\ndelta_list = 0.1\nn_samples = 200\ntrunc_h = 1e-2\n");
        const auto t1 = run_sampler_check(c);
        const auto t2 = run_sampler_check(c);
        CHECK(csv(t1) == csv(t2));
        CHECK(t1.header.front() == "bc");
        c.n_samples = 0;
        CHECK_THROWS_AS(run_sampler_check(c), DomainError);
        c.n_samples = 1;
        CHECK_THROWS_AS(run_sampler_check(c), DomainError);
    }

    TEST_CASE("output is byte-stable")
    {
        const auto c = parse("rho = 0.2\nnu = 0.25\nd = 2\nbc = D, N, P, R\ndelta_list = 0, 0.2\nn_grid = 3\n");
        CHECK(csv(run_error_curve(c)) == csv(run_error_curve(c)));
        CHECK(csv(run_cov_slice(c)) == csv(run_cov_slice(c)));
    }
}
