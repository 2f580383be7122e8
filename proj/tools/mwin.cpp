// mwin: experiment runner for windowed Matérn fields.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "acceptance/criteria.hpp"
#include "mwin/errors.hpp"
#include "mwin/experiment.hpp"

namespace {

int emit(const mwin::Table& table, const std::string& out_path)
{
    if (out_path.empty()) {
        table.write_csv(std::cout);
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return 1;
    }
    table.write_csv(out);
    if (!out) {
        std::cerr << "error: failed writing '" << out_path << "'\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Matérn covariances on truncated boxes: slices, error curves, bounds and sampling"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "CSV output path (default: stdout)");
        sub->add_option("--seed", seed, "random seed, overrides the config");
    };

    auto* slice = app.add_subcommand("cov-slice", "covariance along the diagonal of D for every delta");
    auto* curve = app.add_subcommand("error-curve", "max-norm error versus delta with bound columns");
    auto* bounds = app.add_subcommand("bounds", "error bounds versus delta");
    auto* sample = app.add_subcommand("sample", "Monte-Carlo check of the spectral sampler");
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    for (auto* sub : {slice, curve, bounds, sample, verify}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            const int failures = mwin::acceptance::run_suite(std::cout);
            std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
                      << '\n';
            return failures == 0 ? 0 : 1;
        }

        mwin::ExperimentConfig cfg = config_path.empty() ? mwin::ExperimentConfig{} : mwin::load_config(config_path);
        if (seed) cfg.seed = *seed;

        if (slice->parsed()) return emit(mwin::run_cov_slice(cfg), out_path);
        if (curve->parsed()) return emit(mwin::run_error_curve(cfg), out_path);
        if (bounds->parsed()) return emit(mwin::run_bounds(cfg), out_path);
        if (sample->parsed()) {
            if (cfg.n_samples < 2) {
                std::cerr << "usage error: n_samples must be at least 2\n";
                return 2;
            }
            return emit(mwin::run_sampler_check(cfg), out_path);
        }
    } catch (const mwin::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
