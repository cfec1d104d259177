// SPDX-License-Identifier: Apache-2.0
//
// ris-fas: outage analysis for RIS-aided fluid antenna receivers
// Copyright (C) 2026 The ris-fas authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// ris-fas command line: sweeps, figure presets and the correlation check.

#include "risfas/risfas.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace
{

struct common_flags
{
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> mc_trials;
    bool plot_script = false;
    std::string out;
    int workers = 1;
};

void add_common(CLI::App *cmd, common_flags &f)
{
    cmd->add_option("--seed", f.seed, "Base seed for RQMC and Monte Carlo (overrides config)");
    cmd->add_option("--mc-trials", f.mc_trials, "Enable Monte Carlo with this many trials per point (>= 1000)");
    cmd->add_flag("--plot-script", f.plot_script, "Also write a gnuplot script next to the CSV");
    cmd->add_option("--out", f.out, "Output CSV path (overrides config / preset default)");
    cmd->add_option("--workers", f.workers, "Worker threads for sweep points")->check(CLI::PositiveNumber);
}

void apply_common(risfas::sweep_spec &spec, const common_flags &f)
{
    if (f.seed)
    {
        spec.rqmc.seed = *f.seed;
        if (spec.mc)
            spec.mc->seed = *f.seed;
    }
    if (f.mc_trials)
    {
        if (!spec.mc)
            spec.mc = risfas::mc_run{};
        spec.mc->trials = *f.mc_trials;
        spec.mc->seed = spec.rqmc.seed;
    }
    if (!f.out.empty())
        spec.output_path = f.out;
    risfas::validate_spec(spec);
}

int write_outputs(const std::vector<risfas::sweep_record> &records, risfas::sweep_axis axis,
                  const std::filesystem::path &csv, bool plot)
{
    risfas::emit_csv(records, csv);
    std::cerr << "wrote " << csv.string() << '\n';
    if (plot)
    {
        auto script = csv;
        script.replace_extension(".gp");
        risfas::write_plot_script(records, axis, csv, script);
        std::cerr << "wrote " << script.string() << '\n';
    }
    std::size_t failed = 0;
    for (const auto &r : records)
        failed += r.error.empty() ? 0 : 1;
    if (failed)
    {
        std::cerr << failed << " of " << records.size() << " points failed; see the error column\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"ris-fas: outage probability and delay outage rate of RIS-aided fluid antenna receivers"};
    app.footer(std::string(risfas::config_keys_help));
    app.require_subcommand(1);

    common_flags run_flags;
    std::string config_path;
    std::string dump_gains;
    auto *run = app.add_subcommand("run", "Evaluate the sweep described by a config file");
    run->add_option("config", config_path, "Config file")->required();
    run->add_option("--dump-gains", dump_gains,
                    "Write raw per-trial best-port gains for each point to <path>_<index>.bin "
                    "(little-endian float64) or .csv when the path ends in .csv; needs Monte Carlo");
    add_common(run, run_flags);

    common_flags preset_flags;
    std::string preset_name;
    auto *pre = app.add_subcommand("preset", "Run a figure-family preset (fig2a, fig2b, fig3a-fig3d, fig4a-fig4d)");
    pre->add_option("name", preset_name, "Preset name")->required();
    add_common(pre, preset_flags);

    std::string corr_config;
    std::int64_t corr_samples = 1'000'000;
    std::uint64_t corr_seed = 1;
    std::string corr_out;
    auto *vc = app.add_subcommand("validate-corr",
                                  "Monte Carlo check of the port correlation against half-space isotropic scattering");
    vc->add_option("config", corr_config, "Config file (grid keys n1, n2, w1, w2 are used)")->required();
    vc->add_option("--mc-trials", corr_samples, "Number of arrival directions sampled (>= 1e4)");
    vc->add_option("--seed", corr_seed, "Seed");
    vc->add_option("--out", corr_out, "Write the estimated correlation matrix as CSV");

    app.add_subcommand("presets", "List preset names");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try
    {
        if (*run)
        {
            auto spec = risfas::parse_config(config_path);
            apply_common(spec, run_flags);
            risfas::sweep_options opts;
            opts.workers = run_flags.workers;
            const auto records = risfas::run_sweep(spec, opts);
            if (!dump_gains.empty())
            {
                if (!spec.mc)
                    throw risfas::config_error("--dump-gains needs Monte Carlo (trials key or --mc-trials)");
                const std::filesystem::path base(dump_gains);
                const bool as_csv = base.extension() == ".csv";
                for (std::size_t i = 0; i < spec.values.size(); ++i)
                {
                    auto cfg = risfas::apply_axis(spec.base, spec.axis, spec.values[i]);
                    const auto corr = risfas::build_correlation_matrix(cfg.grid, spec.delta, spec.eigen_floor_rel);
                    auto mc = *spec.mc;
                    mc.seed = risfas::mix_seed(spec.mc->seed, i);
                    const auto gains = risfas::simulate_gains(cfg, corr, mc);
                    auto path = base.parent_path() /
                                (base.stem().string() + "_" + std::to_string(i) + (as_csv ? ".csv" : ".bin"));
                    if (as_csv)
                        risfas::write_gains_csv(gains, path);
                    else
                        risfas::write_gains_binary(gains, path);
                    std::cerr << "wrote " << path.string() << '\n';
                }
            }
            return write_outputs(records, spec.axis, spec.output_path, run_flags.plot_script);
        }
        if (*pre)
        {
            auto series = risfas::preset(preset_name, preset_flags.seed.value_or(1));
            for (auto &s : series)
                apply_common(s, preset_flags);
            risfas::sweep_options opts;
            opts.workers = preset_flags.workers;
            const auto records = risfas::run_preset(series, opts);
            return write_outputs(records, series.front().axis, series.front().output_path, preset_flags.plot_script);
        }
        if (*vc)
        {
            const auto spec = risfas::parse_config(corr_config, false);
            const auto &grid = spec.base.grid;
            const auto est = risfas::validate_correlation_mc(grid, corr_samples, corr_seed);
            const auto exact = risfas::correlation_matrix(grid);
            const double max_err = (est.real - exact).cwiseAbs().maxCoeff();
            const double max_imag = est.imag.cwiseAbs().maxCoeff();
            double max_z = 0.0;
            for (Eigen::Index i = 0; i < exact.rows(); ++i)
                for (Eigen::Index j = 0; j < exact.cols(); ++j)
                    if (est.std_error(i, j) > 0.0)
                        max_z = std::max(max_z, std::abs(est.real(i, j) - exact(i, j)) / est.std_error(i, j));
            std::printf("grid %dx%d, %gx%g wavelengths, %lld samples\n", grid.n1, grid.n2, grid.w1, grid.w2,
                        static_cast<long long>(corr_samples));
            std::printf("max |estimate - sinc| = %.3e\nmax |imaginary part| = %.3e\nmax z-score = %.2f\n", max_err,
                        max_imag, max_z);
            if (!corr_out.empty())
            {
                risfas::write_matrix_csv(est.real, corr_out);
                std::cerr << "wrote " << corr_out << '\n';
            }
            return 0;
        }
        for (const auto &name : risfas::preset_names())
            std::cout << name << '\n';
        return 0;
    }
    catch (const risfas::config_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
