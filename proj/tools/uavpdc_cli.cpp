// SPDX-License-Identifier: Apache-2.0
//
// uavpdc - pilot decontamination for massive MIMO networks with UAVs
// Copyright (C) 2026 The uavpdc Authors
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

#include "uavpdc/cdf.hpp"
#include "uavpdc/report.hpp"
#include "uavpdc/sample_io.hpp"
#include "uavpdc/scenario.hpp"
#include "uavpdc/simulation.hpp"
#include "uavpdc/validation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;

namespace
{
    struct Overrides
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<std::uint64_t> trials;
        std::vector<int> ku;
        std::optional<arma::uword> m;
        std::vector<std::string> schemes;
        std::optional<unsigned> workers;
        std::string out_dir = "out";
    };

    std::ofstream open_out(const fs::path &p)
    {
        std::ofstream f(p);
        if (!f)
            throw std::runtime_error("Cannot write '" + p.string() + "'.");
        return f;
    }

    uavpdc::ScenarioConfig base_config(const Overrides &o)
    {
        uavpdc::ScenarioConfig c = o.config.empty() ? uavpdc::reference_scenario() : uavpdc::load_config(o.config);
        if (o.seed)
            c.seed = *o.seed;
        if (o.trials)
            c.trials = *o.trials;
        if (o.m)
            c.array.num_antennas = *o.m;
        if (o.workers)
            c.workers = *o.workers;
        if (!o.schemes.empty())
        {
            c.schemes.clear();
            for (const auto &s : o.schemes)
                c.schemes.push_back(uavpdc::parse_scheme(s));
        }
        return c;
    }

    void write_report(const fs::path &dir, int num_uavs, std::ostream &also)
    {
        std::ifstream sf(dir / "samples.csv"), df(dir / "diagnostics.csv");
        if (!sf)
            throw std::runtime_error("No samples.csv in '" + dir.string() + "'.");
        const auto samples = uavpdc::read_samples_csv(sf);
        std::vector<uavpdc::BsDiagnostics> diags;
        if (df)
            diags = uavpdc::read_diagnostics_csv(df);
        const uavpdc::Report rep = uavpdc::compare_report(samples, diags, num_uavs);
        std::ostringstream text;
        uavpdc::render_report(text, rep);
        auto f = open_out(dir / "report.txt");
        f << text.str();
        also << text.str() << '\n';
    }

    int cmd_run(const Overrides &o)
    {
        const uavpdc::ScenarioConfig base = base_config(o);
        std::vector<int> points = o.ku.empty() ? std::vector<int>{base.num_uavs} : o.ku;
        const fs::path root(o.out_dir);

        for (int ku : points)
        {
            uavpdc::ScenarioConfig cfg = base;
            cfg.num_uavs = ku;
            const fs::path dir = points.size() > 1 ? root / ("ku" + std::to_string(ku)) : root;
            fs::create_directories(dir);
            open_out(dir / "config.json") << uavpdc::config_to_json_text(cfg);

            const uavpdc::ScenarioContext ctx = uavpdc::make_context(cfg);
            std::cerr << "K_u = " << ku << ": " << cfg.trials << " trials on " << cfg.workers << " worker(s)\n";
            const std::uint64_t step = std::max<std::uint64_t>(1, cfg.trials / 10);
            const uavpdc::RunResult result = uavpdc::run_trials(ctx, [&](std::uint64_t done)
                                                                { if (done % step == 0 || done == cfg.trials) std::cerr << "  " << done << "/" << cfg.trials << "\n"; });

            {
                auto f = open_out(dir / "samples.csv");
                uavpdc::write_samples_csv(f, result.samples);
            }
            {
                auto f = open_out(dir / "diagnostics.csv");
                uavpdc::write_diagnostics_csv(f, result.diagnostics);
            }
            {
                auto f = open_out(dir / "layout_trial0.csv");
                uavpdc::write_layout_csv(f, uavpdc::realize_trial(ctx, 0).layout);
            }
            std::vector<uavpdc::SampleGroup> groups;
            for (const auto &g : uavpdc::all_groups())
                if (cfg.has_scheme(g.scheme))
                    groups.push_back(g);
            const uavpdc::CdfSet cdfs = uavpdc::empirical_cdf(result.samples, groups, ku);
            for (const auto &w : cdfs.warnings)
                std::cerr << "warning: " << w << '\n';
            for (const auto &s : cdfs.series)
            {
                auto f = open_out(dir / ("cdf_" + s.group.name() + ".csv"));
                uavpdc::write_cdf_csv(f, s);
            }
            write_report(dir, ku, std::cout);
        }
        return 0;
    }

    int cmd_report(const Overrides &o)
    {
        const fs::path root(o.out_dir);
        std::vector<fs::path> dirs;
        if (fs::exists(root / "samples.csv"))
            dirs.push_back(root);
        else
            for (const auto &e : fs::directory_iterator(root))
                if (e.is_directory() && fs::exists(e.path() / "samples.csv"))
                    dirs.push_back(e.path());
        if (dirs.empty())
            throw std::runtime_error("No samples.csv under '" + root.string() + "'.");
        std::sort(dirs.begin(), dirs.end());
        for (const auto &d : dirs)
        {
            int ku = 0;
            if (fs::exists(d / "config.json"))
                ku = uavpdc::load_config(d / "config.json").num_uavs;
            write_report(d, ku, std::cout);
        }
        return 0;
    }

    int cmd_validate(const std::vector<int> &only, const Overrides &o)
    {
        uavpdc::ValidationOptions opt;
        if (o.seed)
            opt.seed = *o.seed;
        if (o.workers)
            opt.workers = *o.workers;
        std::vector<int> ids = only;
        if (ids.empty())
            for (int i = 1; i <= uavpdc::num_criteria; ++i)
                ids.push_back(i);
        bool all = true;
        for (int id : ids)
        {
            const uavpdc::CriterionResult r = uavpdc::run_criterion(id, opt);
            std::cout << uavpdc::format_result(r) << std::flush;
            all = all && r.passed();
        }
        return all ? 0 : 1;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Pilot decontamination for massive MIMO networks with UAVs: Monte Carlo driver"};
    app.require_subcommand(1);
    Overrides o;

    auto add_common = [&](CLI::App *sub)
    {
        sub->add_option("--config", o.config, "JSON scenario file")->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "Base seed");
        sub->add_option("--trials", o.trials, "Number of Monte Carlo trials")->check(CLI::PositiveNumber);
        sub->add_option("--ku", o.ku, "Number of UAVs; several values run a sweep")->delimiter(',');
        sub->add_option("--m", o.m, "Number of BS antennas")->check(CLI::Range(2u, 1u << 20));
        sub->add_option("--schemes", o.schemes, "Subset of before,after,perfect,truecsi")->delimiter(',');
        sub->add_option("--out-dir", o.out_dir, "Output directory");
        sub->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto *run = app.add_subcommand("run", "Simulate and write samples, CDFs and a report");
    add_common(run);
    auto *report = app.add_subcommand("report", "Rebuild report.txt from persisted samples");
    add_common(report);
    auto *validate = app.add_subcommand("validate", "Run the acceptance suite");
    add_common(validate);
    std::vector<int> only;
    validate->add_option("--only", only, "Criterion ids to run (default all)")->delimiter(',')->check(CLI::Range(1, uavpdc::num_criteria));

    CLI11_PARSE(app, argc, argv);
    try
    {
        if (*run)
            return cmd_run(o);
        if (*report)
            return cmd_report(o);
        return cmd_validate(only, o);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
