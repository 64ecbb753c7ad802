// SPDX-License-Identifier: Apache-2.0
//
// twopanel: cross-panel channel inference for two-panel base stations
// Copyright (C) 2026 The twopanel authors
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

#include "twopanel/errors.hpp"
#include "twopanel/harness/config.hpp"
#include "twopanel/harness/dataset.hpp"
#include "twopanel/harness/report.hpp"
#include "twopanel/harness/runner.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

using namespace twopanel;
using namespace twopanel::harness;

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_usage = 1;
    constexpr int exit_data = 2;

    struct Options
    {
        std::string config;
        std::string out;
        std::optional<std::uint64_t> seed;
        std::optional<unsigned> workers;
        std::string mode;
        std::string input;
    };

    void add_common(CLI::App *cmd, Options &o, bool needs_config)
    {
        auto *c = cmd->add_option("--config", o.config, "scenario config (JSON)");
        if (needs_config)
            c->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", o.out, "output directory (overrides output.dir)");
        cmd->add_option("--seed", o.seed, "random seed (overrides seed)");
        cmd->add_option("--workers", o.workers, "worker threads (overrides workers)")->check(CLI::PositiveNumber);
        cmd->add_option("--mode", o.mode, "gain inference mode")
            ->check(CLI::IsMember({"literal-eq7", "amplitude-assisted"}));
    }

    ScenarioConfig load(const Options &o)
    {
        ScenarioConfig cfg = o.config.empty() ? ScenarioConfig{} : load_config(o.config);
        if (o.seed)
            cfg.seed = *o.seed;
        if (o.workers)
            cfg.workers = *o.workers;
        if (!o.mode.empty())
            cfg.gain_mode = *gain_mode_from_string(o.mode);
        if (!o.out.empty())
            cfg.out_dir = o.out;
        return cfg;
    }

    void make_dir(const std::filesystem::path &dir)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    }

    void print_summary(const ScenarioReport &r)
    {
        const auto &a = r.aggregates;
        std::printf("records %lld, failed %lld, F mean %.6f, elevation error mean %.4f deg, containment mean %.4f\n",
                    static_cast<long long>(a.n_records), static_cast<long long>(a.n_failed), a.correlation_mean,
                    a.elevation_error_mean_deg, a.containment_mean);
    }

    int cmd_synth(const Options &o)
    {
        const auto cfg = load(o);
        make_dir(cfg.out_dir);
        const auto ds = synth_dataset(cfg);
        write_mpc_csv(ds, cfg.out_dir / "mpc.csv");
        std::printf("wrote %zu rows for %zu UEs to %s\n", ds.rows.size(), ds.ue_ids().size(),
                    (cfg.out_dir / "mpc.csv").string().c_str());
        return exit_ok;
    }

    int cmd_infer(const Options &o)
    {
        const auto cfg = load(o);
        const auto report = run_scenario(cfg);
        emit_all(report, cfg.out_dir);
        print_summary(report);
        return exit_ok;
    }

    int cmd_sweep(const Options &o)
    {
        const auto cfg = load(o);
        make_dir(cfg.out_dir);
        for (const auto &curve : run_sweep(cfg))
        {
            emit_curve(curve, cfg.out_dir / curve_file_name(curve.d2));
            auto c = cfg;
            c.d2 = curve.d2;
            const auto dir = cfg.out_dir / ("d2_" + format_double(curve.d2));
            const auto report = run_scenario(c);
            emit_all(report, dir);
            std::printf("d2 = %s m: ", format_double(curve.d2).c_str());
            print_summary(report);
        }
        return exit_ok;
    }

    int cmd_ingest(const Options &o)
    {
        const auto ds = ingest_mpc_csv(o.input);
        std::size_t n1 = 0, n2 = 0;
        for (const auto &r : ds.rows)
            (r.panel_id == 1 ? n1 : n2)++;
        std::printf("%zu rows, %zu UEs, %zu panel-1 paths, %zu panel-2 paths\n", ds.rows.size(), ds.ue_ids().size(),
                    n1, n2);
        if (!o.out.empty())
        {
            make_dir(o.out);
            write_mpc_csv(ds, std::filesystem::path(o.out) / "mpc.csv");
        }
        return exit_ok;
    }

    int cmd_report(const Options &o)
    {
        ScenarioReport report;
        try
        {
            report.records = parse_report_csv(read_text_file(o.input));
        }
        catch (const DataError &)
        {
            throw;
        }
        catch (const std::runtime_error &e) // unreadable file
        {
            throw DataError(0, e.what());
        }
        report.aggregates = summarize(report.records);
        const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(o.input).parent_path() : std::filesystem::path(o.out);
        make_dir(dir.empty() ? "." : dir);
        emit_report(report, ReportFormat::summary, dir / "summary.json");
        emit_report(report, ReportFormat::map, dir / "accuracy_map.csv");
        print_summary(report);
        return exit_ok;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"twopanel: cross-panel channel inference for two-panel base stations"};
    app.require_subcommand(1);
    Options o;

    auto *synth = app.add_subcommand("synth", "generate a synthetic MPC dataset from the configured scene");
    add_common(synth, o, true);
    auto *infer = app.add_subcommand("infer", "run one scenario and write records, summary and accuracy map");
    add_common(infer, o, true);
    auto *sweep = app.add_subcommand("sweep", "free-space dx sweep and UE grid for every configured d2");
    add_common(sweep, o, true);
    auto *ingest = app.add_subcommand("ingest", "validate an external MPC CSV");
    add_common(ingest, o, false);
    ingest->add_option("csv", o.input, "MPC CSV file")->required();
    auto *report = app.add_subcommand("report", "re-aggregate a records CSV");
    add_common(report, o, false);
    report->add_option("records", o.input, "records.csv written by infer")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (*synth)
            return cmd_synth(o);
        if (*infer)
            return cmd_infer(o);
        if (*sweep)
            return cmd_sweep(o);
        if (*ingest)
            return cmd_ingest(o);
        return cmd_report(o);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const DataError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    }
}
