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

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

#include "twopanel/errors.hpp"
#include "twopanel/estimation.hpp"
#include "twopanel/harness/config.hpp"
#include "twopanel/harness/report.hpp"
#include "twopanel/harness/runner.hpp"

#include "json.hpp"

#include <bit>
#include <cmath>

using namespace twopanel;
using namespace twopanel::harness;

namespace
{
    const std::filesystem::path data_dir = TWOPANEL_TEST_DATA;

    std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

    std::filesystem::path scratch(const std::string &name)
    {
        auto p = std::filesystem::temp_directory_path() / ("twopanel_test_runner_" + name);
        std::filesystem::remove_all(p);
        return p;
    }

    // The free-space pipeline spelled out with library calls only.
    double direct_far_free_f(const ScenarioConfig &cfg, const Vec3 &ue)
    {
        const auto layout = cfg.layout();
        const auto &p1 = layout.panel1();
        const auto &p2 = layout.panel2();
        auto ex_cfg = cfg.extraction;
        ex_cfg.max_paths = 1;
        const auto ex = extract_paths(synth_spherical_channel(p1, ue), p1, ex_cfg);
        const auto inf = infer_far_free(ex.paths.front(), p1.wavelength(), p2.wavelength(), layout.delta_d(),
                                        cfg.gain_mode);
        const auto path = inf.free_space().path;
        return correlation(reconstruct(p2, std::span(&path, 1)), synth_spherical_channel(p2, ue));
    }

    ScenarioConfig small_grid(Scenario s)
    {
        ScenarioConfig cfg;
        cfg.scenario = s;
        cfg.ue_grid = {10.0, 40.0, -10.0, 10.0, 5.0, 0.0};
        return cfg;
    }
}

TEST_CASE("far-free records match the direct library pipeline bit for bit", "[runner]")
{
    ScenarioConfig cfg;
    cfg.scenario = Scenario::far_free;
    const auto layout = cfg.layout();
    const double r_rayl = rayleigh_distance(aperture(layout), layout.panel1().wavelength(),
                                            layout.panel2().wavelength());
    for (int k = 1; k <= 10; ++k)
        cfg.ue_positions.push_back({k * r_rayl, 0.25 * k, 0.0});

    const auto report = run_scenario(cfg);
    REQUIRE(report.records.size() == 10);
    for (std::size_t i = 0; i < 10; ++i)
    {
        const auto &r = report.records[i];
        CHECK(r.status == "ok");
        CHECK(bits(r.correlation) == bits(direct_far_free_f(cfg, cfg.ue_positions[i])));
        CHECK(r.correlation > 0.99);
        if (i > 0) // the planar approximation only improves with range
            CHECK(r.correlation > report.records[i - 1].correlation);
    }
}

TEST_CASE("near-field rule beats the far-field rule below the Rayleigh distance", "[runner]")
{
    ScenarioConfig cfg;
    cfg.d2 = 16.0; // 1 m spacing
    const auto layout = cfg.layout();
    const double r_rayl = rayleigh_distance(aperture(layout), layout.panel1().wavelength(),
                                            layout.panel2().wavelength());
    cfg.sweep = {{16.0}, 0.5, r_rayl, 2.5, 0.0, 0.0};
    const auto curves = run_sweep(cfg);
    REQUIRE(curves.size() == 1);
    REQUIRE(curves[0].points.size() == sweep_dx_values(cfg.sweep).size());
    for (const auto &p : curves[0].points)
    {
        INFO("dx = " << p.dx);
        CHECK(p.f_near >= p.f_far);
        CHECK(p.f_near > 0.999);
    }
}

TEST_CASE("free space ignores the seed", "[runner]")
{
    auto a = small_grid(Scenario::near_free);
    auto b = a;
    b.seed = 987654321;
    CHECK(format_report_csv(run_scenario(a)) == format_report_csv(run_scenario(b)));
}

TEST_CASE("reports are byte-identical across runs and worker counts", "[runner][property]")
{
    for (auto s : {Scenario::far_free, Scenario::near_free, Scenario::multipath_far, Scenario::multipath_near})
    {
        auto cfg = small_grid(s);
        const auto one = format_report_csv(run_scenario(cfg));
        CHECK(format_report_csv(run_scenario(cfg)) == one);
        cfg.workers = 4;
        CHECK(format_report_csv(run_scenario(cfg)) == one);
        cfg.workers = 1;
        cfg.seed = 2;
        if (s == Scenario::multipath_far || s == Scenario::multipath_near)
            CHECK(format_report_csv(run_scenario(cfg)) != one);
    }
}

TEST_CASE("per-UE failures stay in their row", "[runner]")
{
    ScenarioConfig cfg;
    cfg.scenario = Scenario::far_free;
    cfg.ue_positions = {{20, 0, 0}, {20, 0, 40}, {30, 5, 0}}; // middle UE is above both panels
    const auto report = run_scenario(cfg);
    REQUIRE(report.records.size() == 3);
    CHECK(report.records[0].status == "ok");
    CHECK(report.records[1].status != "ok");
    CHECK(std::isnan(report.records[1].correlation));
    CHECK(report.records[2].status == "ok");
    CHECK(report.aggregates.n_failed == 1);
    CHECK(report.aggregates.n_records == 3);
}

TEST_CASE("multipath scenarios on the bundled dataset", "[runner]")
{
    auto cfg = load_config(data_dir / "sample_scene.json");
    cfg.mpc_csv = data_dir / "sample_3ue.csv";
    const auto far = run_scenario(cfg);
    REQUIRE(far.records.size() == 3);
    for (const auto &r : far.records)
    {
        CHECK(r.status == "ok");
        CHECK(r.n_paths == 5);
        CHECK(r.elevation_error >= 0.0);
        CHECK(r.max_elevation_error >= r.elevation_error);
        CHECK(r.correlation > 0.0);
        CHECK(r.correlation <= 1.0);
        CHECK(r.position.z == 0.0);
    }
    CHECK(far.records[1].position == Vec3{35, 0, 0});

    cfg.scenario = Scenario::multipath_near;
    const auto near = run_scenario(cfg);
    for (const auto &r : near.records)
    {
        CHECK(r.containment == 1.0);
        CHECK(std::isnan(r.correlation));
    }

    cfg.mpc_csv = data_dir / "missing.csv";
    CHECK_THROWS_AS(run_scenario(cfg), ConfigError);
}

TEST_CASE("multipath-far elevation errors against an oracle", "[runner]")
{
    // path elevations straight from geometry: panel-1 angle copied to panel 2
    auto cfg = load_config(data_dir / "sample_scene.json");
    cfg.include_los = false;
    const auto report = run_scenario(cfg);
    const auto layout = cfg.layout();
    for (std::size_t u = 0; u < 3; ++u)
    {
        double sum = 0.0;
        for (const auto &s : cfg.scatterers)
        {
            const double t1 = los_angles(layout.panel1(), s.position).theta;
            // panel-2 point is shifted by at most delta; bound the error instead of recomputing the draw
            const double t2_lo = los_angles(layout.panel2(), s.position - Vec3{0, 0, cfg.delta}).theta;
            const double t2_hi = los_angles(layout.panel2(), s.position + Vec3{0, 0, cfg.delta}).theta;
            sum += std::max(std::abs(t1 - t2_lo), std::abs(t1 - t2_hi));
        }
        CHECK(report.records[u].elevation_error <= sum / 4.0 + 1e-15);
        CHECK(report.records[u].elevation_error > 0.0);
    }
}

TEST_CASE("report csv round trip", "[report][property]")
{
    ScenarioReport rep;
    UeRecord a;
    a.ue_id = -4;
    a.position = {1.0 / 3.0, -2.5, 0.0};
    a.scenario = Scenario::multipath_near;
    a.containment = 0.875;
    a.n_paths = 8;
    UeRecord b;
    b.ue_id = 9;
    b.position = {twopanel::nan, twopanel::nan, twopanel::nan};
    b.scenario = Scenario::far_free;
    b.correlation = 0.99999999999999989;
    b.elevation_error = b.max_elevation_error = 4.9406564584124654e-324;
    b.n_paths = 1;
    UeRecord c;
    c.status = "elevation out of range, \"theta\" = 0.3";
    rep.records = {a, b, c};

    const auto text = format_report_csv(rep);
    const auto back = parse_report_csv(text);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(same_record(back[i], rep.records[i]));

    auto real = run_scenario(small_grid(Scenario::near_free));
    const auto parsed = parse_report_csv(format_report_csv(real));
    REQUIRE(parsed.size() == real.records.size());
    for (std::size_t i = 0; i < parsed.size(); ++i)
        CHECK(same_record(parsed[i], real.records[i]));
}

TEST_CASE("empty report", "[report]")
{
    const ScenarioReport empty;
    const auto text = format_report_csv(empty);
    CHECK(text == "ue_id,scenario,x,y,z,correlation,elevation_error_rad,max_elevation_error_rad,containment,n_paths,"
                  "status\n");
    CHECK(parse_report_csv(text).empty());
    CHECK(format_accuracy_map(empty) == "x,y,value\n");
    const auto j = nlohmann::json::parse(format_summary_json(empty));
    CHECK(j["n_records"] == 0);
    CHECK(j["correlation"]["mean"].is_null());
}

TEST_CASE("plot data files", "[report]")
{
    ScenarioConfig cfg;
    cfg.sweep = {{16.0, 20.0}, 1.0, 10.0, 0.5, 0.0, 0.0};
    const auto curves = run_sweep(cfg);
    REQUIRE(curves.size() == 2);
    for (const auto &c : curves)
    {
        const auto text = format_curve_csv(c);
        CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 19);
        CHECK(text.rfind("dx,f_near,f_far\n", 0) == 0);
    }
    CHECK(curve_file_name(16.0) == "curve_d2_16.csv");

    const auto rep = run_scenario(small_grid(Scenario::multipath_far));
    const auto map = format_accuracy_map(rep);
    CHECK(static_cast<std::size_t>(std::count(map.begin(), map.end(), '\n')) == 1 + rep.records.size());
    CHECK(map_value(rep.records[0]) == Catch::Approx(rep.records[0].elevation_error * 180.0 / pi));
}

TEST_CASE("emitting to disk", "[report]")
{
    const auto dir = scratch("emit");
    const auto rep = run_scenario(small_grid(Scenario::multipath_near));
    emit_all(rep, dir);
    CHECK(read_text_file(dir / "records.csv") == format_report_csv(rep));
    const auto j = nlohmann::json::parse(read_text_file(dir / "summary.json"));
    CHECK(j["scenario"] == "multipath-near");
    CHECK(j["n_records"] == rep.records.size());
    CHECK(std::filesystem::exists(dir / "accuracy_map.csv"));

    CHECK_THROWS(emit_report(rep, ReportFormat::csv, dir / "no" / "such" / "dir" / "r.csv"));
    CHECK_THROWS(emit_report(rep, ReportFormat::csv, dir)); // a directory
    std::filesystem::remove_all(dir);
}

TEST_CASE("parallel_for visits every index once and forwards exceptions", "[runner]")
{
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 7, [&](std::size_t i) { hits[i]++; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 5) throw std::runtime_error("x"); }),
                    std::runtime_error);
    parallel_for(0, 4, [](std::size_t) { FAIL("called"); });
}
