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

#include "twopanel/errors.hpp"
#include "twopanel/harness/config.hpp"

#include <string>

using namespace twopanel;
using namespace twopanel::harness;

namespace
{
    const std::filesystem::path data_dir = TWOPANEL_TEST_DATA;

    ConfigError config_error(const std::string &text)
    {
        try
        {
            parse_config(text);
        }
        catch (const ConfigError &e)
        {
            return e;
        }
        FAIL("expected ConfigError for " << text);
        throw;
    }
}

TEST_CASE("minimal config fills defaults", "[config]")
{
    const auto c = load_config(data_dir / "minimal_config.json");
    CHECK(c.f1_hz == 28e9);
    CHECK(c.f2_hz == 39e9);
    CHECK(c.n_y == 16);
    CHECK(c.n_z == 16);
    CHECK(c.d1 == 15.0);
    CHECK(c.d2 == 16.0);
    CHECK(c.ue_grid.spacing == 2.5);
    CHECK(c.delta == 0.15);
    CHECK(c.match_epsilon == 0.1);
    CHECK(c.extraction.max_paths == 25);
    CHECK(c.scenario == Scenario::far_free);
    CHECK(c.gain_mode == GainMode::literal);
    CHECK(c.truth == TruthModel::spherical);
    CHECK(c.workers == 1);
    CHECK_FALSE(c.mpc_csv.has_value());
    CHECK(c.sweep.d2_values == std::vector<double>{16.0, 18.0, 20.0});
}

TEST_CASE("empty object is a valid config", "[config]")
{
    const auto c = parse_config("{}");
    CHECK(c.f1_hz == 28e9);
    CHECK(c.layout().delta_d() == Catch::Approx(1.0));
}

TEST_CASE("range violations name the field", "[config]")
{
    auto e = config_error(R"({"layout": {"d2": -1}})");
    CHECK(e.kind() == ConfigErrorKind::range);
    CHECK(e.field() == "layout.d2");
    CHECK(std::string(e.what()).find("d2") != std::string::npos);

    e = config_error(R"({"layout": {"f1_hz": 0}})");
    CHECK(e.kind() == ConfigErrorKind::range);
    CHECK(e.field() == "layout.f1_hz");

    e = config_error(R"({"ue": {"grid": {"spacing": 0}}})");
    CHECK(e.kind() == ConfigErrorKind::range);
    CHECK(e.field() == "ue.grid.spacing");

    e = config_error(R"({"ue": {"grid": {"x_min": 10, "x_max": 5}}})");
    CHECK(e.field() == "ue.grid.x_max");

    e = config_error(R"({"workers": 0})");
    CHECK(e.field() == "workers");

    e = config_error(R"({"seed": -3})");
    CHECK(e.kind() == ConfigErrorKind::range);
    CHECK(e.field() == "seed");

    e = config_error(R"({"match_epsilon_m": 0})");
    CHECK(e.field() == "match_epsilon_m");

    e = config_error(R"({"extraction": {"max_paths": 0}})");
    CHECK(e.kind() == ConfigErrorKind::range);

    e = config_error(R"({"scenario": "multipath-near", "delta_m": 1.0})");
    CHECK(e.kind() == ConfigErrorKind::range);
    CHECK(e.field() == "delta_m");

    e = config_error(R"({"scenario": "multipath-near", "layout": {"d2": 15}})");
    CHECK(e.field() == "layout.d2");
}

TEST_CASE("schema violations", "[config]")
{
    auto e = config_error(R"({"scenario": "indoor"})");
    CHECK(e.kind() == ConfigErrorKind::schema);
    CHECK(e.field() == "scenario");

    e = config_error(R"({"layout": {"d3": 1}})");
    CHECK(e.kind() == ConfigErrorKind::schema);
    CHECK(e.field() == "layout.d3");

    e = config_error(R"({"layout": {"d1": "fifteen"}})");
    CHECK(e.kind() == ConfigErrorKind::schema);
    CHECK(e.field() == "layout.d1");

    e = config_error(R"({"gain_mode": "cubic"})");
    CHECK(e.kind() == ConfigErrorKind::schema);

    e = config_error(R"({"truth": "ray"})");
    CHECK(e.field() == "truth");

    e = config_error(R"({"ue": {"positions": [[1, 2]]}})");
    CHECK(e.kind() == ConfigErrorKind::schema);
    CHECK(e.field() == "ue.positions[0]");

    e = config_error(R"({"scatterers": {"positions": [{"reflectivity1": [1, 0]}]}})");
    CHECK(e.field() == "scatterers.positions[0].position");

    e = config_error(R"([1, 2, 3])");
    CHECK(e.kind() == ConfigErrorKind::schema);
}

TEST_CASE("parse errors are distinct", "[config]")
{
    const auto e = config_error(R"({"layout": )");
    CHECK(e.kind() == ConfigErrorKind::parse);
    CHECK_THROWS_AS(load_config(data_dir / "does_not_exist.json"), ConfigError);
}

TEST_CASE("full scene document", "[config]")
{
    const auto c = load_config(data_dir / "sample_scene.json");
    CHECK(c.scenario == Scenario::multipath_far);
    REQUIRE(c.ue_positions.size() == 3);
    CHECK(c.ue_positions[1] == Vec3{35, 0, 0});
    REQUIRE(c.scatterers.size() == 4);
    CHECK(c.scatterers[1].reflectivity1 == cplx(-0.3, 0.7));
    CHECK(c.include_los);
    CHECK(c.match_epsilon == 0.15);
    CHECK(c.seed == 7);
    CHECK(c.out_dir == "out");
}

TEST_CASE("options round into the right units", "[config]")
{
    const auto c = parse_config(R"({
        "extraction": {"enabled": false, "max_paths": 5, "coarse_grid_deg": 0.5,
                       "refine_tolerance_rad": 1e-7, "residual_stop": 1e-4},
        "gain_mode": "amplitude-assisted", "truth": "planar", "workers": 8,
        "sweep": {"d2_values": [17], "dx_start": 1, "dx_stop": 3, "dx_step": 0.25},
        "scatterers": {"generator": {"count": 3, "x_min": 100, "x_max": 200}, "include_los": false}
    })");
    CHECK_FALSE(c.use_extraction);
    CHECK(c.extraction.max_paths == 5);
    CHECK(c.extraction.coarse_grid_step == Catch::Approx(0.5 * pi / 180.0).epsilon(1e-15));
    CHECK(c.extraction.refine_tolerance == 1e-7);
    CHECK(c.gain_mode == GainMode::amplitude_assisted);
    CHECK(c.truth == TruthModel::planar);
    CHECK(c.workers == 8);
    CHECK(c.sweep.d2_values == std::vector<double>{17.0});
    CHECK(c.scatterer_generator.count == 3);
    CHECK(c.scatterer_generator.x_min == 100.0);
    CHECK_FALSE(c.include_los);
}

TEST_CASE("relative mpc_csv resolves against the config directory", "[config]")
{
    const auto c = parse_config(R"({"mpc_csv": "sample_3ue.csv"})", data_dir);
    REQUIRE(c.mpc_csv.has_value());
    CHECK(*c.mpc_csv == data_dir / "sample_3ue.csv");

    const auto abs = parse_config(R"({"mpc_csv": "/tmp/x.csv"})", data_dir);
    CHECK(*abs.mpc_csv == "/tmp/x.csv");
}

TEST_CASE("UE placement", "[config]")
{
    ScenarioConfig c;
    const auto grid = c.resolve_ues();
    REQUIRE(grid.size() == 20 * 21);
    CHECK(grid.front() == Vec3{2.5, -25.0, 0.0});
    CHECK(grid[1] == Vec3{2.5, -22.5, 0.0});
    CHECK(grid[21] == Vec3{5.0, -25.0, 0.0});
    CHECK(grid.back().x == Catch::Approx(50.0));
    CHECK(grid.back().y == Catch::Approx(25.0));

    c.ue_positions = {{1, 2, 3}};
    CHECK(c.resolve_ues() == std::vector<Vec3>{{1, 2, 3}});
}
