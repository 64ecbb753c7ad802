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

#ifndef TWOPANEL_HARNESS_CONFIG_HPP
#define TWOPANEL_HARNESS_CONFIG_HPP

#include "twopanel/channel.hpp"
#include "twopanel/estimation.hpp"
#include "twopanel/inference.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace twopanel::harness
{
    // Ground truth used to score free-space inference.
    enum class TruthModel
    {
        spherical, // exact per-element point-source field
        planar     // per-panel plane wave at the exact LoS angles
    };

    struct UeGrid
    {
        double x_min = 2.5, x_max = 50.0;
        double y_min = -25.0, y_max = 25.0;
        double spacing = 2.5;
        double z = 0.0;
    };

    // Random single-bounce scatterers, drawn once per run from the seed.
    struct ScattererGenerator
    {
        std::size_t count = 10;
        double x_min = 5.0, x_max = 60.0;
        double y_min = -30.0, y_max = 30.0;
        double z_min = 0.0, z_max = 10.0;
    };

    struct FreeSpaceSweep
    {
        std::vector<double> d2_values{16.0, 18.0, 20.0};
        double dx_start = 0.5;
        double dx_stop = 60.0;
        double dx_step = 0.5;
        double y = 0.0;
        double z = 0.0;
    };

    struct ScenarioConfig
    {
        double f1_hz = 28e9;
        double f2_hz = 39e9;
        std::size_t n_y = 16;
        std::size_t n_z = 16;
        double d1 = 15.0;
        double d2 = 16.0;

        Scenario scenario = Scenario::far_free;

        std::vector<Vec3> ue_positions; // explicit list wins over the grid
        UeGrid ue_grid;

        std::vector<Scatterer> scatterers; // explicit list wins over the generator
        ScattererGenerator scatterer_generator;
        bool include_los = true;

        double delta = 0.15;         // scatterer deviation bound, m
        double match_epsilon = 0.1;  // scatterer matching radius, m
        double far_error_threshold_deg = 1.0;

        bool use_extraction = true;
        ExtractionConfig extraction;
        GainMode gain_mode = GainMode::literal;
        TruthModel truth = TruthModel::spherical;

        std::uint64_t seed = 1;
        unsigned workers = 1;

        std::optional<std::filesystem::path> mpc_csv;
        std::filesystem::path out_dir = "out";

        FreeSpaceSweep sweep;

        TwoPanelLayout layout() const { return TwoPanelLayout::vertical(f1_hz, f2_hz, n_y, n_z, d1, d2); }

        // Explicit positions, or the grid expanded row by row (x outer, y inner).
        std::vector<Vec3> resolve_ues() const;
    };

    std::string_view to_string(TruthModel t);

    // Parses and validates a JSON scenario document. Unknown keys are schema
    // errors; paths in error messages are dotted ("layout.d2").
    ScenarioConfig parse_config(const std::string &text, const std::filesystem::path &base_dir = {});

    // Reads `path` and parses it; relative file references resolve against
    // the config file's directory.
    ScenarioConfig load_config(const std::filesystem::path &path);
}

#endif
