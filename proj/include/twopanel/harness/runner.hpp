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


#ifndef TWOPANEL_HARNESS_RUNNER_HPP
#define TWOPANEL_HARNESS_RUNNER_HPP

#include "twopanel/harness/config.hpp"
#include "twopanel/harness/dataset.hpp"
#include "twopanel/metrics.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace twopanel::harness
{
    // Channel a panel sees from a LoS point source under the given truth model.
    ChannelVector free_space_channel(const PanelConfig &panel, const Vec3 &source, TruthModel truth);

    // Panel-1 LoS path: a single-path extraction, or the exact geometric path
    // when extraction is disabled.
    PathComponent observe_los_path(const ScenarioConfig &cfg, const PanelConfig &panel1, const Vec3 &ue);

    // Free-space pipeline for one UE: observe, infer, reconstruct, score.
    // Failures end up in the record's status.
    UeRecord run_free_space_ue(const ScenarioConfig &cfg, std::int64_t ue_id, const Vec3 &ue);

    // Explicit scatterers, or `count` draws from the generator box.
    std::vector<Scatterer> resolve_scatterers(const ScenarioConfig &cfg);

    // Seed of the scene drawn for the UE at position `index` of the placement.
    std::uint64_t ue_seed(std::uint64_t seed, std::size_t index);

    // Synthetic MPC export: one single-bounce scene per UE, path_id = scatterer
    // index, LoS last when enabled. ue_id is the placement index.
    MpcDataset synth_dataset(const ScenarioConfig &cfg);

    // Scores a dataset under cfg.scenario. Free-space scenarios use the LoS
    // rows; multipath scenarios use the shared-scatterer pairs.
    ScenarioReport run_dataset(const ScenarioConfig &cfg, const MpcDataset &ds);

    // Whole scenario: dataset-driven if cfg.mpc_csv is set, otherwise synthetic.
    ScenarioReport run_scenario(const ScenarioConfig &cfg);

    struct SweepPoint
    {
        double dx = 0.0;
        double f_near = nan; // near-field rule
        double f_far = nan;  // far-field rule
        friend bool operator==(const SweepPoint &, const SweepPoint &) = default;
    };

    struct SweepCurve
    {
        double d2 = 0.0;
        std::vector<SweepPoint> points;
    };

    // dx grid start, start + step, ... up to stop.
    std::vector<double> sweep_dx_values(const FreeSpaceSweep &s);

    // F of both free-space rules along a ground line, one curve per d2 value.
    std::vector<SweepCurve> run_sweep(const ScenarioConfig &cfg);

    // Calls fn(i) for i in [0, n) on `workers` threads. Exceptions escaping
    // fn are rethrown after all threads join.
    void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &fn);
}

#endif
