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


#ifndef TWOPANEL_HARNESS_MATCHING_HPP
#define TWOPANEL_HARNESS_MATCHING_HPP

#include "twopanel/harness/dataset.hpp"

#include <cstdint>
#include <vector>

namespace twopanel::harness
{
    struct PathPair
    {
        std::int64_t ue_id = 0;
        MpcRow path1;
        MpcRow path2;
        double distance = 0.0; // between interaction points; 0 for LoS
    };

    struct UnpairedPath
    {
        std::int64_t ue_id = 0;
        int panel_id = 1;
        std::int64_t path_id = 0;
    };

    struct MatchResult
    {
        std::vector<PathPair> pairs;       // per UE in first-appearance order, then by path1.path_id
        std::vector<UnpairedPath> unpaired;

        // Paired paths over all paths, counting both panels.
        double pairing_fraction() const;
    };

    // Per UE, pairs panel-1 and panel-2 paths whose interaction points lie
    // within epsilon of each other. Candidates are taken nearest first, each
    // path at most once; equal distances go to the lower panel-1 path_id, then
    // the lower panel-2 path_id. LoS rows pair only with LoS rows.
    MatchResult match_shared_scatterers(const MpcDataset &ds, double epsilon);
}

#endif
