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

#ifndef TWOPANEL_ESTIMATION_HPP
#define TWOPANEL_ESTIMATION_HPP

#include "twopanel/channel.hpp"

#include <span>
#include <vector>

namespace twopanel
{
    struct ExtractionConfig
    {
        std::size_t max_paths = 25;
        double coarse_grid_step = pi / 180.0; // 1 degree
        double refine_tolerance = 1e-6;       // radians
        double residual_stop = 1e-6;          // fraction of ||h||^2

        // Throws std::invalid_argument naming the offending field.
        void validate() const;
    };

    enum class StopReason
    {
        residual_below_threshold,
        max_paths_reached
    };

    struct Extraction
    {
        std::vector<PathComponent> paths;
        StopReason stop = StopReason::residual_below_threshold;
        // Residual energy / ||h||^2 after each accepted path; entry 0 is 1.
        std::vector<double> residual_history;

        double residual_fraction() const { return residual_history.back(); }
    };

    // Greedy matched pursuit over the panel's steering manifold.
    //
    // Each round scans a coarse (theta, phi) grid for the steering vector most
    // correlated with the residual, refines it by coordinate-wise golden-section
    // search, then re-refines every path against its own partial residual and
    // re-fits all gains jointly by least squares. Gains follow the
    // h = sqrt(N) sum gain * a(theta, phi) convention.
    //
    // The y-z panel cannot tell x > 0 from x < 0, so azimuths are searched over
    // the front half-space cos(phi) >= 0 only.
    //
    // Throws ConvergenceError if a round fails to lower the residual.
    Extraction extract_paths(const ChannelVector &h, const PanelConfig &panel, const ExtractionConfig &cfg = {});

    // Channel from path parameters; same model as synth_far_channel.
    ChannelVector reconstruct(const PanelConfig &panel, std::span<const PathComponent> paths);
}

#endif
