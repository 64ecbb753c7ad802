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

#ifndef TWOPANEL_METRICS_HPP
#define TWOPANEL_METRICS_HPP

#include "twopanel/channel.hpp"
#include "twopanel/inference.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace twopanel
{
    // |h_est^H h_true|^2 / (||h_est||^2 ||h_true||^2), in [0, 1].
    double correlation(const ChannelVector &h_est, const ChannelVector &h_true);

    // Elevation error of copying theta1 to panel 2 for a ground UE at horizontal
    // distance dx: atan(dx (d2 - d1) / (dx^2 + d1 d2)).
    std::vector<double> elevation_error_curve(double d1, double d2, std::span<const double> dx_values);

    // Fraction of true elevations that fall inside their (lower, upper] range.
    double containment_rate(std::span<const AngleRange> ranges, std::span<const double> true_thetas);

    // Mean absolute angle error, radians in, degrees out.
    double mean_abs_error_deg(std::span<const double> errors_rad);

    inline constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    // One UE of a sweep. Metrics that do not apply to the scenario are NaN.
    struct UeRecord
    {
        std::int64_t ue_id = 0;
        Vec3 position;
        Scenario scenario = Scenario::far_free;
        double correlation = nan;       // F
        double elevation_error = nan;   // mean |theta2_inferred - theta2_true| over paths, rad
        double max_elevation_error = nan;
        double containment = nan;       // fraction of paths whose true theta2 is inside the range
        std::int64_t n_paths = 0;       // paths that entered the error/containment statistics
        std::string status = "ok";      // "ok" or the failure message for this UE

        friend bool operator==(const UeRecord &, const UeRecord &) = default;
    };

    struct Aggregates
    {
        std::int64_t n_records = 0;
        std::int64_t n_failed = 0;
        double correlation_mean = nan;
        double correlation_min = nan;
        double correlation_max = nan;
        double elevation_error_mean_deg = nan; // path-weighted
        double elevation_error_max_deg = nan;
        double containment_mean = nan;         // path-weighted
        double containment_min = nan;
        double containment_max = nan;
    };

    struct ScenarioReport
    {
        std::vector<UeRecord> records;
        Aggregates aggregates;
    };

    // Recomputes aggregates from records in record order.
    Aggregates summarize(std::span<const UeRecord> records);
}

#endif
