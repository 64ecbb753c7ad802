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

#ifndef TWOPANEL_INFERENCE_HPP
#define TWOPANEL_INFERENCE_HPP

#include "twopanel/channel.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace twopanel
{
    enum class Scenario
    {
        far_free,
        near_free,
        multipath_far,
        multipath_near
    };

    std::string_view to_string(Scenario s);
    std::optional<Scenario> scenario_from_string(std::string_view s);

    // Elevation interval (lower, upper]. Lower is exclusive, upper inclusive.
    struct AngleRange
    {
        double lower;
        double upper;

        bool contains(double theta) const { return theta > lower && theta <= upper; }
    };

    enum class GainMode
    {
        literal,           // principal-branch fractional power of alpha1
        amplitude_assisted // distance recovered from |alpha1|, then Friis at panel 2
    };

    std::string_view to_string(GainMode m);
    std::optional<GainMode> gain_mode_from_string(std::string_view s);

    struct FreeSpaceInference
    {
        PathComponent path;
        std::optional<double> range2; // only set by the near-field rule
    };

    struct AngleInference
    {
        double theta;
        double phi;
    };

    struct RangeInference
    {
        AngleRange theta;
        double phi;
    };

    struct InferenceResult
    {
        Scenario scenario;
        std::variant<FreeSpaceInference, std::vector<AngleInference>, std::vector<RangeInference>> value;

        const FreeSpaceInference &free_space() const { return std::get<FreeSpaceInference>(value); }
        const std::vector<AngleInference> &angles() const { return std::get<std::vector<AngleInference>>(value); }
        const std::vector<RangeInference> &ranges() const { return std::get<std::vector<RangeInference>>(value); }
    };

    // Panel-2 gain of a far-field LoS path from the panel-1 gain.
    //
    // literal:            |a1| (l2/l1) (a1/|a1|)^(l1/l2) exp(j 2 pi dd sin(theta2) / l2),
    //                     with arg(a1) taken in (-pi, pi].
    // amplitude_assisted: R1 = l1 / (4 pi |a1|), result friis_gain(l2, R1 - dd sin(theta2)).
    //
    // theta2 must lie in (-pi/2, 0).
    cplx infer_gain_far(cplx alpha1, double lambda1, double lambda2, double delta_d, double theta2,
                        GainMode mode = GainMode::literal);

    // LoS far field: angles copied, gain via infer_gain_far at theta2 = theta1.
    InferenceResult infer_far_free(const PathComponent &path1, double lambda1, double lambda2, double delta_d,
                                   GainMode mode = GainMode::literal);

    // LoS near field with panel 2 stacked above panel 1:
    // theta2 = atan((d2 / d1) tan(theta1)), R2 = d2 / |sin(theta2)|, gain = friis_gain(lambda2, R2).
    InferenceResult infer_near_free(const PathComponent &path1, double d1, double d2, double lambda2);

    // Shared far-field scatterers: per-path angles copied, no gains.
    InferenceResult infer_multipath_far(std::span<const PathComponent> paths1);

    // Shared near-field scatterers with vertical deviation bounded by delta:
    // theta2 in (-pi/2, atan(((d2 - delta) / d1) tan(theta1))], azimuth copied.
    InferenceResult infer_multipath_near(std::span<const PathComponent> paths1, double d1, double d2, double delta);
}

#endif
