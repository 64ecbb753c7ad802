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

#include "twopanel/inference.hpp"
#include "twopanel/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace twopanel
{
    std::string_view to_string(Scenario s)
    {
        switch (s)
        {
        case Scenario::far_free:
            return "far-free";
        case Scenario::near_free:
            return "near-free";
        case Scenario::multipath_far:
            return "multipath-far";
        case Scenario::multipath_near:
            return "multipath-near";
        }
        return "unknown";
    }

    std::optional<Scenario> scenario_from_string(std::string_view s)
    {
        for (Scenario v : {Scenario::far_free, Scenario::near_free, Scenario::multipath_far, Scenario::multipath_near})
            if (to_string(v) == s)
                return v;
        return std::nullopt;
    }

    std::string_view to_string(GainMode m)
    {
        return m == GainMode::literal ? "literal-eq7" : "amplitude-assisted";
    }

    std::optional<GainMode> gain_mode_from_string(std::string_view s)
    {
        if (s == "literal-eq7")
            return GainMode::literal;
        if (s == "amplitude-assisted")
            return GainMode::amplitude_assisted;
        return std::nullopt;
    }

    namespace
    {
        void require_below_horizon(double theta, const char *who)
        {
            if (!(theta > -0.5 * pi && theta < 0.0))
                throw std::invalid_argument(std::string(who) + ": elevation " + std::to_string(theta) +
                                            " rad outside (-pi/2, 0)");
        }

        // Distance whose Friis gain at lambda reproduces alpha. The modulus
        // pins it to a few ulps; the phase then selects among neighbouring
        // doubles, which differ measurably at millimetre wavelengths.
        double distance_from_gain(cplx alpha, double lambda)
        {
            const double coarse = lambda / (4.0 * pi * std::abs(alpha));
            double best = coarse;
            double best_err = std::abs(friis_gain(lambda, coarse) - alpha);
            for (double dir : {-1.0, 1.0})
            {
                double r = coarse;
                for (int k = 0; k < 16 && best_err > 0.0; ++k)
                {
                    r = std::nextafter(r, dir * INFINITY);
                    const double err = std::abs(friis_gain(lambda, r) - alpha);
                    if (err < best_err)
                    {
                        best_err = err;
                        best = r;
                    }
                }
            }
            return best;
        }
    }

    cplx infer_gain_far(cplx alpha1, double lambda1, double lambda2, double delta_d, double theta2, GainMode mode)
    {
        if (alpha1 == cplx{0.0, 0.0} || !std::isfinite(alpha1.real()) || !std::isfinite(alpha1.imag()))
            throw std::invalid_argument("infer_gain_far: alpha1 must be nonzero and finite");
        if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
            throw std::invalid_argument("infer_gain_far: wavelengths must be positive");
        if (!(delta_d >= 0.0))
            throw std::invalid_argument("infer_gain_far: delta_d must be >= 0");
        require_below_horizon(theta2, "infer_gain_far");

        const double path_difference = delta_d * std::sin(theta2);
        if (mode == GainMode::amplitude_assisted)
        {
            const double r1 = distance_from_gain(alpha1, lambda1);
            return friis_gain(lambda2, r1 - path_difference);
        }

        const double magnitude = std::abs(alpha1) * (lambda2 / lambda1);
        // std::arg returns the principal value in [-pi, pi]; -pi and pi name
        // the same phasor and only -pi needs folding onto (-pi, pi].
        double arg1 = std::arg(alpha1);
        if (arg1 == -pi)
            arg1 = pi;
        const double phase = arg1 * (lambda1 / lambda2) + 2.0 * pi * path_difference / lambda2;
        return std::polar(magnitude, phase);
    }

    InferenceResult infer_far_free(const PathComponent &path1, double lambda1, double lambda2, double delta_d,
                                   GainMode mode)
    {
        PathComponent p2 = path1;
        p2.gain = infer_gain_far(path1.gain, lambda1, lambda2, delta_d, path1.theta, mode);
        return {Scenario::far_free, FreeSpaceInference{p2, std::nullopt}};
    }

    InferenceResult infer_near_free(const PathComponent &path1, double d1, double d2, double lambda2)
    {
        if (!(d1 > 0.0) || !(d2 > 0.0))
            throw std::invalid_argument("infer_near_free: panel heights must be positive");
        if (path1.theta == 0.0)
            throw std::invalid_argument("infer_near_free: theta1 = 0 has no ground intersection");
        require_below_horizon(path1.theta, "infer_near_free");

        const double theta2 = std::atan((d2 / d1) * std::tan(path1.theta));
        const double range2 = d2 / std::abs(std::sin(theta2));
        const PathComponent p2{friis_gain(lambda2, range2), theta2, path1.phi};
        return {Scenario::near_free, FreeSpaceInference{p2, range2}};
    }

    InferenceResult infer_multipath_far(std::span<const PathComponent> paths1)
    {
        if (paths1.empty())
            throw std::invalid_argument("infer_multipath_far: path list is empty");
        std::vector<AngleInference> out;
        out.reserve(paths1.size());
        for (const PathComponent &p : paths1)
            out.push_back({p.theta, p.phi});
        return {Scenario::multipath_far, std::move(out)};
    }

    InferenceResult infer_multipath_near(std::span<const PathComponent> paths1, double d1, double d2, double delta)
    {
        if (paths1.empty())
            throw std::invalid_argument("infer_multipath_near: path list is empty");
        if (!(d1 > 0.0) || !(d2 > d1))
            throw std::invalid_argument("infer_multipath_near: need 0 < d1 < d2");
        if (!(delta >= 0.0))
            throw std::invalid_argument("infer_multipath_near: delta must be >= 0");
        if (delta >= d2 - d1)
            throw ContainmentError("infer_multipath_near: delta = " + std::to_string(delta) +
                                   " m is not below d2 - d1 = " + std::to_string(d2 - d1) +
                                   " m; the elevation range cannot be guaranteed");

        const double ratio = (d2 - delta) / d1;
        std::vector<RangeInference> out;
        out.reserve(paths1.size());
        for (const PathComponent &p : paths1)
        {
            require_below_horizon(p.theta, "infer_multipath_near");
            out.push_back({AngleRange{-0.5 * pi, std::atan(ratio * std::tan(p.theta))}, p.phi});
        }
        return {Scenario::multipath_near, std::move(out)};
    }
}
