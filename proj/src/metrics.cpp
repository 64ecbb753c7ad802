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

#include "twopanel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twopanel
{
    double correlation(const ChannelVector &h_est, const ChannelVector &h_true)
    {
        if (h_est.size() != h_true.size())
            throw std::invalid_argument("correlation: length mismatch");
        const double e1 = h_est.norm_squared();
        const double e2 = h_true.norm_squared();
        if (!(e1 > 0.0) || !(e2 > 0.0))
            throw std::invalid_argument("correlation: zero vector");

        cplx inner{0.0, 0.0};
        for (std::size_t i = 0; i < h_est.size(); ++i)
            inner += std::conj(h_est[i]) * h_true[i];
        return std::clamp(std::norm(inner) / (e1 * e2), 0.0, 1.0);
    }

    std::vector<double> elevation_error_curve(double d1, double d2, std::span<const double> dx_values)
    {
        if (!(d1 > 0.0) || !(d2 >= d1))
            throw std::invalid_argument("elevation_error_curve: need d2 >= d1 > 0");
        std::vector<double> out;
        out.reserve(dx_values.size());
        for (double dx : dx_values)
        {
            if (!(dx > 0.0))
                throw std::invalid_argument("elevation_error_curve: dx must be positive");
            out.push_back(std::atan(dx * (d2 - d1) / (dx * dx + d1 * d2)));
        }
        return out;
    }

    double containment_rate(std::span<const AngleRange> ranges, std::span<const double> true_thetas)
    {
        if (ranges.size() != true_thetas.size())
            throw std::invalid_argument("containment_rate: length mismatch");
        if (ranges.empty())
            throw std::invalid_argument("containment_rate: empty input");
        std::size_t inside = 0;
        for (std::size_t i = 0; i < ranges.size(); ++i)
            inside += ranges[i].contains(true_thetas[i]) ? 1 : 0;
        return static_cast<double>(inside) / static_cast<double>(ranges.size());
    }

    double mean_abs_error_deg(std::span<const double> errors_rad)
    {
        if (errors_rad.empty())
            return nan;
        double s = 0.0;
        for (double e : errors_rad)
            s += std::abs(e);
        return s / static_cast<double>(errors_rad.size()) * (180.0 / pi);
    }

    Aggregates summarize(std::span<const UeRecord> records)
    {
        constexpr double deg = 180.0 / pi;
        Aggregates a;
        a.n_records = static_cast<std::int64_t>(records.size());

        double f_sum = 0.0, f_min = INFINITY, f_max = -INFINITY;
        std::int64_t f_n = 0;
        double e_sum = 0.0, e_max = -INFINITY;
        std::int64_t e_n = 0;
        double c_sum = 0.0, c_min = INFINITY, c_max = -INFINITY;
        std::int64_t c_n = 0;

        for (const UeRecord &r : records)
        {
            if (r.status != "ok")
            {
                ++a.n_failed;
                continue;
            }
            if (std::isfinite(r.correlation))
            {
                f_sum += r.correlation;
                f_min = std::min(f_min, r.correlation);
                f_max = std::max(f_max, r.correlation);
                ++f_n;
            }
            if (std::isfinite(r.elevation_error) && r.n_paths > 0)
            {
                e_sum += r.elevation_error * static_cast<double>(r.n_paths);
                e_max = std::max(e_max, r.max_elevation_error);
                e_n += r.n_paths;
            }
            if (std::isfinite(r.containment) && r.n_paths > 0)
            {
                c_sum += r.containment * static_cast<double>(r.n_paths);
                c_min = std::min(c_min, r.containment);
                c_max = std::max(c_max, r.containment);
                c_n += r.n_paths;
            }
        }

        if (f_n > 0)
        {
            a.correlation_mean = f_sum / static_cast<double>(f_n);
            a.correlation_min = f_min;
            a.correlation_max = f_max;
        }
        if (e_n > 0)
        {
            a.elevation_error_mean_deg = e_sum / static_cast<double>(e_n) * deg;
            a.elevation_error_max_deg = e_max * deg;
        }
        if (c_n > 0)
        {
            a.containment_mean = c_sum / static_cast<double>(c_n);
            a.containment_min = c_min;
            a.containment_max = c_max;
        }
        return a;
    }
}
