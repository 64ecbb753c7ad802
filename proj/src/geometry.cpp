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

#include "twopanel/geometry.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace twopanel
{
    PanelConfig::PanelConfig(double frequency_hz, std::size_t n_y, std::size_t n_z, Vec3 reference_position)
        : frequency_hz_(frequency_hz), n_y_(n_y), n_z_(n_z), reference_(reference_position)
    {
        if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
            throw std::invalid_argument("PanelConfig: frequency must be positive and finite");
        if (n_y == 0 || n_z == 0)
            throw std::invalid_argument("PanelConfig: element counts must be at least 1");
        if (reference_position.x != 0.0)
            throw std::invalid_argument("PanelConfig: panels lie in the x = 0 plane");
    }

    TwoPanelLayout::TwoPanelLayout(PanelConfig panel1, PanelConfig panel2)
        : panel1_(panel1), panel2_(panel2),
          delta_d_(distance(panel1.reference_position(), panel2.reference_position()))
    {
    }

    TwoPanelLayout TwoPanelLayout::vertical(double f1_hz, double f2_hz, std::size_t n_y, std::size_t n_z,
                                            double d1, double d2)
    {
        return TwoPanelLayout(PanelConfig(f1_hz, n_y, n_z, {0.0, 0.0, d1}),
                              PanelConfig(f2_hz, n_y, n_z, {0.0, 0.0, d2}));
    }

    bool TwoPanelLayout::is_vertical_stack() const
    {
        const auto &a = panel1_.reference_position();
        const auto &b = panel2_.reference_position();
        return a.x == b.x && a.y == b.y;
    }

    Vec3 element_position(const PanelConfig &panel, std::size_t iy, std::size_t iz)
    {
        if (iy >= panel.n_y() || iz >= panel.n_z())
            throw std::invalid_argument("element_position: index (" + std::to_string(iy) + ", " +
                                        std::to_string(iz) + ") out of range");
        const double s = panel.spacing();
        const Vec3 &r = panel.reference_position();
        return {r.x, r.y + static_cast<double>(iy) * s, r.z + static_cast<double>(iz) * s};
    }

    double aperture(const TwoPanelLayout &layout)
    {
        // Both panels are axis-aligned rectangles, so the farthest pair is
        // always a pair of corner elements.
        std::array<Vec3, 8> corners;
        std::size_t k = 0;
        for (const PanelConfig *p : {&layout.panel1(), &layout.panel2()})
            for (std::size_t iy : {std::size_t{0}, p->n_y() - 1})
                for (std::size_t iz : {std::size_t{0}, p->n_z() - 1})
                    corners[k++] = element_position(*p, iy, iz);

        double best = 0.0;
        for (std::size_t i = 0; i < corners.size(); ++i)
            for (std::size_t j = i + 1; j < corners.size(); ++j)
                best = std::max(best, distance(corners[i], corners[j]));
        return best;
    }

    double rayleigh_distance(double aperture_m, double lambda1, double lambda2)
    {
        if (aperture_m < 0.0 || !(lambda1 > 0.0) || !(lambda2 > 0.0))
            throw std::invalid_argument("rayleigh_distance: need D >= 0 and positive wavelengths");
        return 2.0 * aperture_m * aperture_m / std::min(lambda1, lambda2);
    }

    FieldRegime classify_field(double r, double r_rayl)
    {
        if (!(r > 0.0))
            throw std::invalid_argument("classify_field: distance must be positive");
        return r >= r_rayl ? FieldRegime::far : FieldRegime::near;
    }

    double panel_rayleigh_distance(const PanelConfig &panel)
    {
        const double wy = panel.spacing() * static_cast<double>(panel.n_y());
        const double wz = panel.spacing() * static_cast<double>(panel.n_z());
        return 2.0 * (wy * wy + wz * wz) / panel.wavelength();
    }

    double wrap_azimuth(double phi)
    {
        constexpr double two_pi = 2.0 * pi;
        double w = std::fmod(phi, two_pi);
        if (w < 0.0)
            w += two_pi;
        if (w >= two_pi) // fmod of a tiny negative value can round up to 2 pi
            w = 0.0;
        return w;
    }

    LosGeometry los_angles(const PanelConfig &panel, const Vec3 &point)
    {
        const Vec3 d = point - panel.reference_position();
        const double range = d.norm();
        if (!(range > 0.0))
            throw std::invalid_argument("los_angles: point coincides with the reference element");
        const double s = std::clamp(d.z / range, -1.0, 1.0);
        return {std::asin(s), wrap_azimuth(std::atan2(d.y, d.x)), range};
    }

    Vec3 point_from_angles(const PanelConfig &panel, double theta, double phi, double range)
    {
        const double c = std::cos(theta);
        return panel.reference_position() +
               Vec3{range * c * std::cos(phi), range * c * std::sin(phi), range * std::sin(theta)};
    }
}
