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

#include "twopanel/channel.hpp"

#include <random>
#include <stdexcept>

namespace twopanel
{
    double ChannelVector::norm_squared() const
    {
        double s = 0.0;
        for (const cplx &v : entries_)
            s += std::norm(v);
        return s;
    }

    ChannelVector &ChannelVector::operator*=(cplx s)
    {
        for (cplx &v : entries_)
            v *= s;
        return *this;
    }

    namespace
    {
        // Adds scale * sqrt(N) * a(theta, phi) to out. Shared by the steering
        // vector and the multi-path synthesis so both use identical phases.
        void accumulate_steering(const PanelConfig &panel, double theta, double phi, cplx scale,
                                 std::span<cplx> out)
        {
            const double u = std::cos(theta) * std::sin(phi);
            const double v = std::sin(theta);
            std::vector<cplx> pz(panel.n_z());
            for (std::size_t iz = 0; iz < panel.n_z(); ++iz)
                pz[iz] = std::polar(1.0, pi * static_cast<double>(iz) * v);
            for (std::size_t iy = 0; iy < panel.n_y(); ++iy)
            {
                const cplx py = scale * std::polar(1.0, pi * static_cast<double>(iy) * u);
                for (std::size_t iz = 0; iz < panel.n_z(); ++iz)
                    out[panel.index(iy, iz)] += py * pz[iz];
            }
        }
    }

    ChannelVector steering_vector(const PanelConfig &panel, double theta, double phi)
    {
        ChannelVector a(panel.size());
        accumulate_steering(panel, theta, phi, 1.0 / std::sqrt(static_cast<double>(panel.size())), a.entries());
        return a;
    }

    cplx friis_gain(double lambda, double range)
    {
        if (!(range > 0.0) || !(lambda > 0.0))
            throw std::invalid_argument("friis_gain: range and wavelength must be positive");
        // Fractional cycle count with the division residual folded back in, so
        // the phase stays accurate to ~1e-16 rad at any range.
        const double cycles = range / lambda;
        const double residual = std::fma(-cycles, lambda, range);
        double frac = (cycles - std::floor(cycles)) + residual / lambda;
        frac -= std::floor(frac);
        return std::polar(lambda / (4.0 * pi * range), -2.0 * pi * frac);
    }

    ChannelVector synth_far_channel(const PanelConfig &panel, std::span<const PathComponent> paths)
    {
        if (paths.empty())
            throw std::invalid_argument("synth_far_channel: path list is empty");
        ChannelVector h(panel.size());
        // sqrt(N) * (1 / sqrt(N)) cancels
        for (const PathComponent &p : paths)
            accumulate_steering(panel, p.theta, p.phi, p.gain, h.entries());
        return h;
    }

    ChannelVector synth_spherical_channel(const PanelConfig &panel, const Vec3 &source)
    {
        ChannelVector h(panel.size());
        const double lambda = panel.wavelength();
        for (std::size_t iy = 0; iy < panel.n_y(); ++iy)
            for (std::size_t iz = 0; iz < panel.n_z(); ++iz)
            {
                const double r = distance(element_position(panel, iy, iz), source);
                if (!(r > 0.0))
                    throw std::invalid_argument("synth_spherical_channel: source coincides with an element");
                h[panel.index(iy, iz)] = friis_gain(lambda, r);
            }
        return h;
    }

    namespace
    {
        cplx bounce_gain(const PanelConfig &panel, const Vec3 &point, const Vec3 &ue, cplx reflectivity)
        {
            const double lambda = panel.wavelength();
            const double leg1 = distance(panel.reference_position(), point);
            const double leg2 = distance(point, ue);
            if (!(leg1 > 0.0) || !(leg2 > 0.0))
                throw std::invalid_argument("synth_multipath_scene: scattering point coincides with panel or UE");
            const cplx g = friis_gain(lambda, leg1 + leg2);
            const double mag = (lambda / (4.0 * pi * leg1)) * (lambda / (4.0 * pi * leg2));
            return reflectivity * std::polar(mag, std::arg(g));
        }
    }

    MultipathScene synth_multipath_scene(const TwoPanelLayout &layout, const Vec3 &ue,
                                         std::span<const Scatterer> scatterers, double deviation_delta,
                                         std::uint64_t seed, SceneOptions options)
    {
        if (!(deviation_delta >= 0.0))
            throw std::invalid_argument("synth_multipath_scene: deviation_delta must be >= 0");

        const PanelConfig &p1 = layout.panel1();
        const PanelConfig &p2 = layout.panel2();
        std::mt19937_64 rng(seed);

        MultipathScene scene;
        scene.paths1.reserve(scatterers.size() + 1);
        scene.paths2.reserve(scatterers.size() + 1);
        scene.truth.reserve(scatterers.size() + 1);

        for (const Scatterer &s : scatterers)
        {
            const double shift = (2.0 * unit_interval(rng()) - 1.0) * deviation_delta;
            const Vec3 point1 = s.position;
            const Vec3 point2 = deviation_delta == 0.0 ? point1 : point1 + Vec3{0.0, 0.0, shift};

            const LosGeometry g1 = los_angles(p1, point1);
            const LosGeometry g2 = los_angles(p2, point2);
            scene.paths1.push_back({bounce_gain(p1, point1, ue, s.reflectivity1), g1.theta, g1.phi});
            scene.paths2.push_back({bounce_gain(p2, point2, ue, s.reflectivity2), g2.theta, g2.phi});
            scene.truth.push_back({point1, point2});
        }

        if (options.include_los)
        {
            const LosGeometry g1 = los_angles(p1, ue);
            const LosGeometry g2 = los_angles(p2, ue);
            scene.paths1.push_back({friis_gain(p1.wavelength(), g1.range), g1.theta, g1.phi});
            scene.paths2.push_back({friis_gain(p2.wavelength(), g2.range), g2.theta, g2.phi});
            scene.truth.push_back({std::nullopt, std::nullopt});
        }
        return scene;
    }
}
