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

#ifndef TWOPANEL_CHANNEL_HPP
#define TWOPANEL_CHANNEL_HPP

#include "twopanel/geometry.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace twopanel
{
    using cplx = std::complex<double>;

    // One multi-path component as seen from a panel's reference element.
    struct PathComponent
    {
        cplx gain{0.0, 0.0}; // linear complex amplitude
        double theta = 0.0;  // elevation, radians in [-pi/2, pi/2]
        double phi = 0.0;    // azimuth, radians in [0, 2 pi)
    };

    // Per-element channel coefficients of one panel, ordered iy * n_z + iz.
    class ChannelVector
    {
    public:
        ChannelVector() = default;
        explicit ChannelVector(std::size_t n) : entries_(n, cplx{0.0, 0.0}) {}
        explicit ChannelVector(std::vector<cplx> entries) : entries_(std::move(entries)) {}

        std::size_t size() const { return entries_.size(); }
        cplx &operator[](std::size_t i) { return entries_[i]; }
        const cplx &operator[](std::size_t i) const { return entries_[i]; }

        std::span<const cplx> entries() const { return entries_; }
        std::span<cplx> entries() { return entries_; }
        auto begin() const { return entries_.begin(); }
        auto end() const { return entries_.end(); }

        double norm_squared() const;

        ChannelVector &operator*=(cplx s);
        friend bool operator==(const ChannelVector &, const ChannelVector &) = default;

    private:
        std::vector<cplx> entries_;
    };

    // Point scatterer with an opaque complex weight per panel frequency.
    struct Scatterer
    {
        Vec3 position;
        cplx reflectivity1{1.0, 0.0};
        cplx reflectivity2{1.0, 0.0};
    };

    // Unit-norm UPA response a_y(theta, phi) (x) a_z(theta): entry (iy, iz) is
    // exp(j pi (iy cos(theta) sin(phi) + iz sin(theta))) / sqrt(N).
    ChannelVector steering_vector(const PanelConfig &panel, double theta, double phi);

    // Free-space gain (lambda / 4 pi R) exp(-j 2 pi R / lambda), phase stored as
    // its principal value.
    cplx friis_gain(double lambda, double range);

    // sqrt(N) * sum_l gain_l * a(theta_l, phi_l)
    ChannelVector synth_far_channel(const PanelConfig &panel, std::span<const PathComponent> paths);

    // Exact point-source field: each element gets friis_gain at its own distance.
    ChannelVector synth_spherical_channel(const PanelConfig &panel, const Vec3 &source);

    struct SceneOptions
    {
        bool include_los = false;
    };

    // Where each path of a synthetic scene bounces. LoS paths have no points.
    struct PathTruth
    {
        std::optional<Vec3> point1;
        std::optional<Vec3> point2;
    };

    struct MultipathScene
    {
        std::vector<PathComponent> paths1;
        std::vector<PathComponent> paths2;
        std::vector<PathTruth> truth;
    };

    // Single-bounce scene. Panel 2 sees every scatterer shifted vertically by a
    // draw from U[-deviation_delta, +deviation_delta]; draws are a pure
    // function of `seed`. When enabled the LoS path is appended last.
    MultipathScene synth_multipath_scene(const TwoPanelLayout &layout, const Vec3 &ue,
                                         std::span<const Scatterer> scatterers, double deviation_delta,
                                         std::uint64_t seed, SceneOptions options = {});

    // Uniform double in [0, 1) from the top 53 bits of a 64-bit word.
    inline double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }
}

#endif
