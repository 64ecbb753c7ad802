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

#ifndef TWOPANEL_GEOMETRY_HPP
#define TWOPANEL_GEOMETRY_HPP

#include <cmath>
#include <cstddef>

namespace twopanel
{
    inline constexpr double speed_of_light = 299792458.0; // m/s
    inline constexpr double pi = 3.14159265358979323846;

    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        friend constexpr Vec3 operator+(const Vec3 &a, const Vec3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
        friend constexpr Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
        friend constexpr Vec3 operator*(double s, const Vec3 &a) { return {s * a.x, s * a.y, s * a.z}; }
        friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;

        double norm() const { return std::sqrt(x * x + y * y + z * z); }
    };

    inline double distance(const Vec3 &a, const Vec3 &b) { return (a - b).norm(); }

    // Uniform planar array in the vertical y-z plane (x = 0), broadside +x, z up.
    // Elements sit on a half-wavelength grid starting at the bottom-left
    // reference element.
    class PanelConfig
    {
    public:
        PanelConfig(double frequency_hz, std::size_t n_y, std::size_t n_z, Vec3 reference_position);

        double frequency_hz() const { return frequency_hz_; }
        double wavelength() const { return speed_of_light / frequency_hz_; }
        double spacing() const { return 0.5 * wavelength(); }
        std::size_t n_y() const { return n_y_; }
        std::size_t n_z() const { return n_z_; }
        std::size_t size() const { return n_y_ * n_z_; }
        const Vec3 &reference_position() const { return reference_; }

        // Height of the reference element above ground.
        double height() const { return reference_.z; }

        // Flat element index, y-major: iy * n_z + iz.
        std::size_t index(std::size_t iy, std::size_t iz) const { return iy * n_z_ + iz; }

    private:
        double frequency_hz_;
        std::size_t n_y_;
        std::size_t n_z_;
        Vec3 reference_;
    };

    class TwoPanelLayout
    {
    public:
        TwoPanelLayout(PanelConfig panel1, PanelConfig panel2);

        // Panel 2 stacked directly above (or below) panel 1 at the given heights.
        static TwoPanelLayout vertical(double f1_hz, double f2_hz, std::size_t n_y, std::size_t n_z,
                                       double d1, double d2);

        const PanelConfig &panel1() const { return panel1_; }
        const PanelConfig &panel2() const { return panel2_; }

        // Distance between the two reference elements.
        double delta_d() const { return delta_d_; }

        // True when both references share x and y (pure vertical offset).
        bool is_vertical_stack() const;

    private:
        PanelConfig panel1_;
        PanelConfig panel2_;
        double delta_d_;
    };

    enum class FieldRegime
    {
        far,
        near
    };

    struct LosGeometry
    {
        double theta; // elevation, radians in [-pi/2, pi/2], negative below the reference
        double phi;   // azimuth, radians in [0, 2 pi)
        double range; // meters
    };

    Vec3 element_position(const PanelConfig &panel, std::size_t iy, std::size_t iz);

    // Largest element-to-element distance over both panels combined.
    double aperture(const TwoPanelLayout &layout);

    // 2 D^2 / min(lambda1, lambda2)
    double rayleigh_distance(double aperture_m, double lambda1, double lambda2);

    FieldRegime classify_field(double r, double r_rayl);

    // Rayleigh distance of one panel on its own, using the physical extent of
    // n half-wavelength cells per side as the aperture.
    double panel_rayleigh_distance(const PanelConfig &panel);

    // Exact angles and range from the panel's reference element to `point`.
    LosGeometry los_angles(const PanelConfig &panel, const Vec3 &point);

    // Inverse of los_angles: the point at (theta, phi, range) from the reference.
    Vec3 point_from_angles(const PanelConfig &panel, double theta, double phi, double range);

    // Maps any angle to [0, 2 pi).
    double wrap_azimuth(double phi);
}

#endif
