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

// Independent reference computations used by the unit and acceptance tests.
// Everything here is written from the formulas directly and shares no code
// path with the library beyond the plain value types.

#ifndef TWOPANEL_TESTS_ORACLES_HPP
#define TWOPANEL_TESTS_ORACLES_HPP

#include "twopanel/channel.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle
{
    using cplx = std::complex<double>;
    constexpr double pi = 3.14159265358979323846;
    constexpr double c0 = 299792458.0;

    // Every element of a panel, enumerated by brute force.
    inline std::vector<twopanel::Vec3> all_elements(const twopanel::PanelConfig &p)
    {
        const double s = c0 / p.frequency_hz() / 2.0;
        std::vector<twopanel::Vec3> out;
        for (std::size_t iy = 0; iy < p.n_y(); ++iy)
            for (std::size_t iz = 0; iz < p.n_z(); ++iz)
                out.push_back({p.reference_position().x, p.reference_position().y + s * double(iy),
                               p.reference_position().z + s * double(iz)});
        return out;
    }

    // Exhaustive pairwise maximum distance over both panels.
    inline double aperture(const twopanel::TwoPanelLayout &layout)
    {
        auto pts = all_elements(layout.panel1());
        const auto p2 = all_elements(layout.panel2());
        pts.insert(pts.end(), p2.begin(), p2.end());
        double best = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
            {
                const double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y, dz = pts[i].z - pts[j].z;
                best = std::max(best, std::sqrt(dx * dx + dy * dy + dz * dz));
            }
        return best;
    }

    // Per-entry steering vector, one exp() per entry.
    inline std::vector<cplx> steering(std::size_t ny, std::size_t nz, double theta, double phi)
    {
        std::vector<cplx> a(ny * nz);
        const double norm = 1.0 / std::sqrt(double(ny * nz));
        for (std::size_t iy = 0; iy < ny; ++iy)
            for (std::size_t iz = 0; iz < nz; ++iz)
                a[iy * nz + iz] = norm * std::exp(cplx(0.0, pi * (double(iy) * std::cos(theta) * std::sin(phi) +
                                                                  double(iz) * std::sin(theta))));
        return a;
    }

    inline std::vector<cplx> steering_y(std::size_t ny, double theta, double phi)
    {
        std::vector<cplx> a(ny);
        for (std::size_t k = 0; k < ny; ++k)
            a[k] = std::exp(cplx(0.0, pi * double(k) * std::cos(theta) * std::sin(phi))) / std::sqrt(double(ny));
        return a;
    }

    inline std::vector<cplx> steering_z(std::size_t nz, double theta)
    {
        std::vector<cplx> a(nz);
        for (std::size_t k = 0; k < nz; ++k)
            a[k] = std::exp(cplx(0.0, pi * double(k) * std::sin(theta))) / std::sqrt(double(nz));
        return a;
    }

    inline std::vector<cplx> kron(const std::vector<cplx> &a, const std::vector<cplx> &b)
    {
        std::vector<cplx> out;
        for (const cplx &x : a)
            for (const cplx &y : b)
                out.push_back(x * y);
        return out;
    }

    // sqrt(N) * sum of gain * per-entry steering vectors.
    inline std::vector<cplx> far_channel(std::size_t ny, std::size_t nz, const std::vector<twopanel::PathComponent> &paths)
    {
        std::vector<cplx> h(ny * nz, cplx(0.0, 0.0));
        for (const auto &p : paths)
        {
            const auto a = steering(ny, nz, p.theta, p.phi);
            for (std::size_t i = 0; i < h.size(); ++i)
                h[i] += std::sqrt(double(ny * nz)) * p.gain * a[i];
        }
        return h;
    }

    inline cplx friis(double lambda, double r)
    {
        return lambda / (4.0 * pi * r) * std::exp(cplx(0.0, -2.0 * pi * r / lambda));
    }

    inline double correlation(const std::vector<cplx> &a, const std::vector<cplx> &b)
    {
        cplx inner = 0.0;
        double na = 0.0, nb = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            inner += std::conj(a[i]) * b[i];
            na += std::norm(a[i]);
            nb += std::norm(b[i]);
        }
        return std::norm(inner) / (na * nb);
    }

    // Eq.-12-style elevation error by direct geometry: angle difference of two
    // rays from heights d1 and d2 down to a ground point at distance dx.
    inline double elevation_gap(double d1, double d2, double dx)
    {
        return std::atan2(d2, dx) - std::atan2(d1, dx);
    }

    inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
}

#endif
