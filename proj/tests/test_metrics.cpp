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

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

#include "twopanel/metrics.hpp"

#include <random>

using namespace twopanel;
using Catch::Approx;

namespace
{
    ChannelVector random_vector(std::mt19937_64 &rng, std::size_t n)
    {
        std::normal_distribution<double> g;
        ChannelVector h(n);
        for (std::size_t i = 0; i < n; ++i)
            h[i] = cplx(g(rng), g(rng));
        return h;
    }
}

TEST_CASE("correlation", "[metrics]")
{
    std::mt19937_64 rng(1);
    const ChannelVector h = random_vector(rng, 64);
    CHECK(correlation(h, h) == Approx(1.0).epsilon(1e-14));

    ChannelVector scaled = h;
    scaled *= cplx(-3.0, 0.25);
    CHECK(correlation(h, scaled) == Approx(1.0).epsilon(1e-14));

    // 16-element vertical line: sin(theta) = 0 and sin(theta) = 2/16 are orthogonal
    const PanelConfig line(28e9, 1, 16, {0, 0, 15});
    const ChannelVector a0 = steering_vector(line, 0.0, 0.0);
    const ChannelVector a1 = steering_vector(line, std::asin(2.0 / 16.0), 0.0);
    CHECK(correlation(a0, a1) < 1e-28);

    CHECK_THROWS_AS(correlation(h, ChannelVector(63)), std::invalid_argument);
    CHECK_THROWS_AS(correlation(h, ChannelVector(64)), std::invalid_argument);
}

TEST_CASE("correlation properties", "[metrics][property]")
{
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int i = 0; i < 1000; ++i)
    {
        const std::size_t n = 1 + rng() % 40;
        const ChannelVector a = random_vector(rng, n), b = random_vector(rng, n);
        const double f = correlation(a, b);
        REQUIRE(f >= 0.0);
        REQUIRE(f <= 1.0);
        REQUIRE(f == Approx(correlation(b, a)).epsilon(1e-12));
        REQUIRE(f == Approx(oracle::correlation({a.begin(), a.end()}, {b.begin(), b.end()})).epsilon(1e-10));

        ChannelVector as = a;
        as *= cplx(g(rng), g(rng));
        REQUIRE(correlation(as, b) == Approx(f).epsilon(1e-10).margin(1e-14));
    }
}

TEST_CASE("elevation_error_curve", "[metrics]")
{
    const std::vector<double> dx{0.5, 3.0, 17.0, 100.0, 1e4};
    for (double e : elevation_error_curve(15.0, 15.0, dx))
        CHECK(e == 0.0);

    const std::vector<double> at_peak{std::sqrt(300.0)};
    const double peak = elevation_error_curve(15.0, 20.0, at_peak)[0];
    CHECK(peak == Approx(0.14335).margin(5e-6));
    CHECK(peak / (pi / 180.0) == Approx(8.213).margin(5e-4));

    // dense grid agrees with the closed-form argmax and with direct geometry
    std::vector<double> grid;
    for (double x = 0.001; x < 200.0; x += 0.001)
        grid.push_back(x);
    const auto curve = elevation_error_curve(15.0, 20.0, grid);
    const auto it = std::max_element(curve.begin(), curve.end());
    CHECK(grid[std::size_t(it - curve.begin())] == Approx(std::sqrt(300.0)).margin(1e-3));
    CHECK(*it == Approx(peak).margin(1e-9));
    for (std::size_t i = 0; i < grid.size(); i += 997)
        CHECK(curve[i] == Approx(oracle::elevation_gap(15.0, 20.0, grid[i])).margin(1e-14));

    const std::vector<double> far{1e6};
    CHECK(elevation_error_curve(15.0, 20.0, far)[0] < 1e-5);

    const std::vector<double> bad{0.0};
    CHECK_THROWS_AS(elevation_error_curve(15.0, 20.0, bad), std::invalid_argument);
    CHECK_THROWS_AS(elevation_error_curve(20.0, 15.0, dx), std::invalid_argument);
}

TEST_CASE("elevation error is unimodal around sqrt(d1 d2)", "[metrics][property]")
{
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> h(2.0, 40.0), gap(0.1, 10.0);
    for (int trial = 0; trial < 10; ++trial)
    {
        const double d1 = h(rng), d2 = d1 + gap(rng);
        const double peak = std::sqrt(d1 * d2);
        std::vector<double> grid;
        for (double x = 0.01 * peak; x < 20.0 * peak; x += 0.01 * peak)
            grid.push_back(x);
        const auto c = elevation_error_curve(d1, d2, grid);
        for (std::size_t i = 1; i < grid.size(); ++i)
        {
            if (grid[i] <= peak)
                REQUIRE(c[i] > c[i - 1]);
            else if (grid[i - 1] >= peak)
                REQUIRE(c[i] < c[i - 1]);
        }
    }
}

TEST_CASE("containment_rate", "[metrics]")
{
    const std::vector<AngleRange> r{{-pi / 2, -0.5}, {-pi / 2, -0.2}, {-pi / 2, -1.0}};
    CHECK(containment_rate(r, std::vector<double>{-0.6, -0.3, -1.2}) == 1.0);
    CHECK(containment_rate(r, std::vector<double>{-0.5, -0.2, -1.0}) == 1.0); // upper is inclusive
    CHECK(containment_rate(r, std::vector<double>{-0.4, -0.3, -pi / 2}) == Approx(1.0 / 3.0));
    CHECK_THROWS_AS(containment_rate(r, std::vector<double>{-0.6}), std::invalid_argument);
    CHECK_THROWS_AS(containment_rate(std::vector<AngleRange>{}, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("mean_abs_error_deg", "[metrics]")
{
    CHECK(mean_abs_error_deg(std::vector<double>{pi / 180.0, -3.0 * pi / 180.0}) == Approx(2.0));
    CHECK(std::isnan(mean_abs_error_deg(std::vector<double>{})));
}

TEST_CASE("summarize", "[metrics]")
{
    std::vector<UeRecord> recs(4);
    recs[0].correlation = 0.9;
    recs[1].correlation = 0.5;
    recs[2].status = "extraction failed";
    recs[0].elevation_error = 0.01;
    recs[0].max_elevation_error = 0.02;
    recs[0].n_paths = 1;
    recs[3].elevation_error = 0.04;
    recs[3].max_elevation_error = 0.1;
    recs[3].containment = 0.5;
    recs[3].n_paths = 3;

    const Aggregates a = summarize(recs);
    CHECK(a.n_records == 4);
    CHECK(a.n_failed == 1);
    CHECK(a.correlation_mean == Approx(0.7));
    CHECK(a.correlation_min == 0.5);
    CHECK(a.correlation_max == 0.9);
    CHECK(a.elevation_error_mean_deg == Approx((0.01 + 3 * 0.04) / 4.0 * 180.0 / pi));
    CHECK(a.elevation_error_max_deg == Approx(0.1 * 180.0 / pi));
    CHECK(a.containment_mean == 0.5);

    const Aggregates empty = summarize({});
    CHECK(empty.n_records == 0);
    CHECK(std::isnan(empty.correlation_mean));
}
