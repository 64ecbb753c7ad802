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

#include "twopanel/estimation.hpp"
#include "twopanel/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twopanel
{
    void ExtractionConfig::validate() const
    {
        if (max_paths < 1)
            throw std::invalid_argument("extraction.max_paths must be >= 1");
        if (!(coarse_grid_step > 0.0) || coarse_grid_step > 0.5 * pi)
            throw std::invalid_argument("extraction.coarse_grid_step must be in (0, pi/2]");
        if (!(refine_tolerance > 0.0) || !(refine_tolerance < coarse_grid_step))
            throw std::invalid_argument("extraction.refine_tolerance must be in (0, coarse_grid_step)");
        if (!(residual_stop > 0.0) || !(residual_stop < 1.0))
            throw std::invalid_argument("extraction.residual_stop must be in (0, 1)");
    }

    ChannelVector reconstruct(const PanelConfig &panel, std::span<const PathComponent> paths)
    {
        if (paths.empty())
            throw std::invalid_argument("reconstruct: path list is empty");
        return synth_far_channel(panel, paths);
    }

    namespace
    {
        constexpr double half_pi = 0.5 * pi;
        constexpr double golden = 0.6180339887498949;

        using Vec = Eigen::VectorXcd;

        // Azimuth is handled internally as a signed angle in [-pi/2, pi/2].
        struct Direction
        {
            double theta;
            double phi;
        };

        // sqrt(N) * a(theta, phi), i.e. the unit-gain column of the model.
        Vec atom(const PanelConfig &panel, Direction d)
        {
            const ChannelVector a = steering_vector(panel, d.theta, d.phi);
            const double scale = std::sqrt(static_cast<double>(panel.size()));
            Vec v(static_cast<Eigen::Index>(a.size()));
            for (std::size_t i = 0; i < a.size(); ++i)
                v(static_cast<Eigen::Index>(i)) = scale * a[i];
            return v;
        }

        // |a(theta, phi)^H r|^2 * N, evaluated separably: first along z, then y.
        class Scorer
        {
        public:
            explicit Scorer(const PanelConfig &panel)
                : ny_(panel.n_y()), nz_(panel.n_z()), partial_(panel.n_y()), pz_(panel.n_z()) {}

            // Collapses the z axis of r for a fixed elevation.
            void set_elevation(const Vec &r, double theta)
            {
                const double v = std::sin(theta);
                for (std::size_t iz = 0; iz < nz_; ++iz)
                    pz_[iz] = std::polar(1.0, -pi * static_cast<double>(iz) * v);
                for (std::size_t iy = 0; iy < ny_; ++iy)
                {
                    cplx acc{0.0, 0.0};
                    const cplx *row = r.data() + iy * nz_;
                    for (std::size_t iz = 0; iz < nz_; ++iz)
                        acc += pz_[iz] * row[iz];
                    partial_[iy] = acc;
                }
                cos_theta_ = std::cos(theta);
            }

            double azimuth_score(double phi) const
            {
                const cplx w = std::polar(1.0, -pi * cos_theta_ * std::sin(phi));
                cplx acc = partial_[ny_ - 1];
                for (std::size_t k = ny_ - 1; k-- > 0;)
                    acc = acc * w + partial_[k];
                return std::norm(acc);
            }

            double score(const Vec &r, Direction d)
            {
                set_elevation(r, d.theta);
                return azimuth_score(d.phi);
            }

        private:
            std::size_t ny_, nz_;
            std::vector<cplx> partial_;
            std::vector<cplx> pz_;
            double cos_theta_ = 1.0;
        };

        // Maximizes f on [lo, hi] by golden-section search until the bracket
        // is narrower than tol.
        template <class F>
        double golden_max(F &&f, double lo, double hi, double tol)
        {
            double a = lo, b = hi;
            double x1 = b - golden * (b - a);
            double x2 = a + golden * (b - a);
            double f1 = f(x1), f2 = f(x2);
            while (b - a > tol)
            {
                if (f1 < f2)
                {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + golden * (b - a);
                    f2 = f(x2);
                }
                else
                {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - golden * (b - a);
                    f1 = f(x1);
                }
            }
            return 0.5 * (a + b);
        }

        // Coordinate-wise refinement of a peak of the correlation with r. Never
        // returns a direction scoring below the starting point.
        Direction refine(Scorer &scorer, const Vec &r, Direction start, double half_width, double tol)
        {
            Direction d = start;
            double best = scorer.score(r, d);
            for (int iter = 0; iter < 100; ++iter)
            {
                const Direction before = d;

                const double t = golden_max([&](double theta) { return scorer.score(r, {theta, d.phi}); },
                                            std::max(-half_pi, d.theta - half_width),
                                            std::min(half_pi, d.theta + half_width), tol);
                const double st = scorer.score(r, {t, d.phi});
                if (st >= best)
                {
                    d.theta = t;
                    best = st;
                }

                scorer.set_elevation(r, d.theta);
                const double p = golden_max([&](double phi) { return scorer.azimuth_score(phi); },
                                            std::max(-half_pi, d.phi - half_width),
                                            std::min(half_pi, d.phi + half_width), tol);
                const double sp = scorer.azimuth_score(p);
                if (sp >= best)
                {
                    d.phi = p;
                    best = sp;
                }

                if (std::abs(d.theta - before.theta) < tol && std::abs(d.phi - before.phi) < tol)
                    break;
            }
            return d;
        }

        // Highest-scoring grid point; ties keep the lowest (theta, phi) index.
        Direction grid_peak(Scorer &scorer, const Vec &r, double step)
        {
            const auto n = static_cast<std::size_t>(std::ceil(pi / step - 1e-9));
            Direction best{-half_pi, -half_pi};
            double best_score = -1.0;
            for (std::size_t i = 0; i <= n; ++i)
            {
                const double theta = std::min(half_pi, -half_pi + static_cast<double>(i) * step);
                scorer.set_elevation(r, theta);
                for (std::size_t j = 0; j <= n; ++j)
                {
                    const double phi = std::min(half_pi, -half_pi + static_cast<double>(j) * step);
                    const double s = scorer.azimuth_score(phi);
                    if (s > best_score)
                    {
                        best_score = s;
                        best = {theta, phi};
                    }
                }
            }
            return best;
        }

        struct Fit
        {
            Eigen::MatrixXcd atoms;
            Vec gains;
            Vec residual;
            double energy = 0.0;
        };

        void solve_gains(Fit &fit, const Vec &h)
        {
            fit.gains = fit.atoms.colPivHouseholderQr().solve(h);
            fit.residual = h - fit.atoms * fit.gains;
            fit.energy = fit.residual.squaredNorm();
        }
    }

    Extraction extract_paths(const ChannelVector &h_in, const PanelConfig &panel, const ExtractionConfig &cfg)
    {
        cfg.validate();
        if (h_in.size() != panel.size())
            throw std::invalid_argument("extract_paths: channel length does not match the panel");

        const auto n = static_cast<Eigen::Index>(panel.size());
        Vec h(n);
        for (Eigen::Index i = 0; i < n; ++i)
            h(i) = h_in[static_cast<std::size_t>(i)];
        const double total = h.squaredNorm();
        if (!(total > 0.0) || !std::isfinite(total))
            throw std::invalid_argument("extract_paths: channel must be nonzero and finite");

        const double step = cfg.coarse_grid_step;
        const double tol = cfg.refine_tolerance;
        Scorer scorer(panel);

        std::vector<Direction> dirs;
        Fit fit;
        fit.residual = h;
        fit.energy = total;

        Extraction out;
        out.residual_history.push_back(1.0);

        while (true)
        {
            if (fit.energy < cfg.residual_stop * total)
            {
                out.stop = StopReason::residual_below_threshold;
                break;
            }
            if (dirs.size() >= cfg.max_paths)
            {
                out.stop = StopReason::max_paths_reached;
                break;
            }

            const double previous = fit.energy;
            Direction d = grid_peak(scorer, fit.residual, step);
            d = refine(scorer, fit.residual, d, step, tol);
            dirs.push_back(d);
            fit.atoms.conservativeResize(n, static_cast<Eigen::Index>(dirs.size()));
            fit.atoms.col(fit.atoms.cols() - 1) = atom(panel, d);
            solve_gains(fit, h);

            // Re-refine each path against the channel minus all other paths,
            // until no direction moves by more than the tolerance.
            if (dirs.size() > 1)
            {
                for (int sweep = 0; sweep < 50; ++sweep)
                {
                    double moved = 0.0;
                    for (std::size_t l = 0; l < dirs.size(); ++l)
                    {
                        const auto col = static_cast<Eigen::Index>(l);
                        const Vec partial = fit.residual + fit.gains(col) * fit.atoms.col(col);
                        const Direction nd = refine(scorer, partial, dirs[l], step, tol);
                        moved = std::max({moved, std::abs(nd.theta - dirs[l].theta), std::abs(nd.phi - dirs[l].phi)});
                        dirs[l] = nd;
                        const Vec a = atom(panel, nd);
                        const cplx g = a.dot(partial) / a.squaredNorm(); // dot() conjugates the left side
                        fit.atoms.col(col) = a;
                        fit.gains(col) = g;
                        fit.residual = partial - g * a;
                    }
                    solve_gains(fit, h);
                    if (moved < tol)
                        break;
                }
            }

            if (!(fit.energy < previous))
                throw ConvergenceError("extract_paths: residual stopped decreasing after " +
                                       std::to_string(dirs.size() - 1) + " paths (residual fraction " +
                                       std::to_string(previous / total) + ")");
            out.residual_history.push_back(fit.energy / total);
        }

        out.paths.reserve(dirs.size());
        for (std::size_t l = 0; l < dirs.size(); ++l)
            out.paths.push_back({fit.gains(static_cast<Eigen::Index>(l)), dirs[l].theta, wrap_azimuth(dirs[l].phi)});
        return out;
    }
}
