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

#include "twopanel/harness/runner.hpp"
#include "twopanel/errors.hpp"
#include "twopanel/estimation.hpp"
#include "twopanel/harness/matching.hpp"
#include "twopanel/inference.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <thread>

namespace twopanel::harness
{
    ChannelVector free_space_channel(const PanelConfig &panel, const Vec3 &source, TruthModel truth)
    {
        if (truth == TruthModel::spherical)
            return synth_spherical_channel(panel, source);
        const auto los = los_angles(panel, source);
        const PathComponent p{friis_gain(panel.wavelength(), los.range), los.theta, los.phi};
        return synth_far_channel(panel, std::span(&p, 1));
    }

    PathComponent observe_los_path(const ScenarioConfig &cfg, const PanelConfig &panel1, const Vec3 &ue)
    {
        if (!cfg.use_extraction)
        {
            const auto los = los_angles(panel1, ue);
            return {friis_gain(panel1.wavelength(), los.range), los.theta, los.phi};
        }
        // one path by construction; more would only chase the wavefront curvature
        auto ex_cfg = cfg.extraction;
        ex_cfg.max_paths = 1;
        return extract_paths(free_space_channel(panel1, ue, cfg.truth), panel1, ex_cfg).paths.front();
    }

    namespace
    {
        InferenceResult infer_free(const ScenarioConfig &cfg, const TwoPanelLayout &layout, const PathComponent &p1,
                                   double ue_z, Scenario scenario)
        {
            const auto &a = layout.panel1();
            const auto &b = layout.panel2();
            if (scenario == Scenario::near_free)
                return infer_near_free(p1, a.height() - ue_z, b.height() - ue_z, b.wavelength());
            return infer_far_free(p1, a.wavelength(), b.wavelength(), layout.delta_d(), cfg.gain_mode);
        }

        double score(const PanelConfig &panel2, const PathComponent &inferred, const ChannelVector &h2)
        {
            return correlation(reconstruct(panel2, std::span(&inferred, 1)), h2);
        }

        void fail_record(UeRecord &r, const std::exception &e)
        {
            r.correlation = r.elevation_error = r.max_elevation_error = r.containment = nan;
            r.n_paths = 0;
            r.status = e.what();
            if (r.status.empty())
                r.status = "failed";
        }

        std::uint64_t splitmix(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ULL;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
            return x ^ (x >> 31);
        }

        double uniform(std::mt19937_64 &rng, double lo, double hi)
        {
            return lo + (hi - lo) * unit_interval(rng());
        }

        Vec3 position_or_nan(const std::vector<MpcRow> &a, const std::vector<MpcRow> &b)
        {
            for (const auto *rows : {&a, &b})
                for (const auto &r : *rows)
                    if (r.ue_position)
                        return *r.ue_position;
            return {nan, nan, nan};
        }

        std::vector<PathComponent> components(const std::vector<MpcRow> &rows)
        {
            std::vector<PathComponent> out;
            for (const auto &r : rows)
                out.push_back(r.component());
            return out;
        }

        UeRecord free_space_from_rows(const ScenarioConfig &cfg, const TwoPanelLayout &layout, std::int64_t ue_id,
                                      const std::vector<MpcRow> &rows1, const std::vector<MpcRow> &rows2)
        {
            UeRecord r;
            r.ue_id = ue_id;
            r.scenario = cfg.scenario;
            r.position = position_or_nan(rows1, rows2);
            try
            {
                const auto los1 = std::find_if(rows1.begin(), rows1.end(), [](const MpcRow &m) { return m.is_los(); });
                const auto los2 = std::find_if(rows2.begin(), rows2.end(), [](const MpcRow &m) { return m.is_los(); });
                if (los1 == rows1.end() || los2 == rows2.end())
                    throw std::invalid_argument("no LoS path on both panels");
                const double z = std::isnan(r.position.z) ? 0.0 : r.position.z;
                const auto inf = infer_free(cfg, layout, los1->component(), z, cfg.scenario).free_space().path;
                const auto comps2 = components(rows2);
                r.correlation = score(layout.panel2(), inf, synth_far_channel(layout.panel2(), comps2));
                r.elevation_error = r.max_elevation_error = std::abs(inf.theta - los2->elev);
                r.n_paths = 1;
            }
            catch (const std::exception &e)
            {
                fail_record(r, e);
            }
            return r;
        }

        UeRecord multipath_from_rows(const ScenarioConfig &cfg, const TwoPanelLayout &layout, std::int64_t ue_id,
                                     const std::vector<MpcRow> &rows1, const std::vector<MpcRow> &rows2,
                                     const std::vector<PathPair> &pairs)
        {
            UeRecord r;
            r.ue_id = ue_id;
            r.scenario = cfg.scenario;
            r.position = position_or_nan(rows1, rows2);
            try
            {
                if (pairs.empty())
                    throw std::invalid_argument("no shared paths");
                std::vector<PathComponent> shared1;
                for (const auto &p : pairs)
                    shared1.push_back(p.path1.component());

                if (cfg.scenario == Scenario::multipath_far)
                {
                    const auto inf = infer_multipath_far(shared1).angles();
                    std::vector<PathComponent> est;
                    double sum = 0.0, worst = 0.0;
                    std::size_t within = 0;
                    const double threshold = cfg.far_error_threshold_deg * pi / 180.0;
                    for (std::size_t i = 0; i < pairs.size(); ++i)
                    {
                        est.push_back({pairs[i].path2.gain, inf[i].theta, inf[i].phi});
                        const double err = std::abs(inf[i].theta - pairs[i].path2.elev);
                        sum += err;
                        worst = std::max(worst, err);
                        within += err <= threshold;
                    }
                    const auto n = static_cast<double>(pairs.size());
                    r.correlation = correlation(synth_far_channel(layout.panel2(), est),
                                                synth_far_channel(layout.panel2(), components(rows2)));
                    r.elevation_error = sum / n;
                    r.max_elevation_error = worst;
                    r.containment = static_cast<double>(within) / n;
                }
                else
                {
                    const double z = std::isnan(r.position.z) ? 0.0 : r.position.z;
                    const auto inf = infer_multipath_near(shared1, layout.panel1().height() - z,
                                                          layout.panel2().height() - z, cfg.delta)
                                         .ranges();
                    std::size_t inside = 0;
                    for (std::size_t i = 0; i < pairs.size(); ++i)
                        inside += inf[i].theta.contains(pairs[i].path2.elev);
                    r.containment = static_cast<double>(inside) / static_cast<double>(pairs.size());
                }
                r.n_paths = static_cast<std::int64_t>(pairs.size());
            }
            catch (const std::exception &e)
            {
                fail_record(r, e);
            }
            return r;
        }
    }

    UeRecord run_free_space_ue(const ScenarioConfig &cfg, std::int64_t ue_id, const Vec3 &ue)
    {
        UeRecord r;
        r.ue_id = ue_id;
        r.position = ue;
        r.scenario = cfg.scenario;
        try
        {
            if (cfg.scenario != Scenario::far_free && cfg.scenario != Scenario::near_free)
                throw std::invalid_argument("run_free_space_ue: scenario is not free space");
            const auto layout = cfg.layout();
            const auto p1 = observe_los_path(cfg, layout.panel1(), ue);
            const auto inf = infer_free(cfg, layout, p1, ue.z, cfg.scenario).free_space().path;
            const auto &panel2 = layout.panel2();
            r.correlation = score(panel2, inf, free_space_channel(panel2, ue, cfg.truth));
            r.elevation_error = r.max_elevation_error = std::abs(inf.theta - los_angles(panel2, ue).theta);
            r.n_paths = 1;
        }
        catch (const std::exception &e)
        {
            fail_record(r, e);
        }
        return r;
    }

    std::vector<Scatterer> resolve_scatterers(const ScenarioConfig &cfg)
    {
        if (!cfg.scatterers.empty())
            return cfg.scatterers;
        const auto &g = cfg.scatterer_generator;
        std::mt19937_64 rng(splitmix(cfg.seed));
        std::vector<Scatterer> out;
        for (std::size_t i = 0; i < g.count; ++i)
        {
            Scatterer s;
            s.position.x = uniform(rng, g.x_min, g.x_max);
            s.position.y = uniform(rng, g.y_min, g.y_max);
            s.position.z = uniform(rng, g.z_min, g.z_max);
            const double mag = uniform(rng, 0.5, 1.0);
            const double phase = uniform(rng, -pi, pi);
            s.reflectivity1 = s.reflectivity2 = std::polar(mag, phase);
            out.push_back(s);
        }
        return out;
    }

    std::uint64_t ue_seed(std::uint64_t seed, std::size_t index)
    {
        return splitmix(seed ^ splitmix(static_cast<std::uint64_t>(index) + 1));
    }

    MpcDataset synth_dataset(const ScenarioConfig &cfg)
    {
        const auto layout = cfg.layout();
        const auto ues = cfg.resolve_ues();
        const auto scatterers = resolve_scatterers(cfg);
        std::vector<std::vector<MpcRow>> per_ue(ues.size());

        parallel_for(ues.size(), cfg.workers, [&](std::size_t i) {
            const auto scene = synth_multipath_scene(layout, ues[i], scatterers, cfg.delta, ue_seed(cfg.seed, i),
                                                     SceneOptions{cfg.include_los});
            auto &rows = per_ue[i];
            for (int panel = 1; panel <= 2; ++panel)
            {
                const auto &paths = panel == 1 ? scene.paths1 : scene.paths2;
                for (std::size_t k = 0; k < paths.size(); ++k)
                {
                    MpcRow m;
                    m.ue_id = static_cast<std::int64_t>(i);
                    m.panel_id = panel;
                    m.path_id = static_cast<std::int64_t>(k);
                    m.gain = paths[k].gain;
                    m.elev = paths[k].theta;
                    m.azim = paths[k].phi;
                    m.point = panel == 1 ? scene.truth[k].point1 : scene.truth[k].point2;
                    m.ue_position = ues[i];
                    rows.push_back(m);
                }
            }
        });

        MpcDataset ds;
        for (auto &rows : per_ue)
            ds.rows.insert(ds.rows.end(), rows.begin(), rows.end());
        return ds;
    }

    ScenarioReport run_dataset(const ScenarioConfig &cfg, const MpcDataset &ds)
    {
        const auto layout = cfg.layout();
        const auto ids = ds.ue_ids();
        const bool free = cfg.scenario == Scenario::far_free || cfg.scenario == Scenario::near_free;

        std::map<std::int64_t, std::vector<PathPair>> pairs;
        if (!free)
            for (auto &p : match_shared_scatterers(ds, cfg.match_epsilon).pairs)
                pairs[p.ue_id].push_back(std::move(p));

        ScenarioReport report;
        report.records.resize(ids.size());
        parallel_for(ids.size(), cfg.workers, [&](std::size_t i) {
            const auto rows1 = ds.select(ids[i], 1);
            const auto rows2 = ds.select(ids[i], 2);
            if (free)
                report.records[i] = free_space_from_rows(cfg, layout, ids[i], rows1, rows2);
            else
            {
                const auto it = pairs.find(ids[i]);
                static const std::vector<PathPair> none;
                report.records[i] =
                    multipath_from_rows(cfg, layout, ids[i], rows1, rows2, it == pairs.end() ? none : it->second);
            }
        });
        report.aggregates = summarize(report.records);
        return report;
    }

    ScenarioReport run_scenario(const ScenarioConfig &cfg)
    {
        if (cfg.mpc_csv)
        {
            if (!std::filesystem::exists(*cfg.mpc_csv))
                throw ConfigError(ConfigErrorKind::range, "mpc_csv", "config: mpc_csv: file not found: " +
                                                                         cfg.mpc_csv->string());
            return run_dataset(cfg, ingest_mpc_csv(*cfg.mpc_csv));
        }
        if (cfg.scenario == Scenario::multipath_far || cfg.scenario == Scenario::multipath_near)
            return run_dataset(cfg, synth_dataset(cfg));

        const auto ues = cfg.resolve_ues();
        ScenarioReport report;
        report.records.resize(ues.size());
        parallel_for(ues.size(), cfg.workers, [&](std::size_t i) {
            report.records[i] = run_free_space_ue(cfg, static_cast<std::int64_t>(i), ues[i]);
        });
        report.aggregates = summarize(report.records);
        return report;
    }

    std::vector<double> sweep_dx_values(const FreeSpaceSweep &s)
    {
        const auto n = static_cast<std::size_t>(std::floor((s.dx_stop - s.dx_start) / s.dx_step + 1e-9)) + 1;
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = s.dx_start + static_cast<double>(i) * s.dx_step;
        return out;
    }

    std::vector<SweepCurve> run_sweep(const ScenarioConfig &cfg)
    {
        const auto dx = sweep_dx_values(cfg.sweep);
        std::vector<SweepCurve> curves;
        for (double d2 : cfg.sweep.d2_values)
        {
            auto c = cfg;
            c.d2 = d2;
            const auto layout = c.layout();
            SweepCurve curve{d2, std::vector<SweepPoint>(dx.size())};
            parallel_for(dx.size(), cfg.workers, [&](std::size_t i) {
                const Vec3 ue{dx[i], cfg.sweep.y, cfg.sweep.z};
                auto &pt = curve.points[i];
                pt.dx = dx[i];
                try
                {
                    const auto p1 = observe_los_path(c, layout.panel1(), ue);
                    const auto h2 = free_space_channel(layout.panel2(), ue, c.truth);
                    const auto near = infer_free(c, layout, p1, ue.z, Scenario::near_free).free_space().path;
                    const auto far = infer_free(c, layout, p1, ue.z, Scenario::far_free).free_space().path;
                    pt.f_near = score(layout.panel2(), near, h2);
                    pt.f_far = score(layout.panel2(), far, h2);
                }
                catch (const std::exception &)
                {
                    // point left as NaN
                }
            });
            curves.push_back(std::move(curve));
        }
        return curves;
    }

    void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &fn)
    {
        const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
        if (w <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::exception_ptr first;
        std::mutex m;
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < w; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < n; i += w)
                {
                    try
                    {
                        fn(i);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(m);
                        if (!first)
                            first = std::current_exception();
                        return;
                    }
                }
            });
        for (auto &th : pool)
            th.join();
        if (first)
            std::rethrow_exception(first);
    }
}
