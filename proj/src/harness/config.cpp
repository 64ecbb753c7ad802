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

#include "twopanel/harness/config.hpp"
#include "twopanel/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace twopanel::harness
{
    using json = nlohmann::json;

    std::string_view to_string(TruthModel t)
    {
        return t == TruthModel::spherical ? "spherical" : "planar";
    }

    std::vector<Vec3> ScenarioConfig::resolve_ues() const
    {
        if (!ue_positions.empty())
            return ue_positions;
        std::vector<Vec3> out;
        const auto nx = static_cast<std::size_t>(std::floor((ue_grid.x_max - ue_grid.x_min) / ue_grid.spacing + 1e-9));
        const auto ny = static_cast<std::size_t>(std::floor((ue_grid.y_max - ue_grid.y_min) / ue_grid.spacing + 1e-9));
        for (std::size_t i = 0; i <= nx; ++i)
            for (std::size_t j = 0; j <= ny; ++j)
                out.push_back({ue_grid.x_min + static_cast<double>(i) * ue_grid.spacing,
                               ue_grid.y_min + static_cast<double>(j) * ue_grid.spacing, ue_grid.z});
        return out;
    }

    namespace
    {
        [[noreturn]] void schema_error(const std::string &field, const std::string &msg)
        {
            throw ConfigError(ConfigErrorKind::schema, field, "config: " + field + ": " + msg);
        }

        [[noreturn]] void range_error(const std::string &field, const std::string &msg)
        {
            throw ConfigError(ConfigErrorKind::range, field, "config: " + field + ": " + msg);
        }

        // A JSON object plus its dotted location, used to read typed fields
        // and to reject keys nobody asked for.
        class Node
        {
        public:
            Node(const json &j, std::string path) : j_(j), path_(std::move(path))
            {
                if (!j_.is_object())
                    schema_error(path_.empty() ? "<root>" : path_, "expected an object");
            }

            std::string field(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }
            bool has(const std::string &key) const { return j_.contains(key); }
            const json &raw(const std::string &key) const { return j_.at(key); }

            void only(std::initializer_list<const char *> keys) const
            {
                for (const auto &[k, v] : j_.items())
                {
                    bool known = false;
                    for (const char *allowed : keys)
                        known = known || k == allowed;
                    if (!known)
                        schema_error(field(k), "unknown key");
                }
            }

            std::optional<Node> child(const std::string &key) const
            {
                if (!has(key))
                    return std::nullopt;
                return Node(j_.at(key), field(key));
            }

            void number(const std::string &key, double &out) const
            {
                if (!has(key))
                    return;
                const json &v = j_.at(key);
                if (!v.is_number())
                    schema_error(field(key), "expected a number");
                out = v.get<double>();
                if (!std::isfinite(out))
                    range_error(field(key), "must be finite");
            }

            template <class U>
            void count(const std::string &key, U &out) const
            {
                if (!has(key))
                    return;
                const json &v = j_.at(key);
                if (v.is_number_integer() && v.get<std::int64_t>() < 0)
                    range_error(field(key), "must be non-negative");
                if (!v.is_number_unsigned())
                    schema_error(field(key), "expected a non-negative integer");
                out = static_cast<U>(v.get<std::uint64_t>());
            }

            void boolean(const std::string &key, bool &out) const
            {
                if (!has(key))
                    return;
                if (!j_.at(key).is_boolean())
                    schema_error(field(key), "expected true or false");
                out = j_.at(key).get<bool>();
            }

            std::optional<std::string> string(const std::string &key) const
            {
                if (!has(key))
                    return std::nullopt;
                if (!j_.at(key).is_string())
                    schema_error(field(key), "expected a string");
                return j_.at(key).get<std::string>();
            }

        private:
            const json &j_;
            std::string path_;
        };

        std::vector<double> number_array(const json &v, const std::string &field, std::size_t expected_size = 0)
        {
            if (!v.is_array())
                schema_error(field, "expected an array of numbers");
            if (expected_size != 0 && v.size() != expected_size)
                schema_error(field, "expected " + std::to_string(expected_size) + " numbers");
            std::vector<double> out;
            for (const json &e : v)
            {
                if (!e.is_number())
                    schema_error(field, "expected an array of numbers");
                out.push_back(e.get<double>());
                if (!std::isfinite(out.back()))
                    range_error(field, "must be finite");
            }
            return out;
        }

        Vec3 point(const json &v, const std::string &field)
        {
            const auto a = number_array(v, field, 3);
            return {a[0], a[1], a[2]};
        }

        cplx complex_value(const json &v, const std::string &field)
        {
            const auto a = number_array(v, field, 2);
            return {a[0], a[1]};
        }

        void positive(double v, const std::string &field)
        {
            if (!(v > 0.0))
                range_error(field, "must be > 0 (got " + std::to_string(v) + ")");
        }

        void read_layout(const Node &n, ScenarioConfig &c)
        {
            n.only({"f1_hz", "f2_hz", "n_y", "n_z", "d1", "d2"});
            n.number("f1_hz", c.f1_hz);
            n.number("f2_hz", c.f2_hz);
            n.count("n_y", c.n_y);
            n.count("n_z", c.n_z);
            n.number("d1", c.d1);
            n.number("d2", c.d2);
            positive(c.f1_hz, n.field("f1_hz"));
            positive(c.f2_hz, n.field("f2_hz"));
            if (c.n_y < 1)
                range_error(n.field("n_y"), "must be >= 1");
            if (c.n_z < 1)
                range_error(n.field("n_z"), "must be >= 1");
            positive(c.d1, n.field("d1"));
            positive(c.d2, n.field("d2"));
        }

        void read_ue(const Node &n, ScenarioConfig &c)
        {
            n.only({"positions", "grid"});
            if (n.has("positions"))
            {
                const json &arr = n.raw("positions");
                if (!arr.is_array())
                    schema_error(n.field("positions"), "expected an array of [x, y, z]");
                for (std::size_t i = 0; i < arr.size(); ++i)
                    c.ue_positions.push_back(point(arr[i], n.field("positions") + "[" + std::to_string(i) + "]"));
            }
            if (auto g = n.child("grid"))
            {
                g->only({"x_min", "x_max", "y_min", "y_max", "spacing", "z"});
                UeGrid &u = c.ue_grid;
                g->number("x_min", u.x_min);
                g->number("x_max", u.x_max);
                g->number("y_min", u.y_min);
                g->number("y_max", u.y_max);
                g->number("spacing", u.spacing);
                g->number("z", u.z);
                positive(u.spacing, g->field("spacing"));
                if (u.x_max < u.x_min)
                    range_error(g->field("x_max"), "must be >= x_min");
                if (u.y_max < u.y_min)
                    range_error(g->field("y_max"), "must be >= y_min");
            }
        }

        void read_scatterers(const Node &n, ScenarioConfig &c)
        {
            n.only({"positions", "generator", "include_los"});
            n.boolean("include_los", c.include_los);
            if (n.has("positions"))
            {
                const json &arr = n.raw("positions");
                if (!arr.is_array())
                    schema_error(n.field("positions"), "expected an array of scatterer objects");
                for (std::size_t i = 0; i < arr.size(); ++i)
                {
                    const Node s(arr[i], n.field("positions") + "[" + std::to_string(i) + "]");
                    s.only({"position", "reflectivity1", "reflectivity2"});
                    if (!s.has("position"))
                        schema_error(s.field("position"), "required");
                    Scatterer sc;
                    sc.position = point(s.raw("position"), s.field("position"));
                    if (s.has("reflectivity1"))
                        sc.reflectivity1 = complex_value(s.raw("reflectivity1"), s.field("reflectivity1"));
                    if (s.has("reflectivity2"))
                        sc.reflectivity2 = complex_value(s.raw("reflectivity2"), s.field("reflectivity2"));
                    c.scatterers.push_back(sc);
                }
            }
            if (auto g = n.child("generator"))
            {
                g->only({"count", "x_min", "x_max", "y_min", "y_max", "z_min", "z_max"});
                ScattererGenerator &s = c.scatterer_generator;
                g->count("count", s.count);
                g->number("x_min", s.x_min);
                g->number("x_max", s.x_max);
                g->number("y_min", s.y_min);
                g->number("y_max", s.y_max);
                g->number("z_min", s.z_min);
                g->number("z_max", s.z_max);
                if (!(s.x_min > 0.0))
                    range_error(g->field("x_min"), "scatterers must lie in front of the panels (x > 0)");
                if (s.x_max < s.x_min)
                    range_error(g->field("x_max"), "must be >= x_min");
                if (s.y_max < s.y_min)
                    range_error(g->field("y_max"), "must be >= y_min");
                if (s.z_max < s.z_min)
                    range_error(g->field("z_max"), "must be >= z_min");
            }
        }

        void read_extraction(const Node &n, ScenarioConfig &c)
        {
            n.only({"enabled", "max_paths", "coarse_grid_deg", "refine_tolerance_rad", "residual_stop"});
            n.boolean("enabled", c.use_extraction);
            n.count("max_paths", c.extraction.max_paths);
            double grid_deg = c.extraction.coarse_grid_step * 180.0 / pi;
            n.number("coarse_grid_deg", grid_deg);
            c.extraction.coarse_grid_step = grid_deg * pi / 180.0;
            n.number("refine_tolerance_rad", c.extraction.refine_tolerance);
            n.number("residual_stop", c.extraction.residual_stop);
            try
            {
                c.extraction.validate();
            }
            catch (const std::invalid_argument &e)
            {
                range_error(n.field("*"), e.what());
            }
        }

        void read_sweep(const Node &n, ScenarioConfig &c)
        {
            n.only({"d2_values", "dx_start", "dx_stop", "dx_step", "y", "z"});
            FreeSpaceSweep &s = c.sweep;
            if (n.has("d2_values"))
            {
                s.d2_values = number_array(n.raw("d2_values"), n.field("d2_values"));
                if (s.d2_values.empty())
                    range_error(n.field("d2_values"), "must not be empty");
                for (double d : s.d2_values)
                    positive(d, n.field("d2_values"));
            }
            n.number("dx_start", s.dx_start);
            n.number("dx_stop", s.dx_stop);
            n.number("dx_step", s.dx_step);
            n.number("y", s.y);
            n.number("z", s.z);
            positive(s.dx_start, n.field("dx_start"));
            positive(s.dx_step, n.field("dx_step"));
            if (s.dx_stop < s.dx_start)
                range_error(n.field("dx_stop"), "must be >= dx_start");
        }
    }

    ScenarioConfig parse_config(const std::string &text, const std::filesystem::path &base_dir)
    {
        json doc;
        try
        {
            doc = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(ConfigErrorKind::parse, "", std::string("config: parse error: ") + e.what());
        }

        ScenarioConfig c;
        const Node root(doc, "");
        root.only({"layout", "scenario", "ue", "scatterers", "delta_m", "match_epsilon_m", "far_error_threshold_deg",
                   "extraction", "gain_mode", "truth", "seed", "workers", "mpc_csv", "output", "sweep"});

        if (auto n = root.child("layout"))
            read_layout(*n, c);
        else
            read_layout(Node(json::object(), "layout"), c);

        if (auto s = root.string("scenario"))
        {
            const auto tag = scenario_from_string(*s);
            if (!tag)
                schema_error("scenario", "unknown scenario tag \"" + *s +
                                             "\" (expected far-free, near-free, multipath-far or multipath-near)");
            c.scenario = *tag;
        }
        if (auto n = root.child("ue"))
            read_ue(*n, c);
        if (auto n = root.child("scatterers"))
            read_scatterers(*n, c);

        root.number("delta_m", c.delta);
        if (!(c.delta >= 0.0))
            range_error("delta_m", "must be >= 0");
        root.number("match_epsilon_m", c.match_epsilon);
        positive(c.match_epsilon, "match_epsilon_m");
        root.number("far_error_threshold_deg", c.far_error_threshold_deg);
        positive(c.far_error_threshold_deg, "far_error_threshold_deg");

        if (auto n = root.child("extraction"))
            read_extraction(*n, c);

        if (auto s = root.string("gain_mode"))
        {
            const auto m = gain_mode_from_string(*s);
            if (!m)
                schema_error("gain_mode", "unknown gain mode \"" + *s + "\" (expected literal-eq7 or amplitude-assisted)");
            c.gain_mode = *m;
        }
        if (auto s = root.string("truth"))
        {
            if (*s == "spherical")
                c.truth = TruthModel::spherical;
            else if (*s == "planar")
                c.truth = TruthModel::planar;
            else
                schema_error("truth", "unknown truth model \"" + *s + "\" (expected spherical or planar)");
        }

        root.count("seed", c.seed);
        root.count("workers", c.workers);
        if (c.workers < 1)
            range_error("workers", "must be >= 1");

        if (auto s = root.string("mpc_csv"))
        {
            std::filesystem::path p(*s);
            c.mpc_csv = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
        }
        if (auto n = root.child("output"))
        {
            n->only({"dir"});
            if (auto d = n->string("dir"))
                c.out_dir = *d;
        }
        if (auto n = root.child("sweep"))
            read_sweep(*n, c);

        if (c.scenario == Scenario::multipath_near)
        {
            if (!(c.d2 > c.d1))
                range_error("layout.d2", "multipath-near needs d2 > d1");
            if (!(c.delta < c.d2 - c.d1))
                range_error("delta_m", "multipath-near needs delta < d2 - d1");
        }
        return c;
    }

    ScenarioConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError(ConfigErrorKind::parse, "", "config: cannot read " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str(), path.parent_path());
    }
}
