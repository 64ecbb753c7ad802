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

#include "twopanel/harness/dataset.hpp"
#include "twopanel/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace twopanel::harness
{
    std::vector<std::int64_t> MpcDataset::ue_ids() const
    {
        std::vector<std::int64_t> out;
        std::set<std::int64_t> seen;
        for (const auto &r : rows)
            if (seen.insert(r.ue_id).second)
                out.push_back(r.ue_id);
        return out;
    }

    std::vector<MpcRow> MpcDataset::select(std::int64_t ue_id, int panel_id) const
    {
        std::vector<MpcRow> out;
        for (const auto &r : rows)
            if (r.ue_id == ue_id && r.panel_id == panel_id)
                out.push_back(r);
        return out;
    }

    std::string format_double(double v)
    {
        if (std::isnan(v))
            return "nan";
        std::array<char, 64> buf{};
        auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
        return std::string(buf.data(), res.ptr);
    }

    std::optional<double> parse_double(std::string_view s)
    {
        if (s.empty())
            return std::nullopt;
        if (s.front() == '+')
            s.remove_prefix(1);
        double v = 0.0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            return std::nullopt;
        return v;
    }

    std::vector<std::string> split_csv_line(std::string_view line)
    {
        std::vector<std::string> out(1);
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i)
        {
            const char c = line[i];
            if (quoted)
            {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
                    out.back() += '"', ++i;
                else if (c == '"')
                    quoted = false;
                else
                    out.back() += c;
            }
            else if (c == '"')
                quoted = true;
            else if (c == ',')
                out.emplace_back();
            else
                out.back() += c;
        }
        return out;
    }

    std::string read_text_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot read " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write_text_file(const std::filesystem::path &path, std::string_view text)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.close();
        if (!out)
            throw std::runtime_error("write failed for " + path.string());
    }

    namespace
    {
        std::string_view trim(std::string_view s)
        {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
                s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
                s.remove_suffix(1);
            return s;
        }

        [[noreturn]] void fail(std::size_t line, const std::string &msg)
        {
            throw DataError(line, "line " + std::to_string(line) + ": " + msg);
        }

        std::int64_t parse_int(std::string_view s, std::size_t line, std::string_view column)
        {
            std::int64_t v = 0;
            auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
                fail(line, std::string(column) + ": expected an integer, got \"" + std::string(s) + "\"");
            return v;
        }

        double parse_finite(std::string_view s, std::size_t line, std::string_view column)
        {
            auto v = parse_double(s);
            if (!v)
                fail(line, std::string(column) + ": expected a number, got \"" + std::string(s) + "\"");
            if (!std::isfinite(*v))
                fail(line, std::string(column) + ": non-finite value");
            return *v;
        }

        // Three optional columns that must be all set or all empty.
        std::optional<Vec3> parse_triplet(const std::array<std::string_view, 3> &f, std::size_t line,
                                          std::string_view what)
        {
            const int filled = !f[0].empty() + !f[1].empty() + !f[2].empty();
            if (filled == 0)
                return std::nullopt;
            if (filled != 3)
                fail(line, std::string(what) + ": x, y, z must be all present or all empty");
            return Vec3{parse_finite(f[0], line, what), parse_finite(f[1], line, what), parse_finite(f[2], line, what)};
        }
    }

    MpcDataset parse_mpc_csv(std::string_view text)
    {
        MpcDataset ds;
        std::map<std::string, std::size_t> col;
        std::size_t n_cols = 0;
        bool have_header = false;
        std::set<std::tuple<std::int64_t, int, std::int64_t>> keys;

        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos)
                end = text.size();
            const std::string_view line = trim(text.substr(pos, end - pos));
            pos = end + 1;
            ++line_no;
            if (line.empty())
            {
                if (end == text.size())
                    break;
                continue;
            }

            auto fields = split_csv_line(line);
            for (auto &f : fields)
                f = std::string(trim(f));

            if (!have_header)
            {
                have_header = true;
                n_cols = fields.size();
                for (std::size_t i = 0; i < fields.size(); ++i)
                {
                    bool known = false;
                    for (auto c : mpc_required_columns)
                        known = known || c == fields[i];
                    for (auto c : mpc_optional_columns)
                        known = known || c == fields[i];
                    if (!known)
                        fail(line_no, "unknown column \"" + fields[i] + "\"");
                    if (!col.emplace(fields[i], i).second)
                        fail(line_no, "duplicate column \"" + fields[i] + "\"");
                }
                for (auto c : mpc_required_columns)
                    if (!col.count(std::string(c)))
                        fail(line_no, "missing column \"" + std::string(c) + "\"");
                const auto n_opt = col.count("ue_x") + col.count("ue_y") + col.count("ue_z");
                if (n_opt != 0 && n_opt != 3)
                    fail(line_no, "ue_x, ue_y, ue_z must appear together");
                continue;
            }

            if (fields.size() != n_cols)
                fail(line_no, "expected " + std::to_string(n_cols) + " fields, got " + std::to_string(fields.size()));
            auto get = [&](std::string_view name) -> std::string_view { return fields[col.at(std::string(name))]; };

            MpcRow r;
            r.ue_id = parse_int(get("ue_id"), line_no, "ue_id");
            const auto panel = parse_int(get("panel_id"), line_no, "panel_id");
            if (panel != 1 && panel != 2)
                fail(line_no, "panel_id must be 1 or 2");
            r.panel_id = static_cast<int>(panel);
            r.path_id = parse_int(get("path_id"), line_no, "path_id");
            r.gain = {parse_finite(get("gain_real"), line_no, "gain_real"),
                      parse_finite(get("gain_imag"), line_no, "gain_imag")};
            r.elev = parse_finite(get("elev_rad"), line_no, "elev_rad");
            if (r.elev < -pi / 2.0 || r.elev > pi / 2.0)
                fail(line_no, "elev_rad " + format_double(r.elev) + " outside [-pi/2, pi/2]");
            r.azim = parse_finite(get("azim_rad"), line_no, "azim_rad");
            if (r.azim < 0.0 || r.azim >= 2.0 * pi)
                fail(line_no, "azim_rad " + format_double(r.azim) + " outside [0, 2 pi)");
            r.point = parse_triplet({get("ix"), get("iy"), get("iz")}, line_no, "interaction point");
            if (col.count("ue_x"))
                r.ue_position = parse_triplet({get("ue_x"), get("ue_y"), get("ue_z")}, line_no, "ue position");

            if (!keys.emplace(r.ue_id, r.panel_id, r.path_id).second)
                fail(line_no, "duplicate key (ue_id " + std::to_string(r.ue_id) + ", panel_id " +
                                  std::to_string(r.panel_id) + ", path_id " + std::to_string(r.path_id) + ")");
            ds.rows.push_back(std::move(r));
        }
        if (!have_header)
            fail(1, "missing header");
        return ds;
    }

    MpcDataset ingest_mpc_csv(const std::filesystem::path &path)
    {
        std::string text;
        try
        {
            text = read_text_file(path);
        }
        catch (const std::runtime_error &e)
        {
            throw DataError(0, e.what());
        }
        return parse_mpc_csv(text);
    }

    std::string format_mpc_csv(const MpcDataset &ds)
    {
        bool with_ue = false;
        for (const auto &r : ds.rows)
            with_ue = with_ue || r.ue_position.has_value();

        std::string out;
        for (std::size_t i = 0; i < std::size(mpc_required_columns); ++i)
            out += (i ? "," : "") + std::string(mpc_required_columns[i]);
        if (with_ue)
            for (auto c : mpc_optional_columns)
                out += "," + std::string(c);
        out += '\n';

        auto triplet = [&](const std::optional<Vec3> &p) {
            if (p)
                out += "," + format_double(p->x) + "," + format_double(p->y) + "," + format_double(p->z);
            else
                out += ",,,";
        };
        for (const auto &r : ds.rows)
        {
            out += std::to_string(r.ue_id) + "," + std::to_string(r.panel_id) + "," + std::to_string(r.path_id) + ",";
            out += format_double(r.gain.real()) + "," + format_double(r.gain.imag()) + ",";
            out += format_double(r.elev) + "," + format_double(r.azim);
            triplet(r.point);
            if (with_ue)
                triplet(r.ue_position);
            out += '\n';
        }
        return out;
    }

    void write_mpc_csv(const MpcDataset &ds, const std::filesystem::path &path)
    {
        write_text_file(path, format_mpc_csv(ds));
    }
}
