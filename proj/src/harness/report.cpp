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

#include "twopanel/harness/report.hpp"
#include "twopanel/errors.hpp"
#include "twopanel/harness/dataset.hpp"

#include "json.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <map>

namespace twopanel::harness
{
    namespace
    {
        std::string quote(std::string_view s)
        {
            if (s.find_first_of(",\"\n\r") == std::string_view::npos)
                return std::string(s);
            std::string out = "\"";
            for (char c : s)
            {
                if (c == '\n' || c == '\r')
                    c = ' ';
                if (c == '"')
                    out += '"';
                out += c;
            }
            return out + "\"";
        }

        nlohmann::json num(double v)
        {
            if (!std::isfinite(v))
                return nullptr;
            return v;
        }

        bool same(double a, double b)
        {
            return (std::isnan(a) && std::isnan(b)) || std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
        }

        [[noreturn]] void fail(std::size_t line, const std::string &msg)
        {
            throw DataError(line, "line " + std::to_string(line) + ": " + msg);
        }
    }

    std::string format_report_csv(const ScenarioReport &report)
    {
        std::string out;
        for (std::size_t i = 0; i < std::size(report_columns); ++i)
            out += (i ? "," : "") + std::string(report_columns[i]);
        out += '\n';
        for (const auto &r : report.records)
        {
            out += std::to_string(r.ue_id) + "," + std::string(to_string(r.scenario));
            for (double v : {r.position.x, r.position.y, r.position.z, r.correlation, r.elevation_error,
                             r.max_elevation_error, r.containment})
                out += "," + format_double(v);
            out += "," + std::to_string(r.n_paths) + "," + quote(r.status) + "\n";
        }
        return out;
    }

    std::vector<UeRecord> parse_report_csv(std::string_view text)
    {
        std::vector<UeRecord> out;
        std::size_t line_no = 0, pos = 0;
        bool header = false;
        while (pos < text.size())
        {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos)
                end = text.size();
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            if (line.empty())
                continue;
            const auto f = split_csv_line(line);
            if (!header)
            {
                header = true;
                if (f.size() != std::size(report_columns))
                    fail(line_no, "unexpected report header");
                for (std::size_t i = 0; i < f.size(); ++i)
                    if (f[i] != report_columns[i])
                        fail(line_no, "unexpected report column \"" + f[i] + "\"");
                continue;
            }
            if (f.size() != std::size(report_columns))
                fail(line_no, "expected " + std::to_string(std::size(report_columns)) + " fields");

            UeRecord r;
            auto integer = [&](const std::string &s) {
                std::int64_t v = 0;
                auto res = std::from_chars(s.data(), s.data() + s.size(), v);
                if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
                    fail(line_no, "bad integer \"" + s + "\"");
                return v;
            };
            auto real = [&](const std::string &s) {
                auto v = parse_double(s);
                if (!v)
                    fail(line_no, "bad number \"" + s + "\"");
                return *v;
            };
            r.ue_id = integer(f[0]);
            const auto sc = scenario_from_string(f[1]);
            if (!sc)
                fail(line_no, "unknown scenario \"" + f[1] + "\"");
            r.scenario = *sc;
            r.position = {real(f[2]), real(f[3]), real(f[4])};
            r.correlation = real(f[5]);
            r.elevation_error = real(f[6]);
            r.max_elevation_error = real(f[7]);
            r.containment = real(f[8]);
            r.n_paths = integer(f[9]);
            r.status = f[10];
            out.push_back(std::move(r));
        }
        if (!header)
            fail(1, "missing header");
        return out;
    }

    std::string format_summary_json(const ScenarioReport &report)
    {
        const auto &a = report.aggregates;
        nlohmann::ordered_json j;
        j["scenario"] = report.records.empty() ? "none" : std::string(to_string(report.records.front().scenario));
        j["n_records"] = a.n_records;
        j["n_failed"] = a.n_failed;
        j["correlation"] = {{"mean", num(a.correlation_mean)}, {"min", num(a.correlation_min)},
                            {"max", num(a.correlation_max)}};
        j["elevation_error_deg"] = {{"mean", num(a.elevation_error_mean_deg)}, {"max", num(a.elevation_error_max_deg)}};
        j["containment"] = {{"mean", num(a.containment_mean)}, {"min", num(a.containment_min)},
                            {"max", num(a.containment_max)}};
        return j.dump(2) + "\n";
    }

    double map_value(const UeRecord &r)
    {
        switch (r.scenario)
        {
        case Scenario::far_free:
        case Scenario::near_free:
            return r.correlation;
        case Scenario::multipath_far:
            return r.elevation_error * 180.0 / pi;
        case Scenario::multipath_near:
            return r.containment;
        }
        return nan;
    }

    std::string format_accuracy_map(const ScenarioReport &report)
    {
        std::string out = "x,y,value\n";
        for (const auto &r : report.records)
            out += format_double(r.position.x) + "," + format_double(r.position.y) + "," +
                   format_double(map_value(r)) + "\n";
        return out;
    }

    std::string format_curve_csv(const SweepCurve &curve)
    {
        std::string out = "dx,f_near,f_far\n";
        for (const auto &p : curve.points)
            out += format_double(p.dx) + "," + format_double(p.f_near) + "," + format_double(p.f_far) + "\n";
        return out;
    }

    void emit_report(const ScenarioReport &report, ReportFormat format, const std::filesystem::path &path)
    {
        switch (format)
        {
        case ReportFormat::csv:
            return write_text_file(path, format_report_csv(report));
        case ReportFormat::summary:
            return write_text_file(path, format_summary_json(report));
        case ReportFormat::map:
            return write_text_file(path, format_accuracy_map(report));
        }
    }

    void emit_curve(const SweepCurve &curve, const std::filesystem::path &path)
    {
        write_text_file(path, format_curve_csv(curve));
    }

    void emit_all(const ScenarioReport &report, const std::filesystem::path &dir)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
        emit_report(report, ReportFormat::csv, dir / "records.csv");
        emit_report(report, ReportFormat::summary, dir / "summary.json");
        emit_report(report, ReportFormat::map, dir / "accuracy_map.csv");
    }

    std::string curve_file_name(double d2)
    {
        return "curve_d2_" + format_double(d2) + ".csv";
    }

    bool same_record(const UeRecord &a, const UeRecord &b)
    {
        return a.ue_id == b.ue_id && a.scenario == b.scenario && same(a.position.x, b.position.x) &&
               same(a.position.y, b.position.y) && same(a.position.z, b.position.z) &&
               same(a.correlation, b.correlation) && same(a.elevation_error, b.elevation_error) &&
               same(a.max_elevation_error, b.max_elevation_error) && same(a.containment, b.containment) &&
               a.n_paths == b.n_paths && a.status == b.status;
    }
}
