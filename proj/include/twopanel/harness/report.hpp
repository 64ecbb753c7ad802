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


#ifndef TWOPANEL_HARNESS_REPORT_HPP
#define TWOPANEL_HARNESS_REPORT_HPP

#include "twopanel/harness/runner.hpp"
#include "twopanel/metrics.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace twopanel::harness
{
    enum class ReportFormat
    {
        csv,     // one row per UE record
        summary, // aggregates as JSON
        map      // x,y,value triplets
    };

    inline constexpr std::string_view report_columns[] = {
        "ue_id", "scenario", "x", "y", "z", "correlation", "elevation_error_rad", "max_elevation_error_rad",
        "containment", "n_paths", "status"};

    std::string format_report_csv(const ScenarioReport &report);

    // Inverse of format_report_csv. Throws DataError with the line number.
    std::vector<UeRecord> parse_report_csv(std::string_view text);

    std::string format_summary_json(const ScenarioReport &report);

    // Value plotted for a record: F for free space, mean elevation error in
    // degrees for multipath-far, containment for multipath-near.
    double map_value(const UeRecord &r);

    std::string format_accuracy_map(const ScenarioReport &report);

    std::string format_curve_csv(const SweepCurve &curve);

    // Throws std::runtime_error if the file cannot be written.
    void emit_report(const ScenarioReport &report, ReportFormat format, const std::filesystem::path &path);

    void emit_curve(const SweepCurve &curve, const std::filesystem::path &path);

    // records.csv, summary.json and accuracy_map.csv under `dir`, created if missing.
    void emit_all(const ScenarioReport &report, const std::filesystem::path &dir);

    // File name used for one sweep curve, e.g. "curve_d2_16.csv".
    std::string curve_file_name(double d2);

    // NaN-aware record equality: NaN fields match NaN fields, others bitwise.
    bool same_record(const UeRecord &a, const UeRecord &b);
}

#endif
