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


#ifndef TWOPANEL_HARNESS_DATASET_HPP
#define TWOPANEL_HARNESS_DATASET_HPP

#include "twopanel/channel.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace twopanel::harness
{
    // One propagation path as seen by one panel. LoS rows carry no
    // interaction point.
    struct MpcRow
    {
        std::int64_t ue_id = 0;
        int panel_id = 1;
        std::int64_t path_id = 0;
        cplx gain{0.0, 0.0};
        double elev = 0.0; // rad, [-pi/2, pi/2]
        double azim = 0.0; // rad, [0, 2 pi)
        std::optional<Vec3> point;
        std::optional<Vec3> ue_position;

        bool is_los() const { return !point.has_value(); }
        PathComponent component() const { return {gain, elev, azim}; }

        friend bool operator==(const MpcRow &, const MpcRow &) = default;
    };

    struct MpcDataset
    {
        std::vector<MpcRow> rows;

        // Distinct ue_ids in order of first appearance.
        std::vector<std::int64_t> ue_ids() const;

        // Rows of one UE and panel, in file order.
        std::vector<MpcRow> select(std::int64_t ue_id, int panel_id) const;

        friend bool operator==(const MpcDataset &, const MpcDataset &) = default;
    };

    // Column names, in the order they are written.
    inline constexpr std::string_view mpc_required_columns[] = {
        "ue_id", "panel_id", "path_id", "gain_real", "gain_imag", "elev_rad", "azim_rad", "ix", "iy", "iz"};
    inline constexpr std::string_view mpc_optional_columns[] = {"ue_x", "ue_y", "ue_z"};

    // Parses CSV text. Columns are matched by header name; line numbers in
    // errors are 1-based and count the header.
    MpcDataset parse_mpc_csv(std::string_view text);

    MpcDataset ingest_mpc_csv(const std::filesystem::path &path);

    // UE position columns are written only if some row has a position.
    std::string format_mpc_csv(const MpcDataset &ds);

    void write_mpc_csv(const MpcDataset &ds, const std::filesystem::path &path);

    // 17 significant digits, general notation. Reads back bit-exact.
    // NaN is written as "nan".
    std::string format_double(double v);

    // Strict double parse of a whole field; nullopt on any trailing junk.
    std::optional<double> parse_double(std::string_view s);

    // Splits one CSV line on commas. Double-quoted fields may contain commas
    // and doubled quotes.
    std::vector<std::string> split_csv_line(std::string_view line);

    // Reads a whole file; throws std::runtime_error if it cannot be opened.
    std::string read_text_file(const std::filesystem::path &path);

    // Truncates and writes; throws std::runtime_error on any failure.
    void write_text_file(const std::filesystem::path &path, std::string_view text);
}

#endif
