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

#ifndef TWOPANEL_ERRORS_HPP
#define TWOPANEL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twopanel
{
    // Precondition violations on library calls (bad index, angle outside the
    // admissible range, empty path list, ...) throw std::invalid_argument.
    // The types below cover failures that callers usually want to tell apart.

    // Greedy path extraction stopped making progress before reaching its
    // residual target or the path budget.
    class ConvergenceError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Near-field multipath inference was asked for a deviation bound that
    // makes the emitted range unprovable (delta >= d2 - d1).
    class ContainmentError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    enum class ConfigErrorKind
    {
        parse,
        schema,
        range
    };

    // Scenario configuration could not be used. `field()` names the offending
    // key as a dotted path, e.g. "panel2.height_m".
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(ConfigErrorKind kind, std::string field, const std::string &what)
            : std::runtime_error(what), kind_(kind), field_(std::move(field)) {}

        ConfigErrorKind kind() const noexcept { return kind_; }
        const std::string &field() const noexcept { return field_; }

    private:
        ConfigErrorKind kind_;
        std::string field_;
    };

    // Malformed external data (CSV rows, report files). `line()` is 1-based,
    // 0 when the error is not tied to a line.
    class DataError : public std::runtime_error
    {
    public:
        DataError(std::size_t line, const std::string &what)
            : std::runtime_error(what), line_(line) {}

        std::size_t line() const noexcept { return line_; }

    private:
        std::size_t line_;
    };
}

#endif
