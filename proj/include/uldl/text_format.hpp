// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The uldl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Number formatting and the flat `key = value` text format shared by the
// config, scaler and model files.
namespace uldl::text {

// Shortest decimal form that round-trips; at most 17 significant digits.
std::string format_double(double v);
std::string join_doubles(std::span<const double> values, char sep = ' ');

// Strict parses: the whole (trimmed) field must be consumed.
double parse_double(std::string_view s, std::string_view what = "value");
std::size_t parse_size(std::string_view s, std::string_view what = "value");
std::uint64_t parse_u64(std::string_view s, std::string_view what = "value");
bool parse_bool(std::string_view s, std::string_view what = "value");
// Whitespace- or comma-separated list.
std::vector<double> parse_doubles(std::string_view s);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

struct KeyValue {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

// One `key = value` per line; `#` starts a comment; blank lines ignored.
// Keys may repeat (e.g. one `track` line per track).
std::vector<KeyValue> read_key_values(std::istream& in);

// Last value bound to `key`, if any.
std::optional<std::string> find_value(std::span<const KeyValue> kv, std::string_view key);
std::string require_value(std::span<const KeyValue> kv, std::string_view key);

}  // namespace uldl::text
