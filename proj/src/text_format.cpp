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

#include "uldl/text_format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <string>

#include "uldl/errors.hpp"

namespace uldl::text {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string join_doubles(std::span<const double> values, char sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += format_double(values[i]);
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

namespace {

[[noreturn]] void bad(std::string_view what, std::string_view s) {
    throw DataError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
}

template <class T>
T parse_integral(std::string_view s, std::string_view what) {
    const auto t = trim(s);
    T v{};
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size()) bad(what, s);
    return v;
}

}  // namespace

double parse_double(std::string_view s, std::string_view what) {
    auto t = trim(s);
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size()) bad(what, s);
    return v;
}

std::size_t parse_size(std::string_view s, std::string_view what) { return parse_integral<std::size_t>(s, what); }

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
    return parse_integral<std::uint64_t>(s, what);
}

bool parse_bool(std::string_view s, std::string_view what) {
    const auto t = trim(s);
    if (t == "1" || t == "true") return true;
    if (t == "0" || t == "false") return false;
    bad(what, s);
}

std::vector<double> parse_doubles(std::string_view s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto b = s.find_first_not_of(" \t,", pos);
        if (b == std::string_view::npos) break;
        auto e = s.find_first_of(" \t,", b);
        if (e == std::string_view::npos) e = s.size();
        out.push_back(parse_double(s.substr(b, e - b)));
        pos = e;
    }
    return out;
}

std::vector<KeyValue> read_key_values(std::istream& in) {
    std::vector<KeyValue> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view v = line;
        if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
        v = trim(v);
        if (v.empty()) continue;
        const auto eq = v.find('=');
        if (eq == std::string_view::npos)
            throw DataError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const auto key = trim(v.substr(0, eq));
        if (key.empty()) throw DataError("line " + std::to_string(lineno) + ": empty key");
        out.push_back({std::string(key), std::string(trim(v.substr(eq + 1))), lineno});
    }
    return out;
}

std::optional<std::string> find_value(std::span<const KeyValue> kv, std::string_view key) {
    for (auto it = kv.rbegin(); it != kv.rend(); ++it)
        if (it->key == key) return it->value;
    return std::nullopt;
}

std::string require_value(std::span<const KeyValue> kv, std::string_view key) {
    auto v = find_value(kv, key);
    if (!v) throw DataError("missing key '" + std::string(key) + "'");
    return *v;
}

}  // namespace uldl::text
