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

#include "uldl/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "uldl/errors.hpp"
#include "uldl/text_format.hpp"

namespace uldl::io {

using channel::Band;
using channel::kNumAps;
using channel::MeasurementSample;

const std::vector<std::string>& dataset_columns() {
    static const std::vector<std::string> cols = [] {
        std::vector<std::string> c{"sample_id", "track_id", "x_m", "y_m"};
        for (const char* prefix : {"k26_", "p26_", "k28_", "p28_"})
            for (std::size_t i = 1; i <= kNumAps; ++i) c.push_back(prefix + std::to_string(i));
        c.push_back("label");
        return c;
    }();
    return cols;
}

std::string dataset_header() {
    std::string h;
    for (const auto& c : dataset_columns()) {
        if (!h.empty()) h += ',';
        h += c;
    }
    return h;
}

void write_dataset_csv(std::ostream& out, std::span<const MeasurementSample> samples) {
    out << dataset_header() << '\n';
    for (const auto& s : samples) {
        out << s.sample_id << ',' << s.track_id << ',' << text::format_double(s.ue_position.x) << ','
            << text::format_double(s.ue_position.y);
        for (Band b : {Band::Sub6, Band::MmWave}) {
            out << ',' << text::join_doubles(s.band(b).k_factor_db, ',');
            out << ',' << text::join_doubles(s.band(b).rsrp_dbm, ',');
        }
        out << ',';
        if (s.label) out << to_int(*s.label);
        out << '\n';
    }
}

std::vector<MeasurementSample> read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("dataset: empty input, missing header");
    const auto& expected = dataset_columns();
    std::map<std::string, std::size_t> index;
    std::size_t n_fields = 0;
    for (auto name : text::split(text::trim(line), ',')) {
        const std::string col(text::trim(name));
        if (std::find(expected.begin(), expected.end(), col) == expected.end())
            throw DataError("dataset: unexpected column '" + col + "'");
        if (!index.emplace(col, n_fields++).second) throw DataError("dataset: duplicate column '" + col + "'");
    }
    for (const auto& col : expected)
        if (!index.count(col)) throw DataError("dataset: missing column '" + col + "'");

    std::vector<MeasurementSample> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        const auto fields = text::split(line, ',');
        if (fields.size() != n_fields)
            throw DataError("dataset line " + std::to_string(lineno) + ": expected " + std::to_string(n_fields) +
                            " fields, got " + std::to_string(fields.size()));
        const auto field = [&](const std::string& col) { return fields[index.at(col)]; };
        const auto number = [&](const std::string& col) {
            const double v = text::parse_double(field(col), "column '" + col + "' on line " + std::to_string(lineno));
            if (!std::isfinite(v))
                throw DataError("dataset line " + std::to_string(lineno) + ": non-finite value in column '" + col + "'");
            return v;
        };

        MeasurementSample s;
        s.sample_id = text::parse_u64(field("sample_id"), "column 'sample_id' on line " + std::to_string(lineno));
        const auto track = text::parse_u64(field("track_id"), "column 'track_id' on line " + std::to_string(lineno));
        s.track_id = static_cast<std::uint32_t>(track);
        s.ue_position = {number("x_m"), number("y_m")};
        for (std::size_t i = 0; i < kNumAps; ++i) {
            const std::string n = std::to_string(i + 1);
            s.band(Band::Sub6).k_factor_db[i] = number("k26_" + n);
            s.band(Band::Sub6).rsrp_dbm[i] = number("p26_" + n);
            s.band(Band::MmWave).k_factor_db[i] = number("k28_" + n);
            s.band(Band::MmWave).rsrp_dbm[i] = number("p28_" + n);
        }
        const auto lab = text::trim(field("label"));
        if (!lab.empty()) {
            const auto v = text::parse_size(lab, "column 'label' on line " + std::to_string(lineno));
            const auto cls = class_from_int(static_cast<int>(std::min<std::size_t>(v, 99)));
            if (!cls) throw DataError("dataset line " + std::to_string(lineno) + ": column 'label' must be 1..4");
            s.label = cls;
        }
        out.push_back(s);
    }
    return out;
}

std::vector<MeasurementSample> read_dataset_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return read_dataset_csv(in);
}

void write_dataset_file(const std::filesystem::path& path, std::span<const MeasurementSample> samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    write_dataset_csv(out, samples);
    if (!out) throw DataError("write failed for " + path.string());
}

namespace {

channel::Point2 parse_point(std::string_view s, std::string_view what) {
    const auto v = text::parse_doubles(s);
    if (v.size() != 2) throw DataError(std::string(what) + ": expected 'x,y', got '" + std::string(s) + "'");
    return {v[0], v[1]};
}

std::string format_point(channel::Point2 p) { return text::format_double(p.x) + "," + text::format_double(p.y); }

// track = linear start=x,y direction=dx,dy samples=N [speed=1] [interval=1]
// track = circular (center=x,y | start=x,y) radius=r [start_angle_deg=0 | start_angle_rad=0] samples=N ...
channel::TrackSpec parse_track(const text::KeyValue& kv) {
    std::istringstream words(kv.value);
    std::string shape;
    words >> shape;
    std::map<std::string, std::string> attrs;
    for (std::string w; words >> w;) {
        const auto eq = w.find('=');
        if (eq == std::string::npos)
            throw DataError("config line " + std::to_string(kv.line) + ": track attribute '" + w + "' lacks '='");
        attrs[w.substr(0, eq)] = w.substr(eq + 1);
    }
    const auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = attrs.find(key);
        if (it == attrs.end()) return std::nullopt;
        auto v = it->second;
        attrs.erase(it);
        return v;
    };
    const auto need = [&](const std::string& key) {
        auto v = take(key);
        if (!v) throw DataError("config line " + std::to_string(kv.line) + ": track needs '" + key + "='");
        return *v;
    };

    channel::TrackSpec t;
    if (shape == "linear") {
        t = channel::TrackSpec::linear(parse_point(need("start"), "start"), parse_point(need("direction"), "direction"), 1);
    } else if (shape == "circular") {
        const double r = text::parse_double(need("radius"), "radius");
        const auto deg = take("start_angle_deg");
        const auto rad = take("start_angle_rad");
        if (deg && rad) throw DataError("config line " + std::to_string(kv.line) + ": give the start angle once");
        const double a = rad ? text::parse_double(*rad, "start_angle_rad")
                             : text::parse_double(deg.value_or("0"), "start_angle_deg") * std::numbers::pi / 180.0;
        const auto center = take("center");
        const auto start = take("start");
        if (center.has_value() == start.has_value())
            throw DataError("config line " + std::to_string(kv.line) + ": circular track needs center= or start=");
        if (center) {
            t = channel::TrackSpec::circle(parse_point(*center, "center"), r, a, 1);
        } else {
            t = channel::TrackSpec::circle({0, 0}, r, a, 1);
            t.start = parse_point(*start, "start");
        }
    } else {
        throw DataError("config line " + std::to_string(kv.line) + ": track shape must be linear or circular");
    }
    t.n_samples = text::parse_size(need("samples"), "samples");
    t.speed_mps = text::parse_double(take("speed").value_or("1"), "speed");
    t.sample_interval_s = text::parse_double(take("interval").value_or("1"), "interval");
    if (!attrs.empty())
        throw DataError("config line " + std::to_string(kv.line) + ": unknown track attribute '" +
                        attrs.begin()->first + "'");
    return t;
}

std::string format_track(const channel::TrackSpec& t) {
    std::string s;
    if (t.shape == channel::TrackShape::Linear) {
        s = "linear start=" + format_point(t.start) + " direction=" + format_point(t.direction);
    } else {
        s = "circular start=" + format_point(t.start) + " radius=" + text::format_double(t.radius_m) +
            " start_angle_rad=" + text::format_double(t.start_angle_rad);
    }
    s += " samples=" + std::to_string(t.n_samples) + " speed=" + text::format_double(t.speed_mps) +
         " interval=" + text::format_double(t.sample_interval_s);
    return s;
}

using DoubleField = double channel::BandParams::*;
const std::vector<std::pair<std::string, DoubleField>>& band_fields() {
    static const std::vector<std::pair<std::string, DoubleField>> f{
        {"frequency_ghz", &channel::BandParams::carrier_frequency_ghz},
        {"tx_power_dbm", &channel::BandParams::tx_power_dbm},
        {"antenna_gain_db", &channel::BandParams::antenna_gain_db},
        {"nlos_excess_loss_db", &channel::BandParams::nlos_excess_loss_db},
        {"shadowing_std_db", &channel::BandParams::shadowing_std_db},
        {"k_los_mean_db", &channel::BandParams::k_los_mean_db},
        {"k_los_std_db", &channel::BandParams::k_los_std_db},
        {"k_nlos_mean_db", &channel::BandParams::k_nlos_mean_db},
        {"k_nlos_std_db", &channel::BandParams::k_nlos_std_db},
    };
    return f;
}

constexpr std::array<std::pair<const char*, Band>, 2> kBandPrefixes{{{"sub6.", Band::Sub6}, {"mmwave.", Band::MmWave}}};

}  // namespace

RunConfig parse_run_config(std::istream& in, RunConfig cfg) {
    const auto kvs = text::read_key_values(in);
    bool tracks_replaced = false;
    for (const auto& kv : kvs) {
        const auto& k = kv.key;
        const auto num = [&] { return text::parse_double(kv.value, k); };
        const auto size = [&] { return text::parse_size(kv.value, k); };
        auto& s = cfg.synth;
        if (k == "seed") {
            const auto seed = text::parse_u64(kv.value, k);
            s.seed = seed;
            cfg.eval.seed = seed;
        } else if (k == "n_total") {
            s.n_total = cfg.eval.n_total = size();
        } else if (k == "ap_height_m") {
            s.geometry.ap_height_m = num();
        } else if (k == "ue_height_m") {
            s.geometry.ue_height_m = num();
        } else if (k == "ap_positions") {
            const auto pts = text::split(kv.value, ';');
            if (pts.size() != kNumAps) throw DataError("config: ap_positions needs 5 'x,y' pairs separated by ';'");
            for (std::size_t i = 0; i < kNumAps; ++i) s.geometry.ap_positions[i] = parse_point(pts[i], "ap_positions");
        } else if (k == "los_correlation_distance_m") {
            s.params.los_correlation_distance_m = num();
        } else if (k == "shadowing_corr_los_m") {
            s.params.shadowing_corr_los_m = num();
        } else if (k == "shadowing_corr_nlos_m") {
            s.params.shadowing_corr_nlos_m = num();
        } else if (k == "track") {
            if (!tracks_replaced) s.tracks.clear(), tracks_replaced = true;
            s.tracks.push_back(parse_track(kv));
        } else if (k == "k_th") {
            cfg.thresholds.k_th_db = num();
        } else if (k == "p_th") {
            cfg.thresholds.p_th_dbm = num();
        } else if (k == "kernel") {
            cfg.svm.kernel = svm::parse_kernel(kv.value);
        } else if (k == "c") {
            cfg.svm.c = num();
        } else if (k == "gamma") {
            cfg.svm.gamma = num();
        } else if (k == "tol") {
            cfg.svm.tol = num();
        } else if (k == "max_iterations") {
            cfg.svm.max_iterations = size();
        } else if (k == "n_train") {
            cfg.eval.n_train_pool = size();
        } else if (k == "size_start") {
            cfg.eval.size_start = size();
        } else if (k == "size_step") {
            cfg.eval.size_step = size();
        } else if (k == "window_l") {
            cfg.eval.window_l = size();
        } else if (k == "as_valid_threshold") {
            cfg.eval.as_valid_threshold = num();
        } else {
            bool matched = false;
            for (const auto& [prefix, band] : kBandPrefixes) {
                if (k.rfind(prefix, 0) != 0) continue;
                const auto field = k.substr(std::string_view(prefix).size());
                for (const auto& [name, member] : band_fields())
                    if (name == field) s.params.band(band).*member = num(), matched = true;
            }
            if (!matched) throw DataError("config line " + std::to_string(kv.line) + ": unknown key '" + k + "'");
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config " + path.string());
    return parse_run_config(in, std::move(base));
}

void write_run_config(std::ostream& out, const RunConfig& cfg) {
    const auto& s = cfg.synth;
    out << "# synthesis\n";
    out << "seed = " << s.seed << '\n';
    out << "n_total = " << s.n_total << '\n';
    out << "ap_height_m = " << text::format_double(s.geometry.ap_height_m) << '\n';
    out << "ue_height_m = " << text::format_double(s.geometry.ue_height_m) << '\n';
    out << "ap_positions = ";
    for (std::size_t i = 0; i < kNumAps; ++i) out << (i ? "; " : "") << format_point(s.geometry.ap_positions[i]);
    out << '\n';
    for (const auto& [prefix, band] : kBandPrefixes)
        for (const auto& [name, member] : band_fields())
            out << prefix << name << " = " << text::format_double(s.params.band(band).*member) << '\n';
    out << "los_correlation_distance_m = " << text::format_double(s.params.los_correlation_distance_m) << '\n';
    out << "shadowing_corr_los_m = " << text::format_double(s.params.shadowing_corr_los_m) << '\n';
    out << "shadowing_corr_nlos_m = " << text::format_double(s.params.shadowing_corr_nlos_m) << '\n';
    out << "# One line per track. Circular tracks start at `start` (or use center=x,y);\n"
           "# the center lies at start - radius * (cos a, sin a) and the UE moves counter-clockwise.\n";
    for (const auto& t : s.tracks) out << "track = " << format_track(t) << '\n';
    out << "# labeling\n";
    out << "k_th = " << text::format_double(cfg.thresholds.k_th_db) << '\n';
    out << "p_th = " << text::format_double(cfg.thresholds.p_th_dbm) << '\n';
    out << "# classifier\n";
    out << "kernel = " << svm::kernel_name(cfg.svm.kernel) << '\n';
    out << "c = " << text::format_double(cfg.svm.c) << '\n';
    out << "gamma = " << text::format_double(cfg.svm.gamma) << '\n';
    out << "tol = " << text::format_double(cfg.svm.tol) << '\n';
    out << "max_iterations = " << cfg.svm.max_iterations << '\n';
    out << "# evaluation\n";
    out << "n_train = " << cfg.eval.n_train_pool << '\n';
    out << "size_start = " << cfg.eval.size_start << '\n';
    out << "size_step = " << cfg.eval.size_step << '\n';
    out << "window_l = " << cfg.eval.window_l << '\n';
    out << "as_valid_threshold = " << text::format_double(cfg.eval.as_valid_threshold) << '\n';
}

}  // namespace uldl::io
