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

#include "uldl/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uldl/errors.hpp"

namespace uldl::channel {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double ar1_rho(double moved_m, double corr_distance_m) { return std::exp(-moved_m / corr_distance_m); }

double d3d(Point2 ue, Point2 ap, const ClusterGeometry& g) {
    const double dz = g.ap_height_m - g.ue_height_m;
    const double d2 = distance(ue, ap);
    return std::sqrt(d2 * d2 + dz * dz);
}

void require(bool ok, const char* what) {
    if (!ok) throw ParameterError(what);
}

}  // namespace

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

void ClusterGeometry::validate() const {
    require(std::isfinite(ap_height_m) && std::isfinite(ue_height_m), "geometry: non-finite height");
    require(ue_height_m > 0.0, "geometry: ue_height must be > 0");
    require(ap_height_m > ue_height_m, "geometry: ap_height must exceed ue_height");
    for (std::size_t i = 0; i < kNumAps; ++i) {
        require(std::isfinite(ap_positions[i].x) && std::isfinite(ap_positions[i].y),
                "geometry: non-finite AP position");
        for (std::size_t j = 0; j < i; ++j)
            require(!(ap_positions[i] == ap_positions[j]), "geometry: AP positions must be distinct");
    }
}

ClusterGeometry ClusterGeometry::ring(double radius_m, double ap_height_m, double ue_height_m) {
    ClusterGeometry g;
    g.ap_height_m = ap_height_m;
    g.ue_height_m = ue_height_m;
    for (std::size_t i = 0; i < kNumAps; ++i) {
        const double a = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * static_cast<double>(i) / kNumAps;
        g.ap_positions[i] = {radius_m * std::cos(a), radius_m * std::sin(a)};
    }
    return g;
}

void TrackSpec::validate() const {
    require(n_samples >= 1, "track: n_samples must be >= 1");
    require(std::isfinite(speed_mps) && speed_mps > 0.0, "track: speed must be > 0");
    require(std::isfinite(sample_interval_s) && sample_interval_s > 0.0,
            "track: sample_interval must be > 0");
    require(std::isfinite(start.x) && std::isfinite(start.y), "track: non-finite start");
    if (shape == TrackShape::Linear) {
        require(std::hypot(direction.x, direction.y) > 0.0, "track: zero direction vector");
    } else {
        require(std::isfinite(radius_m) && radius_m > 0.0, "track: circular radius must be > 0");
        require(step_m() <= 2.0 * radius_m, "track: step longer than the circle diameter");
    }
}

TrackSpec TrackSpec::linear(Point2 start, Point2 direction, std::size_t n_samples, double speed_mps,
                            double sample_interval_s) {
    TrackSpec t;
    t.shape = TrackShape::Linear;
    t.start = start;
    t.direction = direction;
    t.n_samples = n_samples;
    t.speed_mps = speed_mps;
    t.sample_interval_s = sample_interval_s;
    return t;
}

TrackSpec TrackSpec::circle(Point2 center, double radius_m, double start_angle_rad, std::size_t n_samples,
                            double speed_mps, double sample_interval_s) {
    TrackSpec t;
    t.shape = TrackShape::Circular;
    t.radius_m = radius_m;
    t.start_angle_rad = start_angle_rad;
    t.start = {center.x + radius_m * std::cos(start_angle_rad), center.y + radius_m * std::sin(start_angle_rad)};
    t.n_samples = n_samples;
    t.speed_mps = speed_mps;
    t.sample_interval_s = sample_interval_s;
    return t;
}

std::vector<Point2> make_track(const TrackSpec& spec) {
    spec.validate();
    std::vector<Point2> pts;
    pts.reserve(spec.n_samples);
    const double step = spec.step_m();
    if (spec.shape == TrackShape::Linear) {
        const double norm = std::hypot(spec.direction.x, spec.direction.y);
        const Point2 u{spec.direction.x / norm, spec.direction.y / norm};
        for (std::size_t k = 0; k < spec.n_samples; ++k) {
            const double s = step * static_cast<double>(k);
            pts.push_back({spec.start.x + s * u.x, spec.start.y + s * u.y});
        }
    } else {
        const double r = spec.radius_m;
        const Point2 c{spec.start.x - r * std::cos(spec.start_angle_rad),
                       spec.start.y - r * std::sin(spec.start_angle_rad)};
        // Chord of length `step` subtends 2 asin(step / 2r).
        const double dtheta = 2.0 * std::asin(step / (2.0 * r));
        pts.push_back(spec.start);
        for (std::size_t k = 1; k < spec.n_samples; ++k) {
            const double a = spec.start_angle_rad + dtheta * static_cast<double>(k);
            pts.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
        }
    }
    return pts;
}

void PropagationParams::validate() const {
    for (const BandParams& b : bands) {
        require(b.carrier_frequency_ghz > 0.0, "params: carrier frequency must be > 0");
        require(b.shadowing_std_db >= 0.0 && b.k_los_std_db >= 0.0 && b.k_nlos_std_db >= 0.0,
                "params: standard deviations must be >= 0");
        require(std::isfinite(b.tx_power_dbm) && std::isfinite(b.antenna_gain_db) &&
                    std::isfinite(b.nlos_excess_loss_db) && std::isfinite(b.k_los_mean_db) &&
                    std::isfinite(b.k_nlos_mean_db),
                "params: non-finite band parameter");
    }
    require(los_correlation_distance_m > 0.0, "params: LOS correlation distance must be > 0");
    require(shadowing_corr_los_m > 0.0 && shadowing_corr_nlos_m > 0.0,
            "params: shadowing correlation distances must be > 0");
}

PropagationParams PropagationParams::calibrated_defaults() {
    PropagationParams p;
    BandParams& sub6 = p.band(Band::Sub6);
    sub6.carrier_frequency_ghz = 2.6;
    sub6.tx_power_dbm = -14.0;
    sub6.antenna_gain_db = 9.0;
    sub6.nlos_excess_loss_db = 0.0;
    sub6.shadowing_std_db = 6.0;
    sub6.k_los_mean_db = 9.0;
    sub6.k_los_std_db = 3.5;
    sub6.k_nlos_mean_db = -9.0;
    sub6.k_nlos_std_db = 3.5;

    BandParams& mmw = p.band(Band::MmWave);
    mmw.carrier_frequency_ghz = 28.0;
    mmw.tx_power_dbm = -14.0;
    mmw.antenna_gain_db = 26.1;
    mmw.nlos_excess_loss_db = 24.0;
    mmw.shadowing_std_db = 6.0;
    mmw.k_los_mean_db = 18.5;
    mmw.k_los_std_db = 4.0;
    mmw.k_nlos_mean_db = -5.0;
    mmw.k_nlos_std_db = 2.5;
    return p;
}

double los_probability(double d2d_m) {
    if (d2d_m <= 18.0) return 1.0;
    const double r = 18.0 / d2d_m;
    return r + std::exp(-d2d_m / 63.0) * (1.0 - r);
}

bool los_from_latent(double d2d_m, double latent) { return normal_cdf(latent) < los_probability(d2d_m); }

bool draw_los(double d2d_m, Rng& rng) {
    std::normal_distribution<double> n01;
    return los_from_latent(d2d_m, n01(rng));
}

double path_loss_db(double carrier_frequency_ghz, double d3d_m, bool los, double ue_height_m) {
    if (!(d3d_m >= 1.0)) throw ParameterError("path_loss_db: d3d must be >= 1 m, got " + std::to_string(d3d_m));
    const double f_term = 20.0 * std::log10(carrier_frequency_ghz);
    if (los) return 28.0 + 22.0 * std::log10(d3d_m) + f_term;
    return 13.54 + 39.08 * std::log10(d3d_m) + f_term - 0.6 * (ue_height_m - 1.5);
}

double link_budget_dbm(const BandParams& band, double d3d_m, bool los, double ue_height_m) {
    return band.tx_power_dbm + band.antenna_gain_db -
           path_loss_db(band.carrier_frequency_ghz, d3d_m, los, ue_height_m) -
           (los ? 0.0 : band.nlos_excess_loss_db);
}

LinkProcess::LinkProcess(const ClusterGeometry& geometry, const PropagationParams& params)
    : geometry_(&geometry), params_(&params) {}

const LinkLatents& LinkProcess::step(Point2 position, Rng& rng) {
    std::normal_distribution<double> n01;
    if (!last_) {
        for (auto& z : latents_.los) z = n01(rng);
        for (auto& z : latents_.shadowing) z = n01(rng);
    } else {
        const double moved = distance(position, *last_);
        const double rho_los = ar1_rho(moved, params_->los_correlation_distance_m);
        for (auto& z : latents_.los) z = rho_los * z + std::sqrt(1.0 - rho_los * rho_los) * n01(rng);
        for (std::size_t i = 0; i < kNumAps; ++i) {
            const bool los = los_from_latent(distance(position, geometry_->ap_positions[i]), latents_.los[i]);
            const double rho = ar1_rho(moved, los ? params_->shadowing_corr_los_m : params_->shadowing_corr_nlos_m);
            latents_.shadowing[i] = rho * latents_.shadowing[i] + std::sqrt(1.0 - rho * rho) * n01(rng);
        }
    }
    last_ = position;
    return latents_;
}

MeasurementSample sample_measurement(Point2 ue_position, const ClusterGeometry& geometry,
                                     const PropagationParams& params, const LinkLatents& latents,
                                     Rng& rng) {
    MeasurementSample s;
    s.ue_position = ue_position;
    std::array<bool, kNumAps> los{};
    std::array<double, kNumAps> dist3{};
    for (std::size_t i = 0; i < kNumAps; ++i) {
        los[i] = los_from_latent(distance(ue_position, geometry.ap_positions[i]), latents.los[i]);
        dist3[i] = d3d(ue_position, geometry.ap_positions[i], geometry);
    }
    std::normal_distribution<double> n01;
    for (std::size_t b = 0; b < kNumBands; ++b) {
        const BandParams& bp = params.bands[b];
        BandMeasurement& m = s.bands[b];
        for (std::size_t i = 0; i < kNumAps; ++i) {
            m.rsrp_dbm[i] = link_budget_dbm(bp, dist3[i], los[i], geometry.ue_height_m) -
                            bp.shadowing_std_db * latents.shadowing[i];
            const double z = n01(rng);
            m.k_factor_db[i] = los[i] ? bp.k_los_mean_db + bp.k_los_std_db * z
                                      : bp.k_nlos_mean_db + bp.k_nlos_std_db * z;
        }
    }
    s.los = los;
    return s;
}

SynthConfig SynthConfig::defaults() {
    SynthConfig c;
    c.n_total = 3800;
    c.tracks = {
        TrackSpec::linear({-187.5, -120.0}, {1.0, 0.0}, 375),
        TrackSpec::circle({0.0, 0.0}, 90.0, 0.0, 375),
        TrackSpec::linear({-150.0, 187.0}, {0.0, -1.0}, 375),
        TrackSpec::circle({60.0, -60.0}, 70.0, 1.0, 375),
        TrackSpec::linear({-180.0, -180.0}, {1.0, 1.0}, 375),
        TrackSpec::circle({-60.0, 60.0}, 75.0, 2.0, 375),
        TrackSpec::linear({187.0, -187.5}, {0.0, 1.0}, 375),
        TrackSpec::linear({187.5, 60.0}, {-1.0, 0.0}, 375),
        TrackSpec::circle({0.0, 0.0}, 130.0, 0.5, 400),
        TrackSpec::linear({-190.0, 40.0}, {1.0, -0.3}, 400),
    };
    return c;
}

std::vector<MeasurementSample> synth_dataset(const SynthConfig& config) {
    config.geometry.validate();
    config.params.validate();
    std::size_t total = 0;
    for (const TrackSpec& t : config.tracks) {
        t.validate();
        total += t.n_samples;
    }
    if (config.n_total != 0 && total != config.n_total)
        throw ParameterError("synth_dataset: tracks hold " + std::to_string(total) + " samples, expected " +
                             std::to_string(config.n_total));

    std::vector<MeasurementSample> out;
    out.reserve(total);
    for (std::size_t t = 0; t < config.tracks.size(); ++t) {
        Rng rng = make_rng(config.seed, "synthesis", t);
        LinkProcess links(config.geometry, config.params);
        for (Point2 p : make_track(config.tracks[t])) {
            const LinkLatents& z = links.step(p, rng);
            MeasurementSample s = sample_measurement(p, config.geometry, config.params, z, rng);
            s.sample_id = out.size();
            s.track_id = static_cast<std::uint32_t>(t);
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace uldl::channel
