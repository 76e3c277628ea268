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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "uldl/decoupling_class.hpp"
#include "uldl/rng.hpp"

// Dual-band (2.6 GHz / 28 GHz) measurement synthesis over a 5-AP cluster.
//
// Closed-form stand-in for a geometry-based stochastic channel: UMa LOS
// probability and path loss, log-normal shadowing and normal K-factor laws,
// with LOS state and shadowing spatially correlated along each UE track.
namespace uldl::channel {

inline constexpr std::size_t kNumAps = 5;
inline constexpr std::size_t kNumBands = 2;

enum class Band : std::size_t { Sub6 = 0, MmWave = 1 };

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(Point2 a, Point2 b);

struct ClusterGeometry {
    std::array<Point2, kNumAps> ap_positions{};
    double ap_height_m = 25.0;
    double ue_height_m = 1.5;

    void validate() const;

    // APs evenly spaced on a circle around the origin, first one at 90 degrees.
    static ClusterGeometry ring(double radius_m = 200.0, double ap_height_m = 25.0,
                                double ue_height_m = 1.5);
};

enum class TrackShape { Linear, Circular };

// A UE walk. Linear tracks head along `direction` from `start`. Circular
// tracks also begin at `start`; the center sits at
// start - radius * (cos(start_angle), sin(start_angle)) and the UE moves
// counter-clockwise with a constant chord of speed * sample_interval.
struct TrackSpec {
    TrackShape shape = TrackShape::Linear;
    Point2 start{};
    Point2 direction{1.0, 0.0};
    double radius_m = 0.0;
    double start_angle_rad = 0.0;
    double speed_mps = 1.0;
    double sample_interval_s = 1.0;
    std::size_t n_samples = 1;

    double step_m() const { return speed_mps * sample_interval_s; }
    void validate() const;

    static TrackSpec linear(Point2 start, Point2 direction, std::size_t n_samples,
                            double speed_mps = 1.0, double sample_interval_s = 1.0);
    static TrackSpec circle(Point2 center, double radius_m, double start_angle_rad,
                            std::size_t n_samples, double speed_mps = 1.0,
                            double sample_interval_s = 1.0);
};

std::vector<Point2> make_track(const TrackSpec& spec);

struct BandParams {
    double carrier_frequency_ghz = 2.6;
    // Reference-signal power per resource element.
    double tx_power_dbm = -14.0;
    double antenna_gain_db = 9.0;
    // Extra loss applied to NLOS links only (array gain lost without a dominant path).
    double nlos_excess_loss_db = 0.0;
    double shadowing_std_db = 6.0;
    double k_los_mean_db = 9.0;
    double k_los_std_db = 3.5;
    double k_nlos_mean_db = -9.0;
    double k_nlos_std_db = 3.0;
};

struct PropagationParams {
    std::array<BandParams, kNumBands> bands{};
    double los_correlation_distance_m = 50.0;
    double shadowing_corr_los_m = 37.0;
    double shadowing_corr_nlos_m = 50.0;

    const BandParams& band(Band b) const { return bands[static_cast<std::size_t>(b)]; }
    BandParams& band(Band b) { return bands[static_cast<std::size_t>(b)]; }

    void validate() const;

    // Defaults tuned so the dataset-level cross-band offsets land near
    // mean(K28 - K26) = +5.03 dB and mean(P26 - P28) = +23.24 dB.
    static PropagationParams calibrated_defaults();
};

struct BandMeasurement {
    std::array<double, kNumAps> k_factor_db{};
    std::array<double, kNumAps> rsrp_dbm{};
    friend bool operator==(const BandMeasurement&, const BandMeasurement&) = default;
};

struct MeasurementSample {
    std::uint64_t sample_id = 0;
    std::uint32_t track_id = 0;
    Point2 ue_position{};
    std::array<BandMeasurement, kNumBands> bands{};
    // Shared by both bands. Not part of the CSV schema, so absent after a reload.
    std::optional<std::array<bool, kNumAps>> los;
    std::optional<DecouplingClass> label;

    const BandMeasurement& band(Band b) const { return bands[static_cast<std::size_t>(b)]; }
    BandMeasurement& band(Band b) { return bands[static_cast<std::size_t>(b)]; }
    const BandMeasurement& sub6() const { return band(Band::Sub6); }
    const BandMeasurement& mmwave() const { return band(Band::MmWave); }
};

// 3GPP UMa LOS probability for a UE at 1.5 m.
double los_probability(double d2d_m);

// LOS iff Phi(latent) < P_LOS(d2d). With latent ~ N(0,1) this is a
// Bernoulli(P_LOS) draw; correlated latents give correlated states.
bool los_from_latent(double d2d_m, double latent);

// Independent (uncorrelated) LOS draw.
bool draw_los(double d2d_m, Rng& rng);

// UMa-style path loss in dB. Throws ParameterError for d3d < 1 m.
double path_loss_db(double carrier_frequency_ghz, double d3d_m, bool los, double ue_height_m = 1.5);

// tx_power + gain - path_loss - (NLOS ? nlos_excess_loss : 0), no shadowing.
double link_budget_dbm(const BandParams& band, double d3d_m, bool los, double ue_height_m);

// Standard-normal latent drivers for one UE position.
struct LinkLatents {
    std::array<double, kNumAps> los{};
    std::array<double, kNumAps> shadowing{};
};

// Carries the LOS and shadowing latents along a track. Each latent follows
// an exponentially-correlated Gaussian process over distance travelled:
// z' = rho z + sqrt(1 - rho^2) n, rho = exp(-moved / d_corr). Shadowing
// uses the LOS or NLOS correlation distance of the link's new state.
class LinkProcess {
  public:
    LinkProcess(const ClusterGeometry& geometry, const PropagationParams& params);

    // Moves the UE to `position` and returns the latents there. The first
    // call draws a fresh stationary state.
    const LinkLatents& step(Point2 position, Rng& rng);

  private:
    const ClusterGeometry* geometry_;
    const PropagationParams* params_;
    std::optional<Point2> last_;
    LinkLatents latents_{};
};

// One dual-band report. LOS flags come from the latents and are shared by
// both bands. RSRP = link budget - shadowing_std * latent; K-factors are
// fresh draws from the band/LOS normal law.
MeasurementSample sample_measurement(Point2 ue_position, const ClusterGeometry& geometry,
                                     const PropagationParams& params, const LinkLatents& latents,
                                     Rng& rng);

struct SynthConfig {
    ClusterGeometry geometry = ClusterGeometry::ring();
    PropagationParams params = PropagationParams::calibrated_defaults();
    std::vector<TrackSpec> tracks;
    std::uint64_t seed = 1;
    // Required total; 0 accepts whatever the tracks add up to.
    std::size_t n_total = 0;

    // 10 linear/circular pedestrian tracks inside the 400 m square, 3800 samples.
    static SynthConfig defaults();
};

// Samples ordered by track then time. Each track draws from its own stream
// derived from (seed, track index), so the result is a pure function of the config.
std::vector<MeasurementSample> synth_dataset(const SynthConfig& config);

}  // namespace uldl::channel
