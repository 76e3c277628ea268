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
#include <span>

#include "uldl/channel.hpp"
#include "uldl/evaluation.hpp"
#include "uldl/labeling.hpp"

// Fixed-threshold blind decoupling: the mmWave labeling rule applied to
// 2.6 GHz measurements with thresholds shifted by the mean cross-band offsets.
namespace uldl::baseline {

// Means over samples and APs, 28 GHz minus 2.6 GHz.
struct BandOffsets {
    double k_offset_db = 0.0;
    double p_offset_db = 0.0;
};

BandOffsets estimate_offsets(std::span<const channel::MeasurementSample> samples);

// L = max K26 > k_th - k_offset, H = max P26 > p_th - p_offset.
DecouplingClass threshold_classify(const channel::BandMeasurement& sub6, const labeling::Thresholds& th,
                                   const BandOffsets& offsets);

struct BaselineResult {
    BandOffsets offsets;
    double dsr = 0.0;
    // Mean window accuracy over the test remainder.
    double mean_accuracy = 0.0;
    // Plain accuracy over every sample.
    double overall_accuracy = 0.0;
    // confusion[true - 1][predicted - 1] over the test windows.
    std::array<std::array<std::size_t, 4>, 4> confusion{};
    std::size_t n_windows = 0;
};

// Offsets estimated over the whole labeled dataset.
BaselineResult baseline_dsr(std::span<const channel::MeasurementSample> samples, const labeling::Thresholds& th,
                            const evaluation::EvalConfig& cfg);

BaselineResult baseline_dsr(std::span<const channel::MeasurementSample> samples, const labeling::Thresholds& th,
                            const evaluation::EvalConfig& cfg, const BandOffsets& offsets);

}  // namespace uldl::baseline
