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
#include <span>
#include <vector>

#include "uldl/channel.hpp"
#include "uldl/decoupling_class.hpp"

namespace uldl::labeling {

struct Thresholds {
    double k_th_db = 3.0;
    double p_th_dbm = -115.0;
};

// Decision table on L = (max K > k_th), H = (max P > p_th):
//   (!L, !H) -> Class1, (L, !H) -> Class2, (L, H) -> Class3, (!L, H) -> Class4.
DecouplingClass classify(bool los_uplink, bool strong_downlink);

// Applies the table to the 28 GHz vectors of `sample`, strict comparisons.
DecouplingClass label_sample(const channel::MeasurementSample& sample, const Thresholds& th);

// Copies with every label filled in; order preserved.
std::vector<channel::MeasurementSample> label_dataset(std::vector<channel::MeasurementSample> samples,
                                                      const Thresholds& th);

struct TargetSelection {
    std::size_t ul_ap = 0;
    channel::Band ul_band = channel::Band::Sub6;
    std::size_t dl_ap = 0;
    channel::Band dl_band = channel::Band::Sub6;
    friend bool operator==(const TargetSelection&, const TargetSelection&) = default;
};

channel::Band uplink_band(DecouplingClass c);
channel::Band downlink_band(DecouplingClass c);

// UL AP = argmax K-factor on the UL band, DL AP = argmax RSRP on the DL
// band; ties go to the lowest AP index.
TargetSelection select_target_aps(const channel::MeasurementSample& sample, DecouplingClass predicted);

// Index of the first maximum.
std::size_t argmax(std::span<const double> values);

// Counts per class, index 0 = Class1.
std::array<std::size_t, 4> class_histogram(std::span<const channel::MeasurementSample> samples);

}  // namespace uldl::labeling
