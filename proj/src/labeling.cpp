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

#include "uldl/labeling.hpp"

#include <algorithm>

#include "uldl/errors.hpp"

namespace uldl::labeling {

using channel::Band;

DecouplingClass classify(bool los_uplink, bool strong_downlink) {
    if (los_uplink) return strong_downlink ? DecouplingClass::Class3 : DecouplingClass::Class2;
    return strong_downlink ? DecouplingClass::Class4 : DecouplingClass::Class1;
}

DecouplingClass label_sample(const channel::MeasurementSample& sample, const Thresholds& th) {
    const auto& mmw = sample.mmwave();
    const double max_k = *std::max_element(mmw.k_factor_db.begin(), mmw.k_factor_db.end());
    const double max_p = *std::max_element(mmw.rsrp_dbm.begin(), mmw.rsrp_dbm.end());
    return classify(max_k > th.k_th_db, max_p > th.p_th_dbm);
}

std::vector<channel::MeasurementSample> label_dataset(std::vector<channel::MeasurementSample> samples,
                                                      const Thresholds& th) {
    for (auto& s : samples) s.label = label_sample(s, th);
    return samples;
}

Band uplink_band(DecouplingClass c) {
    return (c == DecouplingClass::Class2 || c == DecouplingClass::Class3) ? Band::MmWave : Band::Sub6;
}

Band downlink_band(DecouplingClass c) {
    return (c == DecouplingClass::Class3 || c == DecouplingClass::Class4) ? Band::MmWave : Band::Sub6;
}

std::size_t argmax(std::span<const double> values) {
    if (values.empty()) throw ParameterError("argmax: empty input");
    return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

TargetSelection select_target_aps(const channel::MeasurementSample& sample, DecouplingClass predicted) {
    TargetSelection sel;
    sel.ul_band = uplink_band(predicted);
    sel.dl_band = downlink_band(predicted);
    sel.ul_ap = argmax(sample.band(sel.ul_band).k_factor_db);
    sel.dl_ap = argmax(sample.band(sel.dl_band).rsrp_dbm);
    return sel;
}

std::array<std::size_t, 4> class_histogram(std::span<const channel::MeasurementSample> samples) {
    std::array<std::size_t, 4> h{};
    for (const auto& s : samples)
        if (s.label) ++h[static_cast<std::size_t>(to_int(*s.label) - 1)];
    return h;
}

}  // namespace uldl::labeling
