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

#include "uldl/baseline.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "uldl/errors.hpp"

namespace uldl::baseline {

BandOffsets estimate_offsets(std::span<const channel::MeasurementSample> samples) {
    if (samples.empty()) throw ParameterError("estimate_offsets: empty dataset");
    double dk = 0.0, dp = 0.0;
    for (const auto& s : samples) {
        for (std::size_t i = 0; i < channel::kNumAps; ++i) {
            dk += s.mmwave().k_factor_db[i] - s.sub6().k_factor_db[i];
            dp += s.mmwave().rsrp_dbm[i] - s.sub6().rsrp_dbm[i];
        }
    }
    const double n = static_cast<double>(samples.size() * channel::kNumAps);
    return {dk / n, dp / n};
}

DecouplingClass threshold_classify(const channel::BandMeasurement& sub6, const labeling::Thresholds& th,
                                   const BandOffsets& offsets) {
    const double max_k = *std::max_element(sub6.k_factor_db.begin(), sub6.k_factor_db.end());
    const double max_p = *std::max_element(sub6.rsrp_dbm.begin(), sub6.rsrp_dbm.end());
    return labeling::classify(max_k > th.k_th_db - offsets.k_offset_db, max_p > th.p_th_dbm - offsets.p_offset_db);
}

BaselineResult baseline_dsr(std::span<const channel::MeasurementSample> samples, const labeling::Thresholds& th,
                            const evaluation::EvalConfig& cfg) {
    return baseline_dsr(samples, th, cfg, estimate_offsets(samples));
}

BaselineResult baseline_dsr(std::span<const channel::MeasurementSample> samples, const labeling::Thresholds& th,
                            const evaluation::EvalConfig& cfg, const BandOffsets& offsets) {
    cfg.validate();
    if (samples.size() != cfg.n_total)
        throw ParameterError("baseline: dataset has " + std::to_string(samples.size()) + " samples, expected " +
                             std::to_string(cfg.n_total));
    BaselineResult res;
    res.offsets = offsets;
    std::vector<int> truth, predicted;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!s.label) throw DataError("baseline: sample " + std::to_string(s.sample_id) + " has no label");
        const int t = to_int(*s.label);
        const int p = to_int(threshold_classify(s.sub6(), th, offsets));
        hits += t == p;
        if (i >= cfg.n_train_pool) {
            truth.push_back(t);
            predicted.push_back(p);
        }
    }
    res.overall_accuracy = static_cast<double>(hits) / static_cast<double>(samples.size());
    const auto scores = evaluation::window_scores(truth, predicted, cfg.window_l);
    res.n_windows = scores.size();
    res.dsr = evaluation::success_rate(scores, cfg.as_valid_threshold);
    res.mean_accuracy = evaluation::mean(scores);
    for (std::size_t i = 0; i < scores.size() * cfg.window_l; ++i)
        ++res.confusion[static_cast<std::size_t>(truth[i] - 1)][static_cast<std::size_t>(predicted[i] - 1)];
    return res;
}

}  // namespace uldl::baseline
