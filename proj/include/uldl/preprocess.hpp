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
#include <span>
#include <utility>
#include <vector>

#include "uldl/channel.hpp"
#include "uldl/matrix.hpp"

namespace uldl::preprocess {

// 5 K-factors (dB) then 5 RSRPs (dBm), all at 2.6 GHz.
inline constexpr std::size_t kNumFeatures = 2 * channel::kNumAps;

struct FeatureMatrix {
    Matrix x;
    std::vector<int> y;

    std::size_t rows() const { return x.rows(); }
    void validate() const;
};

// Requires every sample to be labeled.
FeatureMatrix sub6_features(std::span<const channel::MeasurementSample> samples);

// Feature row of one sample (no label needed).
std::array<double, kNumFeatures> sub6_feature_row(const channel::MeasurementSample& sample);

// Seeded Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed);

// Rows and labels co-permuted by permutation(n, seed).
FeatureMatrix shuffle(const FeatureMatrix& features, std::uint64_t seed);

// First n_train rows, then the rest in their original order.
std::pair<FeatureMatrix, FeatureMatrix> split(const FeatureMatrix& features, std::size_t n_train);

struct ScalerParams {
    std::vector<double> mean;
    std::vector<double> std;

    std::size_t dim() const { return mean.size(); }
};

// Per-column mean and population (1/n) std; constant columns get std = 1.
ScalerParams scaler_fit(const Matrix& rows);
Matrix scaler_apply(const ScalerParams& params, const Matrix& rows);
Matrix scaler_inverse(const ScalerParams& params, const Matrix& rows);

void write_scaler(std::ostream& out, const ScalerParams& params);
ScalerParams read_scaler(std::istream& in);

}  // namespace uldl::preprocess
