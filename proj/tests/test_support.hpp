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
#include <random>

#include "uldl/channel.hpp"
#include "uldl/matrix.hpp"

namespace uldl::testing {

using Vec5 = std::array<double, channel::kNumAps>;

inline channel::MeasurementSample make_sample(const Vec5& k26, const Vec5& p26, const Vec5& k28, const Vec5& p28) {
    channel::MeasurementSample s;
    s.band(channel::Band::Sub6) = {k26, p26};
    s.band(channel::Band::MmWave) = {k28, p28};
    return s;
}

inline Vec5 filled(double v) {
    Vec5 a;
    a.fill(v);
    return a;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Matrix m(rows, cols);
    for (auto& v : m.values()) v = g(rng);
    return m;
}

}  // namespace uldl::testing
