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
#include <span>
#include <vector>

#include "uldl/channel.hpp"
#include "uldl/preprocess.hpp"
#include "uldl/svm.hpp"

namespace uldl::evaluation {

// Training-size sweep and windowed test protocol.
struct EvalConfig {
    std::size_t n_total = 3800;
    std::size_t n_train_pool = 3000;
    std::size_t size_start = 50;
    std::size_t size_step = 50;
    // Samples per decision window.
    std::size_t window_l = 50;
    // A window is a valid decision when its accuracy is strictly above this.
    double as_valid_threshold = 0.9;
    std::uint64_t seed = 1;

    void validate() const;
    // floor((n_total - n_train_pool) / window_l)
    std::size_t n_test_windows() const;
    // size_start, size_start + size_step, ... <= n_train_pool
    std::vector<std::size_t> sizes() const;
};

// Accuracy of each complete window of `window` consecutive predictions;
// a trailing partial window is dropped.
std::vector<double> window_scores(std::span<const int> y_true, std::span<const int> y_pred, std::size_t window);

// Fraction of scores strictly above `threshold`.
double success_rate(std::span<const double> scores, double threshold);

double mean(std::span<const double> values);

struct CurvePoint {
    std::size_t n_train = 0;
    double dsr = 0.0;
    double mean_accuracy = 0.0;
};

// Training pool (already shuffled) and the untouched test remainder.
struct SplitData {
    preprocess::FeatureMatrix pool;
    preprocess::FeatureMatrix test;
};

// First n_train_pool labeled samples shuffled once with the "shuffle"
// stream of cfg.seed, the rest kept in order.
SplitData prepare_split(std::span<const channel::MeasurementSample> samples, const EvalConfig& cfg);

// Trains on the first `n_train` pool rows and scores the test windows.
CurvePoint evaluate_size(const SplitData& data, std::size_t n_train, const svm::SvmParams& params,
                         const EvalConfig& cfg);

// One point per size in cfg.sizes(), training prefixes of one shuffled pool.
std::vector<CurvePoint> run_dsr_sweep(std::span<const channel::MeasurementSample> samples,
                                      const svm::SvmParams& params, const EvalConfig& cfg);

struct KernelComparison {
    std::vector<std::size_t> n_train;
    std::vector<double> acc_rbf;
    std::vector<double> acc_linear;
};

// Same protocol with the RBF kernel and a linear kernel (shared C).
KernelComparison run_kernel_comparison(std::span<const channel::MeasurementSample> samples,
                                       const svm::SvmParams& rbf_params, const EvalConfig& cfg);

}  // namespace uldl::evaluation
