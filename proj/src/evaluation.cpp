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

#include "uldl/evaluation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "uldl/errors.hpp"
#include "uldl/rng.hpp"

namespace uldl::evaluation {

void EvalConfig::validate() const {
    if (size_start < 1) throw ParameterError("eval: size_start must be >= 1");
    if (size_step < 1) throw ParameterError("eval: size_step must be >= 1");
    if (n_train_pool >= n_total) throw ParameterError("eval: n_train_pool must be < n_total");
    if (window_l < 1) throw ParameterError("eval: window length must be >= 1");
    if (!(as_valid_threshold > 0.0 && as_valid_threshold <= 1.0))
        throw ParameterError("eval: AS validity threshold must be in (0, 1]");
    if (n_test_windows() == 0) throw ParameterError("eval: test remainder shorter than one window");
}

std::size_t EvalConfig::n_test_windows() const {
    return n_total > n_train_pool ? (n_total - n_train_pool) / window_l : 0;
}

std::vector<std::size_t> EvalConfig::sizes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = size_start; i <= n_train_pool; i += size_step) out.push_back(i);
    return out;
}

std::vector<double> window_scores(std::span<const int> y_true, std::span<const int> y_pred, std::size_t window) {
    if (y_true.size() != y_pred.size()) throw ParameterError("window_scores: length mismatch");
    if (window == 0) throw ParameterError("window_scores: window must be >= 1");
    const std::size_t n_windows = y_true.size() / window;
    std::vector<double> scores(n_windows);
    for (std::size_t j = 0; j < n_windows; ++j) {
        std::size_t hits = 0;
        for (std::size_t l = 0; l < window; ++l) hits += y_true[j * window + l] == y_pred[j * window + l];
        scores[j] = static_cast<double>(hits) / static_cast<double>(window);
    }
    return scores;
}

double success_rate(std::span<const double> scores, double threshold) {
    if (scores.empty()) throw ParameterError("success_rate: no windows");
    const auto valid = std::count_if(scores.begin(), scores.end(), [&](double s) { return s > threshold; });
    return static_cast<double>(valid) / static_cast<double>(scores.size());
}

double mean(std::span<const double> values) {
    if (values.empty()) throw ParameterError("mean: empty input");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

SplitData prepare_split(std::span<const channel::MeasurementSample> samples, const EvalConfig& cfg) {
    cfg.validate();
    if (samples.size() != cfg.n_total)
        throw ParameterError("eval: dataset has " + std::to_string(samples.size()) + " samples, expected " +
                             std::to_string(cfg.n_total));
    const auto all = preprocess::sub6_features(samples);
    auto [pool, test] = preprocess::split(all, cfg.n_train_pool);
    return {preprocess::shuffle(pool, derive_seed(cfg.seed, "shuffle")), std::move(test)};
}

CurvePoint evaluate_size(const SplitData& data, std::size_t n_train, const svm::SvmParams& params,
                         const EvalConfig& cfg) {
    if (n_train == 0 || n_train > data.pool.rows()) throw ParameterError("eval: training size out of range");
    std::vector<std::size_t> prefix(n_train);
    std::iota(prefix.begin(), prefix.end(), std::size_t{0});
    const Matrix x = data.pool.x.select_rows(prefix);
    const std::span<const int> y(data.pool.y.data(), n_train);

    std::vector<int> predicted;
    if (std::adjacent_find(y.begin(), y.end(), std::not_equal_to<>()) == y.end()) {
        // Single-class prefix: nothing to separate, predict that class.
        predicted.assign(data.test.rows(), y.front());
    } else {
        predicted = svm::predict(svm::train_ovo(x, y, params), data.test.x);
    }
    const auto scores = window_scores(data.test.y, predicted, cfg.window_l);
    return {n_train, success_rate(scores, cfg.as_valid_threshold), mean(scores)};
}

std::vector<CurvePoint> run_dsr_sweep(std::span<const channel::MeasurementSample> samples,
                                      const svm::SvmParams& params, const EvalConfig& cfg) {
    params.validate();
    const SplitData data = prepare_split(samples, cfg);
    std::vector<CurvePoint> out;
    for (std::size_t n : cfg.sizes()) out.push_back(evaluate_size(data, n, params, cfg));
    return out;
}

KernelComparison run_kernel_comparison(std::span<const channel::MeasurementSample> samples,
                                       const svm::SvmParams& rbf_params, const EvalConfig& cfg) {
    svm::SvmParams rbf = rbf_params;
    rbf.kernel = svm::KernelType::Rbf;
    svm::SvmParams lin = rbf_params;
    lin.kernel = svm::KernelType::Linear;
    rbf.validate();
    lin.validate();

    const SplitData data = prepare_split(samples, cfg);
    KernelComparison out;
    for (std::size_t n : cfg.sizes()) {
        out.n_train.push_back(n);
        out.acc_rbf.push_back(evaluate_size(data, n, rbf, cfg).mean_accuracy);
        out.acc_linear.push_back(evaluate_size(data, n, lin, cfg).mean_accuracy);
    }
    return out;
}

}  // namespace uldl::evaluation
