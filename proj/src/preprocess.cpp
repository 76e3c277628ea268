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

#include "uldl/preprocess.hpp"

#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "uldl/errors.hpp"
#include "uldl/rng.hpp"
#include "uldl/simd/kernels.hpp"
#include "uldl/text_format.hpp"

namespace uldl::preprocess {

void FeatureMatrix::validate() const {
    if (x.rows() > 0 && x.cols() != kNumFeatures)
        throw ParameterError("FeatureMatrix: expected " + std::to_string(kNumFeatures) + " columns");
    if (y.size() != x.rows()) throw ParameterError("FeatureMatrix: label count != row count");
    for (int v : y)
        if (v < 1 || v > 4) throw ParameterError("FeatureMatrix: label outside 1..4");
}

std::array<double, kNumFeatures> sub6_feature_row(const channel::MeasurementSample& sample) {
    std::array<double, kNumFeatures> row{};
    const auto& b = sample.sub6();
    for (std::size_t i = 0; i < channel::kNumAps; ++i) {
        row[i] = b.k_factor_db[i];
        row[channel::kNumAps + i] = b.rsrp_dbm[i];
    }
    return row;
}

FeatureMatrix sub6_features(std::span<const channel::MeasurementSample> samples) {
    FeatureMatrix fm;
    fm.x = Matrix(0, kNumFeatures);
    fm.y.reserve(samples.size());
    for (const auto& s : samples) {
        if (!s.label) throw DataError("sample " + std::to_string(s.sample_id) + " has no label");
        fm.x.append_row(sub6_feature_row(s));
        fm.y.push_back(to_int(*s.label));
    }
    return fm;
}

std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(idx[i - 1], idx[pick(rng)]);
    }
    return idx;
}

FeatureMatrix shuffle(const FeatureMatrix& features, std::uint64_t seed) {
    const auto idx = permutation(features.rows(), seed);
    FeatureMatrix out;
    out.x = features.x.select_rows(idx);
    out.y.reserve(idx.size());
    for (std::size_t i : idx) out.y.push_back(features.y[i]);
    return out;
}

std::pair<FeatureMatrix, FeatureMatrix> split(const FeatureMatrix& features, std::size_t n_train) {
    const std::size_t n = features.rows();
    if (n_train == 0 || n_train >= n)
        throw ParameterError("split: n_train must satisfy 0 < n_train < " + std::to_string(n) + ", got " +
                             std::to_string(n_train));
    std::vector<std::size_t> head(n_train), tail(n - n_train);
    std::iota(head.begin(), head.end(), std::size_t{0});
    std::iota(tail.begin(), tail.end(), n_train);
    FeatureMatrix train{features.x.select_rows(head), {features.y.begin(), features.y.begin() + n_train}};
    FeatureMatrix test{features.x.select_rows(tail), {features.y.begin() + n_train, features.y.end()}};
    return {std::move(train), std::move(test)};
}

ScalerParams scaler_fit(const Matrix& rows) {
    if (rows.rows() == 0) throw ParameterError("scaler_fit: empty input");
    const std::size_t d = rows.cols();
    const double n = static_cast<double>(rows.rows());
    ScalerParams p{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
    for (std::size_t r = 0; r < rows.rows(); ++r)
        for (std::size_t c = 0; c < d; ++c) p.mean[c] += rows(r, c);
    for (double& m : p.mean) m /= n;
    // Two-pass variance.
    for (std::size_t r = 0; r < rows.rows(); ++r)
        for (std::size_t c = 0; c < d; ++c) {
            const double dev = rows(r, c) - p.mean[c];
            p.std[c] += dev * dev;
        }
    for (double& s : p.std) {
        s = std::sqrt(s / n);
        if (!(s > 0.0)) s = 1.0;
    }
    return p;
}

Matrix scaler_apply(const ScalerParams& params, const Matrix& rows) {
    if (rows.rows() > 0 && rows.cols() != params.dim())
        throw ParameterError("scaler_apply: dimension mismatch");
    Matrix out = rows;
    std::vector<double> inv(params.dim());
    for (std::size_t c = 0; c < inv.size(); ++c) inv[c] = 1.0 / params.std[c];
    simd::standardize_rows(out.values(), params.mean, inv);
    return out;
}

Matrix scaler_inverse(const ScalerParams& params, const Matrix& rows) {
    if (rows.rows() > 0 && rows.cols() != params.dim())
        throw ParameterError("scaler_inverse: dimension mismatch");
    Matrix out = rows;
    for (std::size_t r = 0; r < out.rows(); ++r)
        for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = out(r, c) * params.std[c] + params.mean[c];
    return out;
}

void write_scaler(std::ostream& out, const ScalerParams& params) {
    out << "dim = " << params.dim() << '\n';
    out << "mean = " << text::join_doubles(params.mean) << '\n';
    out << "std = " << text::join_doubles(params.std) << '\n';
}

ScalerParams read_scaler(std::istream& in) {
    const auto kv = text::read_key_values(in);
    const std::size_t d = text::parse_size(text::require_value(kv, "dim"), "dim");
    ScalerParams p{text::parse_doubles(text::require_value(kv, "mean")),
                   text::parse_doubles(text::require_value(kv, "std"))};
    if (p.mean.size() != d || p.std.size() != d) throw DataError("scaler: vector length != dim");
    for (double s : p.std)
        if (!(s > 0.0)) throw DataError("scaler: std must be > 0");
    return p;
}

}  // namespace uldl::preprocess
