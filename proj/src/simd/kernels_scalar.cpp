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

#include "uldl/simd/kernels.hpp"

#include <cmath>

namespace uldl::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void rbf_row(const double* x, std::size_t dim, const double* rows, std::size_t n_rows, double gamma,
             double* out) {
    for (std::size_t r = 0; r < n_rows; ++r)
        out[r] = std::exp(-gamma * squared_distance(x, rows + r * dim, dim));
}

void linear_row(const double* x, std::size_t dim, const double* rows, std::size_t n_rows, double* out) {
    for (std::size_t r = 0; r < n_rows; ++r) out[r] = dot(x, rows + r * dim, dim);
}

void standardize_rows(double* values, std::size_t n_rows, std::size_t dim, const double* mean,
                      const double* inv_std) {
    for (std::size_t r = 0; r < n_rows; ++r) {
        double* row = values + r * dim;
        for (std::size_t c = 0; c < dim; ++c) row[c] = (row[c] - mean[c]) * inv_std[c];
    }
}

}  // namespace uldl::simd::scalar
