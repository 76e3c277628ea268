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

#include <immintrin.h>

#include <cmath>

#include "uldl/simd/kernels.hpp"

// Compiled with -mavx2 -mfma; only reached after the runtime cpuid check.
namespace uldl::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_fmadd_pd(d, d, acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void rbf_row(const double* x, std::size_t dim, const double* rows, std::size_t n_rows, double gamma,
             double* out) {
    for (std::size_t r = 0; r < n_rows; ++r) out[r] = squared_distance(x, rows + r * dim, dim);
    // exp stays scalar: libm is exact enough and keeps both variants within a few ulp.
    for (std::size_t r = 0; r < n_rows; ++r) out[r] = std::exp(-gamma * out[r]);
}

void linear_row(const double* x, std::size_t dim, const double* rows, std::size_t n_rows, double* out) {
    for (std::size_t r = 0; r < n_rows; ++r) out[r] = dot(x, rows + r * dim, dim);
}

void standardize_rows(double* values, std::size_t n_rows, std::size_t dim, const double* mean,
                      const double* inv_std) {
    for (std::size_t r = 0; r < n_rows; ++r) {
        double* row = values + r * dim;
        std::size_t c = 0;
        for (; c + 4 <= dim; c += 4) {
            const __m256d v = _mm256_sub_pd(_mm256_loadu_pd(row + c), _mm256_loadu_pd(mean + c));
            _mm256_storeu_pd(row + c, _mm256_mul_pd(v, _mm256_loadu_pd(inv_std + c)));
        }
        for (; c < dim; ++c) row[c] = (row[c] - mean[c]) * inv_std[c];
    }
}

}  // namespace uldl::simd::avx2
