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
#include <string_view>

// Data-parallel primitives behind the SVM kernel rows, distance evaluations
// and feature standardization. Each primitive has a scalar reference
// implementation and, on x86-64, an AVX2/FMA variant. The variant is picked
// once at first use from cpuid; tests can pin either one.
namespace uldl::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

// Best variant this CPU and build support.
Isa detected_isa();

// Variant currently used by the dispatching entry points below.
Isa active_isa();

// Pins the dispatch target. Requesting Avx2 on a machine without it falls
// back to Scalar; the return value is what actually got selected.
Isa set_active_isa(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

// out[r] = exp(-gamma * |x - rows[r]|^2) where `rows` holds out.size()
// row-major vectors of length x.size().
void rbf_row(std::span<const double> x, std::span<const double> rows, double gamma,
             std::span<double> out);

// out[r] = <x, rows[r]>
void linear_row(std::span<const double> x, std::span<const double> rows, std::span<double> out);

// In place: values[r*dim + c] = (values[r*dim + c] - mean[c]) * inv_std[c]
void standardize_rows(std::span<double> values, std::span<const double> mean,
                      std::span<const double> inv_std);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void rbf_row(const double* x, std::size_t dim, const double* rows, std::size_t n_rows, double gamma,
             double* out);
void linear_row(const double* x, std::size_t dim, const double* rows, std::size_t n_rows, double* out);
void standardize_rows(double* values, std::size_t n_rows, std::size_t dim, const double* mean,
                      const double* inv_std);
}  // namespace scalar

#if defined(ULDL_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void rbf_row(const double* x, std::size_t dim, const double* rows, std::size_t n_rows, double gamma,
             double* out);
void linear_row(const double* x, std::size_t dim, const double* rows, std::size_t n_rows, double* out);
void standardize_rows(double* values, std::size_t n_rows, std::size_t dim, const double* mean,
                      const double* inv_std);
}  // namespace avx2
#endif

}  // namespace uldl::simd
