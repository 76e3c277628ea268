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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "uldl/simd/kernels.hpp"

namespace uldl::simd {

namespace {

struct Table {
    double (*dot)(const double*, const double*, std::size_t);
    double (*squared_distance)(const double*, const double*, std::size_t);
    void (*rbf_row)(const double*, std::size_t, const double*, std::size_t, double, double*);
    void (*linear_row)(const double*, std::size_t, const double*, std::size_t, double*);
    void (*standardize_rows)(double*, std::size_t, std::size_t, const double*, const double*);
};

constexpr Table kScalar{scalar::dot, scalar::squared_distance, scalar::rbf_row, scalar::linear_row,
                        scalar::standardize_rows};
#if defined(ULDL_HAVE_AVX2)
constexpr Table kAvx2{avx2::dot, avx2::squared_distance, avx2::rbf_row, avx2::linear_row,
                      avx2::standardize_rows};
#endif

bool cpu_has_avx2() {
#if defined(ULDL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

// ULDL_SIMD=scalar forces the reference path for a whole process.
Isa initial_isa() {
    if (const char* env = std::getenv("ULDL_SIMD"); env != nullptr && std::string(env) == "scalar")
        return Isa::Scalar;
    return detected_isa();
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

const Table& table() {
#if defined(ULDL_HAVE_AVX2)
    if (current().load(std::memory_order_relaxed) == Isa::Avx2) return kAvx2;
#endif
    return kScalar;
}

void require_same_size(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("simd: dimension mismatch");
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
    static const Isa isa = cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
    return isa;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) {
    if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) isa = Isa::Scalar;
    current().store(isa, std::memory_order_relaxed);
    return isa;
}

double dot(std::span<const double> a, std::span<const double> b) {
    require_same_size(a.size(), b.size());
    return table().dot(a.data(), b.data(), a.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    require_same_size(a.size(), b.size());
    return table().squared_distance(a.data(), b.data(), a.size());
}

void rbf_row(std::span<const double> x, std::span<const double> rows, double gamma,
             std::span<double> out) {
    require_same_size(rows.size(), x.size() * out.size());
    table().rbf_row(x.data(), x.size(), rows.data(), out.size(), gamma, out.data());
}

void linear_row(std::span<const double> x, std::span<const double> rows, std::span<double> out) {
    require_same_size(rows.size(), x.size() * out.size());
    table().linear_row(x.data(), x.size(), rows.data(), out.size(), out.data());
}

void standardize_rows(std::span<double> values, std::span<const double> mean,
                      std::span<const double> inv_std) {
    require_same_size(mean.size(), inv_std.size());
    if (mean.empty()) return;
    if (values.size() % mean.size() != 0) throw std::invalid_argument("simd: ragged rows");
    table().standardize_rows(values.data(), values.size() / mean.size(), mean.size(), mean.data(),
                             inv_std.data());
}

}  // namespace uldl::simd
