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
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "uldl/matrix.hpp"
#include "uldl/preprocess.hpp"

// Soft-margin kernel SVM trained by SMO, with a one-vs-one multiclass wrapper.
namespace uldl::svm {

enum class KernelType { Rbf, Linear };

const char* kernel_name(KernelType k);
KernelType parse_kernel(std::string_view name);

struct SvmParams {
    KernelType kernel = KernelType::Rbf;
    double c = 1.0;
    // K(x, z) = exp(-gamma * |x - z|^2)
    double gamma = 0.4;
    // Stop when the maximal KKT violation (m(a) - M(a)) drops below tol.
    double tol = 1e-3;
    // 0 selects max(10^7, 100 n).
    std::size_t max_iterations = 0;

    void validate() const;
};

double kernel_eval(const SvmParams& params, std::span<const double> x, std::span<const double> z);

// Full dual state, indexed like the input rows.
struct SmoSolution {
    std::vector<double> alpha;
    // Gradient of 0.5 a'Qa - e'a at `alpha`.
    std::vector<double> gradient;
    double bias = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

// Solves min 0.5 a'Qa - e'a  s.t. y'a = 0, 0 <= a <= C, Q_ij = y_i y_j K_ij,
// with maximal-gain (second order) working-pair selection. Rows are visited
// in a canonical order (lexicographic on features, then label), so the
// result does not depend on input order. Labels must be -1/+1 with both present.
SmoSolution solve_smo(const Matrix& x, std::span<const int> y, const SvmParams& params);

struct BinaryModel {
    // Decision > 0 votes for positive_class.
    int positive_class = +1;
    int negative_class = -1;
    Matrix support_vectors;
    // alpha_i * y_i, nonzero.
    std::vector<double> dual_coefs;
    double bias = 0.0;
    bool converged = true;
    std::size_t iterations = 0;

    double decision(const SvmParams& params, std::span<const double> x) const;
};

// y in {-1, +1}; both classes required.
BinaryModel train_binary(const Matrix& x, std::span<const int> y, const SvmParams& params);

// sum(alpha) - 0.5 sum_ij alpha_i alpha_j y_i y_j K_ij over the support vectors.
double dual_objective(const BinaryModel& model, const SvmParams& params);

struct MulticlassModel {
    SvmParams params;
    preprocess::ScalerParams scaler;
    // Sorted distinct training labels.
    std::vector<int> classes;
    // One per class pair (a < b), a as the positive class, in lexicographic pair order.
    std::vector<BinaryModel> binaries;

    // Fewer than the four decoupling classes were seen in training.
    bool reduced_class_set() const { return classes.size() < 4; }
    std::size_t dim() const { return scaler.dim(); }
};

// Fits the scaler on `x`, then one binary model per class pair on that
// pair's standardized rows. Needs at least two distinct labels.
MulticlassModel train_ovo(const Matrix& x, std::span<const int> y, const SvmParams& params);

// Raw (unstandardized) rows in; plurality vote out, ties to the lowest class.
std::vector<int> predict(const MulticlassModel& model, const Matrix& rows);

double accuracy_score(std::span<const int> y_true, std::span<const int> y_pred);

void write_model(std::ostream& out, const MulticlassModel& model);
MulticlassModel read_model(std::istream& in);

}  // namespace uldl::svm
