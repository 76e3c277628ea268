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
#include <vector>

#include "uldl/matrix.hpp"

namespace uldl::pca {

struct EigenDecomposition {
    // Descending.
    std::vector<double> values;
    // Column k is the unit eigenvector of values[k].
    Matrix vectors;
    std::size_t sweeps = 0;
};

// Cyclic Jacobi rotations on a symmetric matrix until every off-diagonal
// entry is below `off_tol` in absolute value.
EigenDecomposition symmetric_eigen(const Matrix& a, double off_tol = 1e-12, std::size_t max_sweeps = 100);

// Population (1/n) covariance of the rows.
Matrix covariance(const Matrix& x, std::vector<double>* mean_out = nullptr);

struct PcaModel {
    std::vector<double> mean;
    // One orthonormal component per row; the largest-magnitude entry is positive.
    Matrix components;
    std::vector<double> explained_variance;
    // Full spectrum of the covariance, descending.
    std::vector<double> all_eigenvalues;
    // Fewer than the requested components had nonzero variance.
    bool rank_deficient = false;

    std::size_t n_components() const { return components.rows(); }
};

// Components with eigenvalue above 1e-12 * trace are kept, up to n_components.
PcaModel pca_fit(const Matrix& x, std::size_t n_components = 3);

// (x - mean) * components^T
Matrix pca_project(const PcaModel& model, const Matrix& rows);
Matrix pca_reconstruct(const PcaModel& model, const Matrix& coords);

}  // namespace uldl::pca
