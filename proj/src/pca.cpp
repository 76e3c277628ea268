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

#include "uldl/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uldl/errors.hpp"
#include "uldl/simd/kernels.hpp"

namespace uldl::pca {

EigenDecomposition symmetric_eigen(const Matrix& input, double off_tol, std::size_t max_sweeps) {
    const std::size_t n = input.rows();
    if (n != input.cols()) throw ParameterError("symmetric_eigen: matrix must be square");
    Matrix a = input;
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    std::size_t sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off < off_tol) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) < off_tol * 1e-3) continue;
                // Rotation angle that zeroes a(p,q) (Golub & Van Loan, sym.schur2).
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out;
    out.sweeps = sweep;
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values.push_back(a(order[k], order[k]));
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

Matrix covariance(const Matrix& x, std::vector<double>* mean_out) {
    if (x.rows() == 0) throw ParameterError("covariance: empty input");
    const std::size_t d = x.cols();
    const double n = static_cast<double>(x.rows());
    std::vector<double> mean(d, 0.0);
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t c = 0; c < d; ++c) mean[c] += x(r, c);
    for (double& m : mean) m /= n;

    // Center once, then column dot products.
    Matrix centered_t(d, x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t c = 0; c < d; ++c) centered_t(c, r) = x(r, c) - mean[c];
    Matrix cov(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j)
            cov(i, j) = cov(j, i) = simd::dot(centered_t.row(i), centered_t.row(j)) / n;
    if (mean_out) *mean_out = std::move(mean);
    return cov;
}

PcaModel pca_fit(const Matrix& x, std::size_t n_components) {
    if (n_components == 0) throw ParameterError("pca_fit: n_components must be >= 1");
    if (x.rows() < n_components) throw ParameterError("pca_fit: fewer rows than components");
    PcaModel model;
    const Matrix cov = covariance(x, &model.mean);
    const EigenDecomposition eig = symmetric_eigen(cov);
    model.all_eigenvalues = eig.values;

    double trace = 0.0;
    for (std::size_t i = 0; i < cov.rows(); ++i) trace += cov(i, i);
    const double floor = 1e-12 * std::max(trace, 0.0);

    const std::size_t d = x.cols();
    model.components = Matrix(0, d);
    for (std::size_t k = 0; k < std::min(n_components, d); ++k) {
        if (!(eig.values[k] > floor)) break;
        std::vector<double> comp(d);
        std::size_t big = 0;
        for (std::size_t r = 0; r < d; ++r) {
            comp[r] = eig.vectors(r, k);
            if (std::abs(comp[r]) > std::abs(comp[big])) big = r;
        }
        if (comp[big] < 0.0)
            for (double& c : comp) c = -c;
        model.components.append_row(comp);
        model.explained_variance.push_back(eig.values[k]);
    }
    model.rank_deficient = model.components.rows() < n_components;
    return model;
}

Matrix pca_project(const PcaModel& model, const Matrix& rows) {
    if (rows.rows() > 0 && rows.cols() != model.mean.size()) throw ParameterError("pca_project: dimension mismatch");
    const std::size_t k = model.n_components();
    Matrix out(rows.rows(), k);
    std::vector<double> centered(model.mean.size());
    for (std::size_t r = 0; r < rows.rows(); ++r) {
        for (std::size_t c = 0; c < centered.size(); ++c) centered[c] = rows(r, c) - model.mean[c];
        for (std::size_t j = 0; j < k; ++j) out(r, j) = simd::dot(centered, model.components.row(j));
    }
    return out;
}

Matrix pca_reconstruct(const PcaModel& model, const Matrix& coords) {
    if (coords.rows() > 0 && coords.cols() != model.n_components())
        throw ParameterError("pca_reconstruct: dimension mismatch");
    const std::size_t d = model.mean.size();
    Matrix out(coords.rows(), d);
    for (std::size_t r = 0; r < coords.rows(); ++r)
        for (std::size_t c = 0; c < d; ++c) {
            double v = model.mean[c];
            for (std::size_t j = 0; j < model.n_components(); ++j) v += coords(r, j) * model.components(j, c);
            out(r, c) = v;
        }
    return out;
}

}  // namespace uldl::pca
