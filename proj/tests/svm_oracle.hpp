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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "uldl/matrix.hpp"
#include "uldl/svm.hpp"

// Dense reference solver for the binary SVM dual, independent of the SMO code:
// accelerated projected gradient with an exact projection onto
// {a : y'a = 0, 0 <= a <= C}.
namespace uldl::testing {

struct OracleSolution {
    std::vector<double> alpha;
    double objective = 0.0;  // 0.5 a'Qa - e'a (minimization form)
    double bias = 0.0;
};

inline double kernel_value(const svm::SvmParams& p, std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    if (p.kernel == svm::KernelType::Linear) {
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    }
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::exp(-p.gamma * s);
}

inline std::vector<double> gram(const Matrix& x, const svm::SvmParams& p) {
    const std::size_t n = x.rows();
    std::vector<double> k(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) k[i * n + j] = kernel_value(p, x.row(i), x.row(j));
    return k;
}

// argmin |a - v| over the feasible set. a(lambda) = clip(v - lambda y, 0, C)
// makes y'a(lambda) nonincreasing in lambda, so bisection finds the root.
inline std::vector<double> project(const std::vector<double>& v, const std::vector<int>& y, double c) {
    const auto at = [&](double lam, std::vector<double>& a) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            a[i] = std::clamp(v[i] - lam * y[i], 0.0, c);
            s += y[i] * a[i];
        }
        return s;
    };
    std::vector<double> a(v.size());
    double lo = -1.0, hi = 1.0;
    while (at(lo, a) < 0.0) lo *= 2.0;
    while (at(hi, a) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (at(mid, a) > 0.0 ? lo : hi) = mid;
    }
    at(0.5 * (lo + hi), a);
    return a;
}

inline OracleSolution solve_dual_oracle(const Matrix& x, const std::vector<int>& y, const svm::SvmParams& p,
                                        int iterations = 40000) {
    const std::size_t n = x.rows();
    const auto k = gram(x, p);
    std::vector<double> q(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q[i * n + j] = y[i] * y[j] * k[i * n + j];
    // Lipschitz bound: Gershgorin on Q.
    double lip = 1e-12;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j) r += std::abs(q[i * n + j]);
        lip = std::max(lip, r);
    }
    const auto grad = [&](const std::vector<double>& a) {
        std::vector<double> g(n, -1.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g[i] += q[i * n + j] * a[j];
        return g;
    };
    const auto objective = [&](const std::vector<double>& a) {
        double f = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            f -= a[i];
            for (std::size_t j = 0; j < n; ++j) f += 0.5 * a[i] * q[i * n + j] * a[j];
        }
        return f;
    };

    std::vector<double> a(n, 0.0), z = a, prev = a;
    double t = 1.0;
    for (int it = 0; it < iterations; ++it) {
        const auto g = grad(z);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = z[i] - g[i] / lip;
        prev = a;
        a = project(v, y, p.c);
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        for (std::size_t i = 0; i < n; ++i) z[i] = a[i] + ((t - 1.0) / t_next) * (a[i] - prev[i]);
        t = t_next;
        // Restart momentum when the objective goes up.
        if (objective(a) > objective(prev)) {
            z = a;
            t = 1.0;
        }
        double moved = 0.0;
        for (std::size_t i = 0; i < n; ++i) moved = std::max(moved, std::abs(a[i] - prev[i]));
        if (moved < 1e-15 * std::max(1.0, p.c) && it > 100) break;
    }

    OracleSolution sol;
    sol.alpha = a;
    sol.objective = objective(a);

    // Bias: mean over free vectors of y_i - sum_j a_j y_j K_ij, otherwise the
    // midpoint of the interval allowed by the bound vectors.
    const double eps = 1e-6 * p.c;
    double sum = 0.0;
    int free_count = 0;
    double lo = -1e300, hi = 1e300;
    for (std::size_t i = 0; i < n; ++i) {
        double f = 0.0;
        for (std::size_t j = 0; j < n; ++j) f += a[j] * y[j] * k[i * n + j];
        const double r = y[i] - f;
        if (a[i] > eps && a[i] < p.c - eps) {
            sum += r;
            ++free_count;
        } else if ((a[i] <= eps) == (y[i] > 0)) {
            lo = std::max(lo, r);
        } else {
            hi = std::min(hi, r);
        }
    }
    sol.bias = free_count ? sum / free_count : 0.5 * (lo + hi);
    return sol;
}

inline double oracle_decision(const Matrix& x, const std::vector<int>& y, const svm::SvmParams& p,
                              const OracleSolution& sol, std::span<const double> point) {
    double f = sol.bias;
    for (std::size_t i = 0; i < x.rows(); ++i) f += sol.alpha[i] * y[i] * kernel_value(p, x.row(i), point);
    return f;
}

struct RandomInstance {
    Matrix x;
    std::vector<int> y;
    svm::SvmParams params;
};

// n in [4, 12], d in [1, 3], both labels present, varied hyperparameters.
inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t index) {
    std::uniform_int_distribution<std::size_t> n_dist(4, 12), d_dist(1, 3);
    std::normal_distribution<double> g(0.0, 1.0);
    RandomInstance inst;
    const std::size_t n = n_dist(rng), d = d_dist(rng);
    inst.x = Matrix(n, d);
    std::bernoulli_distribution coin(0.5);
    const double shift = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    for (std::size_t i = 0; i < n; ++i) {
        const int label = i == 0 ? 1 : i == 1 ? -1 : (coin(rng) ? 1 : -1);
        inst.y.push_back(label);
        for (std::size_t j = 0; j < d; ++j) inst.x(i, j) = g(rng) + (j == 0 ? shift * label : 0.0);
    }
    const double cs[] = {0.1, 1.0, 10.0};
    inst.params.kernel = index % 2 ? svm::KernelType::Linear : svm::KernelType::Rbf;
    inst.params.c = cs[(index / 2) % 3];
    inst.params.gamma = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
    return inst;
}

}  // namespace uldl::testing
