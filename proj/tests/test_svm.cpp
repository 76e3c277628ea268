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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "svm_oracle.hpp"
#include "test_support.hpp"
#include "uldl/errors.hpp"
#include "uldl/simd/kernels.hpp"
#include "uldl/svm.hpp"

using namespace uldl;
using namespace uldl::svm;
using Catch::Matchers::WithinAbs;

namespace {

SvmParams linear_params(double c = 1.0) {
    SvmParams p;
    p.kernel = KernelType::Linear;
    p.c = c;
    return p;
}

// Gaussian blobs around four corners, labels 1..4.
std::pair<Matrix, std::vector<int>> blobs(std::mt19937_64& rng, std::size_t per_class, double spread,
                                          std::size_t n_classes = 4) {
    std::normal_distribution<double> g(0.0, spread);
    const double centers[4][2] = {{0, 0}, {4, 0}, {0, 4}, {4, 4}};
    Matrix x;
    std::vector<int> y;
    for (std::size_t c = 0; c < n_classes; ++c)
        for (std::size_t i = 0; i < per_class; ++i) {
            const std::array<double, 2> row{centers[c][0] + g(rng), centers[c][1] + g(rng)};
            x.append_row(row);
            y.push_back(static_cast<int>(c) + 1);
        }
    return {x, y};
}

Matrix grid(double lo, double hi, std::size_t steps) {
    Matrix g;
    for (std::size_t i = 0; i < steps; ++i)
        for (std::size_t j = 0; j < steps; ++j) {
            const double a = lo + (hi - lo) * i / (steps - 1.0), b = lo + (hi - lo) * j / (steps - 1.0);
            g.append_row(std::array<double, 2>{a, b});
        }
    return g;
}

BinaryModel constant_vote(int positive, int negative, double sign, std::size_t dim) {
    BinaryModel bm;
    bm.positive_class = positive;
    bm.negative_class = negative;
    bm.support_vectors = Matrix(0, dim);
    bm.bias = sign;
    return bm;
}

}  // namespace

TEST_CASE("kernel values") {
    SvmParams rbf;
    const std::vector<double> x{0.3, -1.2}, z{0.3 + 1.5, -1.2 + 0.5};
    CHECK(kernel_eval(rbf, x, x) == 1.0);
    // |x - z|^2 = 2.25 + 0.25 = 2.5, gamma 0.4 -> exp(-1)
    CHECK_THAT(kernel_eval(rbf, x, z), WithinAbs(0.36787944117144233, 1e-15));
    CHECK(kernel_eval(linear_params(), std::vector<double>{1, 2}, std::vector<double>{3, 4}) == 11.0);
    CHECK(parse_kernel("rbf") == KernelType::Rbf);
    CHECK(parse_kernel("linear") == KernelType::Linear);
    CHECK_THROWS_AS(parse_kernel("poly"), ParameterError);
}

TEST_CASE("parameter validation") {
    SvmParams p;
    p.c = 0.0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = {};
    p.gamma = -1.0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = {};
    p.tol = 0.0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
}

TEST_CASE("separable four-point set: max-margin boundary at x1 = 1") {
    const Matrix x(4, 2, std::vector<double>{0, 0, 0, 1, 2, 0, 2, 1});
    const std::vector<int> y{-1, -1, 1, 1};
    const auto p = linear_params();
    const auto m = train_binary(x, y, p);
    for (std::size_t i = 0; i < 4; ++i) CHECK((m.decision(p, x.row(i)) > 0) == (y[i] > 0));
    std::array<double, 2> w{0, 0};
    for (std::size_t s = 0; s < m.support_vectors.rows(); ++s)
        for (std::size_t j = 0; j < 2; ++j) w[j] += m.dual_coefs[s] * m.support_vectors(s, j);
    CHECK_THAT(w[1], WithinAbs(0.0, 1e-6));
    CHECK_THAT(-m.bias / w[0], WithinAbs(1.0, 0.1));

    // Brute-force dual grid search agrees on the optimum.
    const auto oracle = testing::solve_dual_oracle(x, y, p);
    CHECK_THAT(-dual_objective(m, p), WithinAbs(oracle.objective, 1e-4));
}

TEST_CASE("two points: boundary is the perpendicular bisector") {
    const Matrix x(2, 2, std::vector<double>{2, 2, 0, 0});
    const std::vector<int> y{1, -1};
    const auto p = linear_params(10.0);
    const auto m = train_binary(x, y, p);
    for (auto pt : {std::array<double, 2>{1, 1}, {2, 0}, {0, 2}, {-3, 5}})
        CHECK_THAT(m.decision(p, pt), WithinAbs(0.0, 1e-9));
    CHECK(m.decision(p, std::array<double, 2>{1.5, 1.5}) > 0);
}

TEST_CASE("binary training preconditions") {
    const Matrix x(3, 1, std::vector<double>{0, 1, 2});
    CHECK_THROWS_AS(train_binary(x, std::vector<int>{1, 1, 1}, SvmParams{}), ParameterError);
    CHECK_THROWS_AS(train_binary(x, std::vector<int>{1, 0, -1}, SvmParams{}), ParameterError);
    CHECK_THROWS_AS(train_binary(x, std::vector<int>{1, -1}, SvmParams{}), ParameterError);
}

TEST_CASE("one-vs-one structure") {
    std::mt19937_64 rng(2);
    auto [x, y] = blobs(rng, 20, 0.4);
    const SvmParams p;
    const auto m = train_ovo(x, y, p);
    CHECK(m.classes == std::vector<int>{1, 2, 3, 4});
    REQUIRE(m.binaries.size() == 6);
    CHECK_FALSE(m.reduced_class_set());

    // Each binary only saw rows of its own pair.
    const Matrix xs = preprocess::scaler_apply(m.scaler, x);
    std::size_t k = 0;
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b, ++k) {
            const auto& bm = m.binaries[k];
            CHECK(bm.positive_class == a);
            CHECK(bm.negative_class == b);
            for (std::size_t s = 0; s < bm.support_vectors.rows(); ++s) {
                bool found = false;
                for (std::size_t r = 0; r < xs.rows() && !found; ++r) {
                    const auto row = xs.row(r);
                    const auto sv = bm.support_vectors.row(s);
                    if (std::equal(row.begin(), row.end(), sv.begin())) {
                        found = true;
                        CHECK((y[r] == a || y[r] == b));
                        CHECK((bm.dual_coefs[s] > 0) == (y[r] == a));
                    }
                }
                CHECK(found);
            }
        }

    // Clean separation: every support vector predicts its own class.
    const auto pred = predict(m, x);
    CHECK(accuracy_score(y, pred) == 1.0);

    auto [x2, y2] = blobs(rng, 15, 0.4, 2);
    const auto m2 = train_ovo(x2, y2, p);
    CHECK(m2.binaries.size() == 1);
    CHECK(m2.reduced_class_set());
    CHECK_THROWS_AS(train_ovo(x2, std::vector<int>(y2.size(), 3), p), ParameterError);
}

TEST_CASE("voting: unanimity and lowest-class tie-break") {
    MulticlassModel m;
    m.classes = {1, 2, 3, 4};
    m.scaler = {{0.0}, {1.0}};
    // Pairs (1,2) (1,3) (1,4) (2,3) (2,4) (3,4).
    const double all_three[] = {-1, -1, +1, -1, +1, +1};
    std::size_t k = 0;
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) m.binaries.push_back(constant_vote(a, b, all_three[k++], 1));
    const Matrix one(1, 1, std::vector<double>{0.0});
    CHECK(predict(m, one) == std::vector<int>{3});

    // Votes 1:2, 2:2, 3:1, 4:1.
    const double tie[] = {+1, +1, -1, +1, +1, +1};
    for (std::size_t i = 0; i < 6; ++i) m.binaries[i].bias = tie[i];
    CHECK(predict(m, one) == std::vector<int>{1});
}

TEST_CASE("accuracy score") {
    const std::vector<int> a{1, 2, 3, 4};
    CHECK(accuracy_score(a, a) == 1.0);
    CHECK(accuracy_score(a, std::vector<int>{1, 2, 3, 1}) == 0.75);
    CHECK(accuracy_score(a, std::vector<int>{2, 3, 4, 1}) == 0.0);
    CHECK_THROWS_AS(accuracy_score(a, std::vector<int>{1}), ParameterError);
}

TEST_CASE("KKT residuals at tol 1e-3") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        auto [x, y4] = blobs(rng, 25, 1.2, 2);
        std::vector<int> y;
        for (int v : y4) y.push_back(v == 1 ? 1 : -1);
        SvmParams p;
        p.kernel = t % 2 ? KernelType::Linear : KernelType::Rbf;
        p.c = t % 3 == 0 ? 10.0 : 1.0;
        const auto sol = solve_smo(x, y, p);
        REQUIRE(sol.converged);
        const auto m = train_binary(x, y, p);
        const double eps = 1e-8 * p.c;
        for (std::size_t i = 0; i < x.rows(); ++i) {
            const double a = sol.alpha[i];
            CHECK(a >= 0.0);
            CHECK(a <= p.c);
            const double margin = y[i] * m.decision(p, x.row(i));
            if (a > eps && a < p.c - eps) {
                CHECK(std::abs(margin - 1.0) <= p.tol);
            } else if (a <= eps) {
                CHECK(margin >= 1.0 - p.tol);
            } else {
                CHECK(margin <= 1.0 + p.tol);
            }
        }
    }
}

TEST_CASE("RBF Gram matrix is positive semidefinite") {
    // Independent check: Cholesky of K + 1e-8 I succeeds iff min eigenvalue > -1e-8.
    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        const Matrix x = testing::random_matrix(rng, 50, 10, t % 2 ? 0.3 : 2.0);
        const std::size_t n = x.rows();
        std::vector<double> k(n * n);
        for (std::size_t i = 0; i < n; ++i)
            simd::rbf_row(x.row(i), x.values(), 0.4, std::span<double>(k.data() + i * n, n));
        for (std::size_t i = 0; i < n; ++i) k[i * n + i] += 1e-8;
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            double d = k[j * n + j];
            for (std::size_t m = 0; m < j; ++m) d -= k[j * n + m] * k[j * n + m];
            if (d <= 0.0) {
                ok = false;
                break;
            }
            d = std::sqrt(d);
            k[j * n + j] = d;
            for (std::size_t i = j + 1; i < n; ++i) {
                double s = k[i * n + j];
                for (std::size_t m = 0; m < j; ++m) s -= k[i * n + m] * k[j * n + m];
                k[i * n + j] = s / d;
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("training order does not change predictions") {
    std::mt19937_64 rng(10);
    auto [x, y] = blobs(rng, 30, 1.5);
    const auto g = grid(-2, 6, 15);
    const auto base = predict(train_ovo(x, y, SvmParams{}), g);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto perm = preprocess::permutation(x.rows(), seed);
        std::vector<int> yp;
        for (auto i : perm) yp.push_back(y[i]);
        CHECK(predict(train_ovo(x.select_rows(perm), yp, SvmParams{}), g) == base);
    }
}

TEST_CASE("model serialization round-trips") {
    std::mt19937_64 rng(11);
    auto [x, y] = blobs(rng, 20, 1.5);
    SvmParams p;
    p.c = 2.5;
    p.gamma = 0.7;
    const auto m = train_ovo(x, y, p);
    std::stringstream ss;
    write_model(ss, m);
    const std::string text = ss.str();
    const auto back = read_model(ss);
    CHECK(back.classes == m.classes);
    CHECK(back.params.c == 2.5);
    CHECK(back.params.gamma == 0.7);
    REQUIRE(back.binaries.size() == m.binaries.size());
    for (std::size_t i = 0; i < m.binaries.size(); ++i) {
        CHECK(back.binaries[i].support_vectors == m.binaries[i].support_vectors);
        CHECK(back.binaries[i].dual_coefs == m.binaries[i].dual_coefs);
        CHECK(back.binaries[i].bias == m.binaries[i].bias);
    }
    const auto g = grid(-2, 6, 12);
    CHECK(predict(back, g) == predict(m, g));
    CHECK(predict(m, g) == predict(m, g));
    std::ostringstream again;
    write_model(again, back);
    CHECK(again.str() == text);

    std::istringstream bad("format = something-else\n");
    CHECK_THROWS_AS(read_model(bad), DataError);
    std::istringstream truncated(text.substr(0, text.size() / 2));
    CHECK_THROWS_AS(read_model(truncated), DataError);
}
