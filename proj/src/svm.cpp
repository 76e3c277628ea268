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

#include "uldl/svm.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "uldl/errors.hpp"
#include "uldl/simd/kernels.hpp"
#include "uldl/text_format.hpp"

namespace uldl::svm {

const char* kernel_name(KernelType k) { return k == KernelType::Rbf ? "rbf" : "linear"; }

KernelType parse_kernel(std::string_view name) {
    if (name == "rbf") return KernelType::Rbf;
    if (name == "linear") return KernelType::Linear;
    throw ParameterError("unknown kernel '" + std::string(name) + "' (expected rbf or linear)");
}

void SvmParams::validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("svm: C must be > 0");
    if (kernel == KernelType::Rbf && (!(gamma > 0.0) || !std::isfinite(gamma)))
        throw ParameterError("svm: gamma must be > 0");
    if (!(tol > 0.0)) throw ParameterError("svm: tol must be > 0");
}

double kernel_eval(const SvmParams& params, std::span<const double> x, std::span<const double> z) {
    if (x.size() != z.size()) throw ParameterError("kernel_eval: dimension mismatch");
    if (params.kernel == KernelType::Linear) return simd::dot(x, z);
    return std::exp(-params.gamma * simd::squared_distance(x, z));
}

namespace {

// Lazily filled kernel rows, no eviction. n stays in the low thousands here.
class KernelRows {
  public:
    KernelRows(const Matrix& x, const SvmParams& params) : x_(x), params_(params), rows_(x.rows()) {
        diag_.resize(x.rows());
        for (std::size_t i = 0; i < x.rows(); ++i) diag_[i] = kernel_eval(params, x.row(i), x.row(i));
    }

    std::span<const double> row(std::size_t i) {
        auto& r = rows_[i];
        if (r.empty()) {
            r.resize(x_.rows());
            if (params_.kernel == KernelType::Rbf)
                simd::rbf_row(x_.row(i), x_.values(), params_.gamma, r);
            else
                simd::linear_row(x_.row(i), x_.values(), r);
        }
        return r;
    }

    double diag(std::size_t i) const { return diag_[i]; }

  private:
    const Matrix& x_;
    const SvmParams& params_;
    std::vector<std::vector<double>> rows_;
    std::vector<double> diag_;
};

std::vector<std::size_t> canonical_order(const Matrix& x, std::span<const int> y) {
    std::vector<std::size_t> order(x.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto ra = x.row(a);
        const auto rb = x.row(b);
        if (std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end())) return true;
        if (std::lexicographical_compare(rb.begin(), rb.end(), ra.begin(), ra.end())) return false;
        return y[a] < y[b];
    });
    return order;
}

void check_binary_labels(const Matrix& x, std::span<const int> y) {
    if (x.rows() != y.size()) throw ParameterError("svm: row count != label count");
    if (x.rows() < 2) throw ParameterError("svm: need at least two training rows");
    bool pos = false, neg = false;
    for (int v : y) {
        if (v == 1)
            pos = true;
        else if (v == -1)
            neg = true;
        else
            throw ParameterError("svm: binary labels must be -1 or +1");
    }
    if (!pos || !neg) throw ParameterError("svm: both classes must be present");
}

// Core solver on rows already in canonical order.
SmoSolution smo(const Matrix& x, std::span<const int> y, const SvmParams& params) {
    constexpr double kTau = 1e-12;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const std::size_t n = x.rows();
    const double c = params.c;
    const std::size_t max_iter =
        params.max_iterations ? params.max_iterations : std::max<std::size_t>(10'000'000, 100 * n);

    KernelRows kernel(x, params);
    SmoSolution sol;
    sol.alpha.assign(n, 0.0);
    sol.gradient.assign(n, -1.0);
    auto& alpha = sol.alpha;
    auto& grad = sol.gradient;

    while (sol.iterations < max_iter) {
        // i: maximal violator in I_up.
        double gmax = -kInf;
        std::size_t i = n;
        for (std::size_t t = 0; t < n; ++t) {
            if (y[t] == 1) {
                if (alpha[t] < c && -grad[t] > gmax) gmax = -grad[t], i = t;
            } else if (alpha[t] > 0.0 && grad[t] > gmax) {
                gmax = grad[t], i = t;
            }
        }
        if (i == n) {
            sol.converged = true;
            break;
        }
        const auto ki = kernel.row(i);
        const double kii = kernel.diag(i);

        // j: largest second-order objective decrease in I_low.
        double gmax2 = -kInf;
        double best = kInf;
        std::size_t j = n;
        for (std::size_t t = 0; t < n; ++t) {
            double grad_diff = 0.0;
            if (y[t] == 1) {
                if (!(alpha[t] > 0.0)) continue;
                gmax2 = std::max(gmax2, grad[t]);
                grad_diff = gmax + grad[t];
            } else {
                if (!(alpha[t] < c)) continue;
                gmax2 = std::max(gmax2, -grad[t]);
                grad_diff = gmax - grad[t];
            }
            if (grad_diff > 0.0) {
                double quad = kii + kernel.diag(t) - 2.0 * ki[t];
                if (quad <= 0.0) quad = kTau;
                const double obj = -(grad_diff * grad_diff) / quad;
                if (obj < best) best = obj, j = t;
            }
        }
        if (gmax + gmax2 < params.tol || j == n) {
            sol.converged = true;
            break;
        }
        ++sol.iterations;

        const auto kj = kernel.row(j);
        const double old_ai = alpha[i];
        const double old_aj = alpha[j];
        double quad = kii + kernel.diag(j) - 2.0 * ki[j];
        if (quad <= 0.0) quad = kTau;
        double ai = old_ai, aj = old_aj;
        if (y[i] != y[j]) {
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0.0) {
                if (aj < 0.0) aj = 0.0, ai = diff;
            } else if (ai < 0.0) {
                ai = 0.0, aj = -diff;
            }
            if (diff > 0.0) {
                if (ai > c) ai = c, aj = c - diff;
            } else if (aj > c) {
                aj = c, ai = c + diff;
            }
        } else {
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > c) {
                if (ai > c) ai = c, aj = sum - c;
            } else if (aj < 0.0) {
                aj = 0.0, ai = sum;
            }
            if (sum > c) {
                if (aj > c) aj = c, ai = sum - c;
            } else if (ai < 0.0) {
                ai = 0.0, aj = sum;
            }
        }
        alpha[i] = ai;
        alpha[j] = aj;
        const double dai = (ai - old_ai) * y[i];
        const double daj = (aj - old_aj) * y[j];
        for (std::size_t k = 0; k < n; ++k) grad[k] += y[k] * (ki[k] * dai + kj[k] * daj);
    }

    // Bias: average over free vectors, else the midpoint of the feasible interval.
    double ub = kInf, lb = -kInf, sum_free = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = y[t] * grad[t];
        if (alpha[t] >= c) {
            if (y[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else if (alpha[t] <= 0.0) {
            if (y[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else {
            ++n_free;
            sum_free += yg;
        }
    }
    const double rho = n_free ? sum_free / static_cast<double>(n_free) : 0.5 * (ub + lb);
    sol.bias = -rho;
    return sol;
}

}  // namespace

SmoSolution solve_smo(const Matrix& x, std::span<const int> y, const SvmParams& params) {
    params.validate();
    check_binary_labels(x, y);
    const auto order = canonical_order(x, y);
    const Matrix xs = x.select_rows(order);
    std::vector<int> ys(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) ys[k] = y[order[k]];

    SmoSolution canon = smo(xs, ys, params);
    SmoSolution out;
    out.alpha.resize(order.size());
    out.gradient.resize(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        out.alpha[order[k]] = canon.alpha[k];
        out.gradient[order[k]] = canon.gradient[k];
    }
    out.bias = canon.bias;
    out.iterations = canon.iterations;
    out.converged = canon.converged;
    return out;
}

double BinaryModel::decision(const SvmParams& params, std::span<const double> x) const {
    if (x.size() != support_vectors.cols()) throw ParameterError("decision: dimension mismatch");
    std::vector<double> k(support_vectors.rows());
    if (params.kernel == KernelType::Rbf)
        simd::rbf_row(x, support_vectors.values(), params.gamma, k);
    else
        simd::linear_row(x, support_vectors.values(), k);
    return std::inner_product(k.begin(), k.end(), dual_coefs.begin(), bias);
}

BinaryModel train_binary(const Matrix& x, std::span<const int> y, const SvmParams& params) {
    const SmoSolution sol = solve_smo(x, y, params);
    BinaryModel m;
    m.support_vectors = Matrix(0, x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        if (sol.alpha[i] > 0.0) {
            m.support_vectors.append_row(x.row(i));
            m.dual_coefs.push_back(sol.alpha[i] * y[i]);
        }
    }
    m.bias = sol.bias;
    m.converged = sol.converged;
    m.iterations = sol.iterations;
    return m;
}

double dual_objective(const BinaryModel& model, const SvmParams& params) {
    const auto& sv = model.support_vectors;
    double linear = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < sv.rows(); ++i) {
        linear += std::abs(model.dual_coefs[i]);
        for (std::size_t j = 0; j < sv.rows(); ++j)
            quad += model.dual_coefs[i] * model.dual_coefs[j] * kernel_eval(params, sv.row(i), sv.row(j));
    }
    return linear - 0.5 * quad;
}

MulticlassModel train_ovo(const Matrix& x, std::span<const int> y, const SvmParams& params) {
    params.validate();
    if (x.rows() != y.size()) throw ParameterError("train_ovo: row count != label count");
    std::vector<int> classes(y.begin(), y.end());
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    if (classes.size() < 2) throw ParameterError("train_ovo: need at least two distinct classes");

    MulticlassModel model;
    model.params = params;
    model.classes = classes;
    model.scaler = preprocess::scaler_fit(x);
    const Matrix xs = preprocess::scaler_apply(model.scaler, x);

    for (std::size_t a = 0; a < classes.size(); ++a) {
        for (std::size_t b = a + 1; b < classes.size(); ++b) {
            std::vector<std::size_t> idx;
            std::vector<int> yy;
            for (std::size_t r = 0; r < y.size(); ++r) {
                if (y[r] == classes[a] || y[r] == classes[b]) {
                    idx.push_back(r);
                    yy.push_back(y[r] == classes[a] ? 1 : -1);
                }
            }
            BinaryModel bm = train_binary(xs.select_rows(idx), yy, params);
            bm.positive_class = classes[a];
            bm.negative_class = classes[b];
            model.binaries.push_back(std::move(bm));
        }
    }
    return model;
}

std::vector<int> predict(const MulticlassModel& model, const Matrix& rows) {
    if (rows.rows() > 0 && rows.cols() != model.dim()) throw ParameterError("predict: dimension mismatch");
    const Matrix xs = preprocess::scaler_apply(model.scaler, rows);
    std::vector<int> out(rows.rows());
    std::vector<int> votes(model.classes.size());
    const auto slot = [&](int cls) {
        return static_cast<std::size_t>(std::lower_bound(model.classes.begin(), model.classes.end(), cls) -
                                        model.classes.begin());
    };
    for (std::size_t r = 0; r < rows.rows(); ++r) {
        std::fill(votes.begin(), votes.end(), 0);
        for (const auto& bm : model.binaries)
            ++votes[slot(bm.decision(model.params, xs.row(r)) > 0.0 ? bm.positive_class : bm.negative_class)];
        // max_element returns the first maximum, i.e. the lowest class.
        out[r] = model.classes[static_cast<std::size_t>(std::max_element(votes.begin(), votes.end()) - votes.begin())];
    }
    return out;
}

double accuracy_score(std::span<const int> y_true, std::span<const int> y_pred) {
    if (y_true.size() != y_pred.size()) throw ParameterError("accuracy_score: length mismatch");
    if (y_true.empty()) throw ParameterError("accuracy_score: empty input");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) hits += y_true[i] == y_pred[i];
    return static_cast<double>(hits) / static_cast<double>(y_true.size());
}

// Model file: `key = value` lines. Header, scaler, then per binary a
// `binary = a b` line followed by bias, converged, n_sv and n_sv `sv` lines
// holding "dual_coef x_1 ... x_d".
void write_model(std::ostream& out, const MulticlassModel& model) {
    out << "format = uldl-svm-model\n";
    out << "version = 1\n";
    out << "kernel = " << kernel_name(model.params.kernel) << '\n';
    out << "c = " << text::format_double(model.params.c) << '\n';
    out << "gamma = " << text::format_double(model.params.gamma) << '\n';
    out << "tol = " << text::format_double(model.params.tol) << '\n';
    out << "max_iterations = " << model.params.max_iterations << '\n';
    out << "dim = " << model.dim() << '\n';
    out << "classes =";
    for (int c : model.classes) out << ' ' << c;
    out << '\n';
    out << "scaler_mean = " << text::join_doubles(model.scaler.mean) << '\n';
    out << "scaler_std = " << text::join_doubles(model.scaler.std) << '\n';
    out << "binaries = " << model.binaries.size() << '\n';
    for (const auto& bm : model.binaries) {
        out << "binary = " << bm.positive_class << ' ' << bm.negative_class << '\n';
        out << "bias = " << text::format_double(bm.bias) << '\n';
        out << "converged = " << (bm.converged ? 1 : 0) << '\n';
        out << "n_sv = " << bm.support_vectors.rows() << '\n';
        for (std::size_t i = 0; i < bm.support_vectors.rows(); ++i)
            out << "sv = " << text::format_double(bm.dual_coefs[i]) << ' '
                << text::join_doubles(bm.support_vectors.row(i)) << '\n';
    }
}

namespace {

class Cursor {
  public:
    explicit Cursor(std::vector<text::KeyValue> kv) : kv_(std::move(kv)) {}

    const std::string& expect(std::string_view key) {
        if (pos_ >= kv_.size())
            throw DataError("model: unexpected end of file, expected '" + std::string(key) + "'");
        const auto& e = kv_[pos_++];
        if (e.key != key)
            throw DataError("model line " + std::to_string(e.line) + ": expected '" + std::string(key) +
                            "', got '" + e.key + "'");
        return e.value;
    }
    bool done() const { return pos_ == kv_.size(); }

  private:
    std::vector<text::KeyValue> kv_;
    std::size_t pos_ = 0;
};

int to_label(double v) {
    if (v != std::floor(v) || std::abs(v) > 1e6) throw DataError("model: non-integer class label");
    return static_cast<int>(v);
}

}  // namespace

MulticlassModel read_model(std::istream& in) {
    Cursor cur(text::read_key_values(in));
    if (cur.expect("format") != "uldl-svm-model") throw DataError("model: not a uldl-svm-model file");
    if (cur.expect("version") != "1") throw DataError("model: unsupported version");
    MulticlassModel m;
    m.params.kernel = parse_kernel(cur.expect("kernel"));
    m.params.c = text::parse_double(cur.expect("c"), "c");
    m.params.gamma = text::parse_double(cur.expect("gamma"), "gamma");
    m.params.tol = text::parse_double(cur.expect("tol"), "tol");
    m.params.max_iterations = text::parse_size(cur.expect("max_iterations"), "max_iterations");
    m.params.validate();
    const std::size_t dim = text::parse_size(cur.expect("dim"), "dim");
    for (double v : text::parse_doubles(cur.expect("classes"))) m.classes.push_back(to_label(v));
    if (m.classes.size() < 2 || !std::is_sorted(m.classes.begin(), m.classes.end()))
        throw DataError("model: classes must be sorted with at least two entries");
    m.scaler.mean = text::parse_doubles(cur.expect("scaler_mean"));
    m.scaler.std = text::parse_doubles(cur.expect("scaler_std"));
    if (m.scaler.mean.size() != dim || m.scaler.std.size() != dim)
        throw DataError("model: scaler length != dim");
    const std::size_t n_bin = text::parse_size(cur.expect("binaries"), "binaries");
    const std::size_t k = m.classes.size();
    if (n_bin != k * (k - 1) / 2) throw DataError("model: binary count != k(k-1)/2");
    for (std::size_t b = 0; b < n_bin; ++b) {
        BinaryModel bm;
        const auto pair = text::parse_doubles(cur.expect("binary"));
        if (pair.size() != 2) throw DataError("model: binary needs a class pair");
        bm.positive_class = to_label(pair[0]);
        bm.negative_class = to_label(pair[1]);
        bm.bias = text::parse_double(cur.expect("bias"), "bias");
        bm.converged = text::parse_bool(cur.expect("converged"), "converged");
        const std::size_t n_sv = text::parse_size(cur.expect("n_sv"), "n_sv");
        bm.support_vectors = Matrix(0, dim);
        for (std::size_t i = 0; i < n_sv; ++i) {
            const auto vals = text::parse_doubles(cur.expect("sv"));
            if (vals.size() != dim + 1) throw DataError("model: support vector row has wrong length");
            bm.dual_coefs.push_back(vals[0]);
            bm.support_vectors.append_row(std::span<const double>(vals).subspan(1));
        }
        m.binaries.push_back(std::move(bm));
    }
    if (!cur.done()) throw DataError("model: trailing content");
    return m;
}

}  // namespace uldl::svm
