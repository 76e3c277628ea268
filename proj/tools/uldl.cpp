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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "uldl/baseline.hpp"
#include "uldl/errors.hpp"
#include "uldl/evaluation.hpp"
#include "uldl/io.hpp"
#include "uldl/labeling.hpp"
#include "uldl/pca.hpp"
#include "uldl/preprocess.hpp"
#include "uldl/svm.hpp"
#include "uldl/text_format.hpp"

namespace fs = std::filesystem;
using namespace uldl;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

// Flag values as parsed; anything left unset falls back to the config file.
struct Flags {
    std::string config;
    std::string in;
    std::string out;
    std::string out_dir;
    std::string model;
    std::optional<std::uint64_t> seed;
    std::optional<double> k_th;
    std::optional<double> p_th;
    std::optional<std::string> kernel;
    std::optional<double> c;
    std::optional<double> gamma;
    std::optional<std::size_t> window_l;
    std::optional<std::size_t> n_train;
};

io::RunConfig resolve(const Flags& f) {
    io::RunConfig cfg;
    if (!f.config.empty()) cfg = io::load_run_config(f.config);
    if (f.seed) cfg.synth.seed = cfg.eval.seed = *f.seed;
    if (f.k_th) cfg.thresholds.k_th_db = *f.k_th;
    if (f.p_th) cfg.thresholds.p_th_dbm = *f.p_th;
    if (f.kernel) cfg.svm.kernel = svm::parse_kernel(*f.kernel);
    if (f.c) cfg.svm.c = *f.c;
    if (f.gamma) cfg.svm.gamma = *f.gamma;
    if (f.window_l) cfg.eval.window_l = *f.window_l;
    return cfg;
}

std::vector<channel::MeasurementSample> read_labeled(const std::string& path) {
    auto samples = io::read_dataset_file(path);
    for (const auto& s : samples)
        if (!s.label) throw DataError(path + ": sample " + std::to_string(s.sample_id) + " has no label");
    return samples;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

void write_curve(std::ostream& out, std::span<const evaluation::CurvePoint> curve) {
    out << "n_train,dsr,mean_accuracy\n";
    for (const auto& p : curve)
        out << p.n_train << ',' << text::format_double(p.dsr) << ',' << text::format_double(p.mean_accuracy) << '\n';
}

void write_compare(std::ostream& out, std::span<const evaluation::CurvePoint> rbf,
                   std::span<const evaluation::CurvePoint> linear) {
    out << "n_train,acc_rbf,acc_linear\n";
    for (std::size_t i = 0; i < rbf.size(); ++i)
        out << rbf[i].n_train << ',' << text::format_double(rbf[i].mean_accuracy) << ','
            << text::format_double(linear[i].mean_accuracy) << '\n';
}

void write_baseline(std::ostream& out, const baseline::BaselineResult& r, const evaluation::EvalConfig& cfg) {
    out << "n_train,dsr,accuracy\n";
    for (std::size_t n : cfg.sizes())
        out << n << ',' << text::format_double(r.dsr) << ',' << text::format_double(r.mean_accuracy) << '\n';
}

void write_pca(std::ostream& out, std::span<const channel::MeasurementSample> samples) {
    const auto features = preprocess::sub6_features(samples);
    const Matrix z = preprocess::scaler_apply(preprocess::scaler_fit(features.x), features.x);
    const auto model = pca::pca_fit(z, 3);
    const Matrix coords = pca::pca_project(model, z);
    out << "pc1,pc2,pc3,label\n";
    for (std::size_t i = 0; i < coords.rows(); ++i) {
        for (std::size_t j = 0; j < 3; ++j) out << (j < coords.cols() ? text::format_double(coords(i, j)) : "0") << ',';
        out << features.y[i] << '\n';
    }
}

evaluation::EvalConfig eval_config_for(const io::RunConfig& cfg, std::size_t n_samples) {
    auto e = cfg.eval;
    e.n_total = n_samples;
    return e;
}

svm::SvmParams with_kernel(svm::SvmParams p, svm::KernelType k) {
    p.kernel = k;
    return p;
}

const char* band_ghz(channel::Band b) { return b == channel::Band::Sub6 ? "2.6" : "28"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blind UL/DL decoupling from 2.6 GHz measurements: synthesis, labeling, SVM training and evaluation"};
    app.require_subcommand(1);
    Flags f;

    const auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", f.config, "key = value config file")->check(CLI::ExistingFile);
    };
    const auto add_in = [&](CLI::App* sub, const char* what) {
        sub->add_option("--in", f.in, what)->required()->check(CLI::ExistingFile);
    };
    const auto add_out = [&](CLI::App* sub, const char* what) { sub->add_option("--out", f.out, what)->required(); };
    const auto add_thresholds = [&](CLI::App* sub) {
        sub->add_option("--k-th", f.k_th, "K-factor threshold, dB (default 3)");
        sub->add_option("--p-th", f.p_th, "RSRP threshold, dBm (default -115)");
    };
    const auto add_svm = [&](CLI::App* sub, bool kernel) {
        if (kernel) sub->add_option("--kernel", f.kernel, "rbf or linear")->check(CLI::IsMember({"rbf", "linear"}));
        sub->add_option("--c", f.c, "box constraint C (default 1)");
        sub->add_option("--gamma", f.gamma, "RBF width, K = exp(-gamma |x - z|^2) (default 0.4)");
    };
    const auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", f.seed, "root seed"); };

    auto* synth = app.add_subcommand("synth", "synthesize an unlabeled dual-band dataset");
    add_config(synth);
    add_seed(synth);
    add_out(synth, "dataset CSV");

    auto* label = app.add_subcommand("label", "fill the label column from 28 GHz measurements");
    add_config(label);
    add_in(label, "dataset CSV");
    add_out(label, "labeled dataset CSV");
    add_thresholds(label);

    auto* train = app.add_subcommand("train", "train a one-vs-one SVM on a shuffled training prefix");
    add_config(train);
    add_in(train, "labeled dataset CSV");
    train->add_option("--n-train", f.n_train, "training prefix size (default: whole training pool)");
    add_svm(train, true);
    add_seed(train);
    train->add_option("--model-out", f.model, "model file")->required();

    auto* pred = app.add_subcommand("predict", "predict decoupling classes and target APs");
    add_config(pred);
    pred->add_option("--model", f.model, "model file")->required()->check(CLI::ExistingFile);
    add_in(pred, "dataset CSV");
    add_out(pred, "predictions CSV");

    auto* eval = app.add_subcommand("eval", "training-size sweep: decoupling success rate and window accuracy");
    add_config(eval);
    add_in(eval, "labeled dataset CSV");
    add_svm(eval, true);
    eval->add_option("--l", f.window_l, "samples per decision window (default 50)");
    add_seed(eval);
    add_out(eval, "curve CSV");

    auto* base = app.add_subcommand("baseline", "offset-corrected fixed-threshold benchmark");
    add_config(base);
    add_in(base, "labeled dataset CSV");
    add_thresholds(base);
    base->add_option("--l", f.window_l, "samples per decision window (default 50)");
    add_out(base, "curve CSV");

    auto* pca_cmd = app.add_subcommand("pca", "standardized 3-component PCA of the 2.6 GHz features");
    add_config(pca_cmd);
    add_in(pca_cmd, "labeled dataset CSV");
    add_out(pca_cmd, "projection CSV");

    auto* compare = app.add_subcommand("compare", "RBF vs linear kernel accuracy over the training-size sweep");
    add_config(compare);
    add_in(compare, "labeled dataset CSV");
    add_svm(compare, false);
    add_seed(compare);
    add_out(compare, "comparison CSV");

    auto* repro = app.add_subcommand("repro", "run the whole pipeline and write every result CSV");
    add_config(repro);
    add_seed(repro);
    repro->add_option("--out-dir", f.out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        const auto subs = app.get_subcommands();
        std::cerr << (subs.empty() ? app.help() : subs.front()->help());
        return kExitUsage;
    }

    try {
        const io::RunConfig cfg = resolve(f);

        if (synth->parsed()) {
            io::write_dataset_file(f.out, channel::synth_dataset(cfg.synth));
        } else if (label->parsed()) {
            io::write_dataset_file(f.out, labeling::label_dataset(io::read_dataset_file(f.in), cfg.thresholds));
        } else if (train->parsed()) {
            const auto samples = read_labeled(f.in);
            const auto split = evaluation::prepare_split(samples, eval_config_for(cfg, samples.size()));
            const std::size_t n = f.n_train.value_or(split.pool.rows());
            if (n < 1 || n > split.pool.rows())
                throw ParameterError("--n-train must be in [1, " + std::to_string(split.pool.rows()) + "]");
            std::vector<std::size_t> prefix(n);
            std::iota(prefix.begin(), prefix.end(), std::size_t{0});
            const auto model = svm::train_ovo(split.pool.x.select_rows(prefix),
                                              std::span<const int>(split.pool.y.data(), n), cfg.svm);
            auto out = open_out(f.model);
            svm::write_model(out, model);
        } else if (pred->parsed()) {
            std::ifstream min(f.model);
            const auto model = svm::read_model(min);
            const auto samples = io::read_dataset_file(f.in);
            Matrix rows;
            for (const auto& s : samples) {
                const auto r = preprocess::sub6_feature_row(s);
                rows.append_row(r);
            }
            const auto predicted = samples.empty() ? std::vector<int>{} : svm::predict(model, rows);
            auto out = open_out(f.out);
            out << "sample_id,predicted,ul_band_ghz,ul_ap,dl_band_ghz,dl_ap\n";
            for (std::size_t i = 0; i < samples.size(); ++i) {
                const auto cls = *class_from_int(predicted[i]);
                const auto t = labeling::select_target_aps(samples[i], cls);
                out << samples[i].sample_id << ',' << predicted[i] << ',' << band_ghz(t.ul_band) << ','
                    << t.ul_ap + 1 << ',' << band_ghz(t.dl_band) << ',' << t.dl_ap + 1 << '\n';
            }
        } else if (eval->parsed()) {
            const auto samples = read_labeled(f.in);
            const auto curve = evaluation::run_dsr_sweep(samples, cfg.svm, eval_config_for(cfg, samples.size()));
            auto out = open_out(f.out);
            write_curve(out, curve);
        } else if (base->parsed()) {
            const auto samples = read_labeled(f.in);
            const auto e = eval_config_for(cfg, samples.size());
            auto out = open_out(f.out);
            write_baseline(out, baseline::baseline_dsr(samples, cfg.thresholds, e), e);
        } else if (pca_cmd->parsed()) {
            const auto samples = read_labeled(f.in);
            auto out = open_out(f.out);
            write_pca(out, samples);
        } else if (compare->parsed()) {
            const auto samples = read_labeled(f.in);
            const auto e = eval_config_for(cfg, samples.size());
            const auto rbf = evaluation::run_dsr_sweep(samples, with_kernel(cfg.svm, svm::KernelType::Rbf), e);
            const auto lin = evaluation::run_dsr_sweep(samples, with_kernel(cfg.svm, svm::KernelType::Linear), e);
            auto out = open_out(f.out);
            write_compare(out, rbf, lin);
        } else if (repro->parsed()) {
            const fs::path dir(f.out_dir);
            fs::create_directories(dir);
            {
                auto out = open_out(dir / "config.conf");
                io::write_run_config(out, cfg);
            }
            const auto raw = channel::synth_dataset(cfg.synth);
            io::write_dataset_file(dir / "dataset.csv", raw);
            const auto samples = labeling::label_dataset(raw, cfg.thresholds);
            io::write_dataset_file(dir / "labeled.csv", samples);

            const auto e = eval_config_for(cfg, samples.size());
            const auto rbf = evaluation::run_dsr_sweep(samples, with_kernel(cfg.svm, svm::KernelType::Rbf), e);
            const auto lin = evaluation::run_dsr_sweep(samples, with_kernel(cfg.svm, svm::KernelType::Linear), e);
            const auto bl = baseline::baseline_dsr(samples, cfg.thresholds, e);
            auto o1 = open_out(dir / "eval_rbf.csv");
            write_curve(o1, rbf);
            auto o2 = open_out(dir / "eval_linear.csv");
            write_curve(o2, lin);
            auto o3 = open_out(dir / "compare.csv");
            write_compare(o3, rbf, lin);
            auto o4 = open_out(dir / "baseline.csv");
            write_baseline(o4, bl, e);
            auto o5 = open_out(dir / "pca.csv");
            write_pca(o5, samples);
            auto o6 = open_out(dir / "offsets.csv");
            o6 << "k_offset_db,p_offset_db\n"
               << text::format_double(bl.offsets.k_offset_db) << ',' << text::format_double(bl.offsets.p_offset_db)
               << '\n';
        }
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
