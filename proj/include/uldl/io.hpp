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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "uldl/channel.hpp"
#include "uldl/evaluation.hpp"
#include "uldl/labeling.hpp"
#include "uldl/svm.hpp"

namespace uldl::io {

// sample_id,track_id,x_m,y_m,k26_1..k26_5,p26_1..p26_5,k28_1..k28_5,p28_1..p28_5,label
const std::vector<std::string>& dataset_columns();
std::string dataset_header();

void write_dataset_csv(std::ostream& out, std::span<const channel::MeasurementSample> samples);

// Columns are matched by name; a missing or unknown column, a short row or an
// unparsable field raises DataError naming the column.
std::vector<channel::MeasurementSample> read_dataset_csv(std::istream& in);

std::vector<channel::MeasurementSample> read_dataset_file(const std::filesystem::path& path);
void write_dataset_file(const std::filesystem::path& path, std::span<const channel::MeasurementSample> samples);

// Everything a pipeline run can be configured with. Flat `key = value`
// file; see config/default.conf for the full key list.
struct RunConfig {
    channel::SynthConfig synth = channel::SynthConfig::defaults();
    labeling::Thresholds thresholds;
    svm::SvmParams svm;
    evaluation::EvalConfig eval;
};

// Starts from `base` and overrides every key present. Unknown keys are errors.
RunConfig parse_run_config(std::istream& in, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});

// Writes every key with its current value.
void write_run_config(std::ostream& out, const RunConfig& config);

}  // namespace uldl::io
