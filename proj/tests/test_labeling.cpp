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
#include <numeric>
#include <random>

#include "test_support.hpp"
#include "uldl/labeling.hpp"

using namespace uldl;
using namespace uldl::labeling;
using testing::filled;
using testing::make_sample;
using testing::Vec5;

namespace {

channel::MeasurementSample with_28ghz_max(double k_max, double p_max) {
    Vec5 k = filled(-20.0), p = filled(-150.0);
    k[2] = k_max;
    p[4] = p_max;
    return make_sample(filled(0.0), filled(-100.0), k, p);
}

}  // namespace

TEST_CASE("decision table") {
    CHECK(classify(false, false) == DecouplingClass::Class1);
    CHECK(classify(true, false) == DecouplingClass::Class2);
    CHECK(classify(true, true) == DecouplingClass::Class3);
    CHECK(classify(false, true) == DecouplingClass::Class4);
}

TEST_CASE("labels come from the 28 GHz maxima with strict comparisons") {
    const Thresholds th;
    CHECK(label_sample(with_28ghz_max(5.0, -110.0), th) == DecouplingClass::Class3);
    CHECK(label_sample(with_28ghz_max(0.0, -120.0), th) == DecouplingClass::Class1);
    CHECK(label_sample(with_28ghz_max(3.0, -115.0), th) == DecouplingClass::Class1);
    CHECK(label_sample(with_28ghz_max(std::nextafter(3.0, 4.0), -115.0), th) == DecouplingClass::Class2);
    CHECK(label_sample(with_28ghz_max(3.0, std::nextafter(-115.0, 0.0)), th) == DecouplingClass::Class4);
}

TEST_CASE("labeling the 2.6 GHz band never matters") {
    auto s = with_28ghz_max(0.0, -120.0);
    s.band(channel::Band::Sub6) = {filled(40.0), filled(-50.0)};
    CHECK(label_sample(s, {}) == DecouplingClass::Class1);
}

TEST_CASE("label_dataset preserves order and totality") {
    CHECK(label_dataset({}, {}).empty());
    std::mt19937_64 rng(4);
    std::normal_distribution<double> k(3.0, 6.0), p(-115.0, 10.0);
    std::vector<channel::MeasurementSample> data;
    for (int i = 0; i < 500; ++i) {
        Vec5 kk, pp;
        for (auto& v : kk) v = k(rng);
        for (auto& v : pp) v = p(rng);
        auto s = make_sample(filled(0), filled(0), kk, pp);
        s.sample_id = i;
        data.push_back(s);
    }
    const auto labeled = label_dataset(data, {});
    REQUIRE(labeled.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(labeled[i].sample_id == i);
        REQUIRE(labeled[i].label);
        const bool l = *std::max_element(data[i].mmwave().k_factor_db.begin(), data[i].mmwave().k_factor_db.end()) > 3.0;
        const bool h = *std::max_element(data[i].mmwave().rsrp_dbm.begin(), data[i].mmwave().rsrp_dbm.end()) > -115.0;
        CHECK(*labeled[i].label == classify(l, h));
    }
    const auto hist = class_histogram(labeled);
    CHECK(std::accumulate(hist.begin(), hist.end(), std::size_t{0}) == data.size());

    // Raising k_th only moves samples out of {2, 3} into {1, 4}.
    const auto stricter = label_dataset(data, {6.0, -115.0});
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int before = to_int(*labeled[i].label), after = to_int(*stricter[i].label);
        if (before != after) {
            CHECK((before == 2 || before == 3));
            CHECK((after == 1 || after == 4));
        }
    }
}

TEST_CASE("default synthesis contains every class") {
    const auto data = label_dataset(channel::synth_dataset(channel::SynthConfig::defaults()), {});
    const auto hist = class_histogram(data);
    for (std::size_t c = 0; c < 4; ++c) CHECK(hist[c] > 0);
}

TEST_CASE("target AP selection") {
    auto s = make_sample({1, 1, 9, 1, 1}, {-90, -80, -85, -70, -95}, {1, 7, 2, 0, 3}, {-100, -110, -90, -120, -99});
    const auto c2 = select_target_aps(s, DecouplingClass::Class2);
    CHECK(c2.ul_band == channel::Band::MmWave);
    CHECK(c2.ul_ap == 1);
    CHECK(c2.dl_band == channel::Band::Sub6);
    CHECK(c2.dl_ap == 3);

    const auto c1 = select_target_aps(s, DecouplingClass::Class1);
    CHECK(c1.ul_band == channel::Band::Sub6);
    CHECK(c1.dl_band == channel::Band::Sub6);
    CHECK(c1.ul_ap == 2);
    CHECK(c1.dl_ap == 3);

    const auto c3 = select_target_aps(s, DecouplingClass::Class3);
    CHECK(c3.ul_band == channel::Band::MmWave);
    CHECK(c3.dl_band == channel::Band::MmWave);
    CHECK(c3.dl_ap == 2);

    const auto c4 = select_target_aps(s, DecouplingClass::Class4);
    CHECK(c4.ul_band == channel::Band::Sub6);
    CHECK(c4.dl_band == channel::Band::MmWave);

    const std::vector<double> tie{-80, -90, -95, -80, -100};
    CHECK(argmax(tie) == 0);
}

TEST_CASE("target selection follows an AP permutation") {
    auto s = make_sample({1, 5, 9, 2, 4}, {-90, -80, -85, -70, -95}, {1, 7, 2, 0, 3}, {-100, -110, -90, -120, -99});
    const std::array<std::size_t, 5> perm{3, 0, 4, 1, 2};
    channel::MeasurementSample t;
    for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t i = 0; i < 5; ++i) {
            t.bands[b].k_factor_db[i] = s.bands[b].k_factor_db[perm[i]];
            t.bands[b].rsrp_dbm[i] = s.bands[b].rsrp_dbm[perm[i]];
        }
    for (auto c : kAllClasses) {
        const auto a = select_target_aps(s, c);
        const auto b = select_target_aps(t, c);
        CHECK(perm[b.ul_ap] == a.ul_ap);
        CHECK(perm[b.dl_ap] == a.dl_ap);
    }
}
