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

#include <array>
#include <optional>
#include <string_view>

namespace uldl {

// UL/DL band assignment of one UE.
//   Class1: UL and DL at 2.6 GHz
//   Class2: UL at 28 GHz with a LOS AP, DL at 2.6 GHz
//   Class3: UL and DL at 28 GHz
//   Class4: UL at 2.6 GHz, DL at 28 GHz
enum class DecouplingClass : int { Class1 = 1, Class2 = 2, Class3 = 3, Class4 = 4 };

inline constexpr std::array<DecouplingClass, 4> kAllClasses{
    DecouplingClass::Class1, DecouplingClass::Class2, DecouplingClass::Class3, DecouplingClass::Class4};

constexpr int to_int(DecouplingClass c) { return static_cast<int>(c); }

constexpr std::optional<DecouplingClass> class_from_int(int v) {
    if (v < 1 || v > 4) return std::nullopt;
    return static_cast<DecouplingClass>(v);
}

}  // namespace uldl
