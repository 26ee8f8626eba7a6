// Copyright 2026 The hyperqed Authors
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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperqed/tensor.hpp"

namespace hyperqed {

inline constexpr double kZeroProbability = 1e-12;
inline constexpr double kPurityTol = 1e-9;

struct DetectionOutcome {
    /// (auxiliary label, basis label) in target order.
    std::vector<std::pair<std::string, std::string>> assignments;
    double probability = 0.0;
    /// Set when probability <= kZeroProbability; post_state is then empty.
    bool zero_probability = false;
    std::optional<StateVector> post_state;

    /// "g,e"-style label in target order; empty for no targets.
    [[nodiscard]] std::string label() const;
};

/// Projective detection of every target in its {g, e} basis. Returns
/// 2^|targets| outcomes ordered lexicographically by basis index (g before
/// e), the first target varying slowest.
std::vector<DetectionOutcome>
detect_all(const StateVector &state, const std::vector<std::string> &targets);

/// Drops a subsystem that is in a pure product state with the rest.
/// Throws Error(entangled_subsystem) naming the purity when it is not.
StateVector remove_disentangled(const StateVector &state,
                                const std::string &subsystem);

} // namespace hyperqed
