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

/**
 * @file
 * Closed-form target states transcribed literally (signs included) from the
 * published derivations, over the same layouts the protocols produce.
 *
 * Labelling used throughout: cavities "c1", "c2", ...; type-1 atom j has
 * internal level "aj" and momentum "aj.p"; auxiliary atoms are "x1", ...
 */

#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <string>

#include "hyperqed/tensor.hpp"

namespace hyperqed {

enum class ReferenceName { eq4, eq6, eq7, eq16, eq17, eq18, eq21, eq22, eq29 };

const char *to_string(ReferenceName name);
ReferenceName reference_name_from_string(const std::string &name);

struct ReferenceParams {
    /// Atom count for eq7; for eq29 the printed product runs over n + 1
    /// atoms.
    std::size_t n = 2;
    /// lambda * t_d for eq21.
    double lambda_t = std::numbers::pi / 2.0;
};

std::string cavity_label(std::size_t k);
std::string atom_label(std::size_t j);
std::string momentum_label(std::size_t j);
std::string aux_label(std::size_t k);

/// Internal + momentum subsystems of atoms first..first+count-1.
std::vector<Subsystem> atom_subsystems(std::size_t first, std::size_t count);

/// `outcome` is the detection label ("g,g", "e,g", ...) required by eq16 and
/// eq21 and ignored otherwise.
StateVector reference_state(ReferenceName name,
                            const std::optional<std::string> &outcome = {},
                            const ReferenceParams &params = {});

} // namespace hyperqed
