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

#include <string>
#include <vector>

#include "hyperqed/tensor.hpp"

namespace hyperqed {

struct PhaseResidual {
    std::string basis;   ///< e.g. "1,a,P-2"
    double phase;        ///< arg(state_i / reference_i) in (-pi, pi]
};

struct CompareReport {
    double fidelity = 0.0;                  ///< |<ref|state>|^2
    double branch_magnitude_fidelity = 0.0; ///< sum_i |a_i| |b_i|
    std::vector<PhaseResidual> phase_residuals;
    std::vector<std::string> support_mismatch;

    /// Largest spread of phase residuals about their circular mean; zero
    /// when the two states agree up to a global phase.
    [[nodiscard]] double relative_phase_spread() const;
};

inline constexpr double kDefaultCompareThreshold = 1e-9;

CompareReport compare(const StateVector &state, const StateVector &reference,
                      double threshold = kDefaultCompareThreshold);

/// Negativity (||rho^{T_A}||_1 - 1) / 2 for the bipartition (A, rest).
double negativity(const DensityMatrix &rho,
                  const std::vector<std::string> &side_a);

/// Tr[(I/2 - |w><w|) rho] = 1/2 - <w|rho|w>.
double witness_value(const DensityMatrix &rho, const StateVector &w);

struct KetFormat {
    double threshold = 1e-9;
    bool ascii = false;
    int precision = 4;
};

/// Sorted-basis ket rendering, e.g. "0.7071|0,b,P₀⟩ + 0.7071|1,b,P₋₂⟩".
std::string ket_string(const StateVector &state, const KetFormat &format = {});
std::string ket_string(const StateVector &state, double threshold);

} // namespace hyperqed
