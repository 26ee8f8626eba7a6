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

#include <cstdint>
#include <string>
#include <vector>

#include "hyperqed/tensor.hpp"

namespace hyperqed {

enum class NoiseMode { frozen, telegraph };

const char *to_string(NoiseMode mode);
NoiseMode noise_mode_from_string(const std::string &name);

struct NoiseParams {
    double lambda_c = 1.0;
    double xi = 0.0;
    std::vector<int> deltas{1, 1, 1, 1};
    double flip_rate = 0.0;
    std::vector<double> t_grid;
    std::size_t n_traj = 1;
    std::uint64_t seed = 0;

    /// Throws Error(invalid_argument) on a malformed grid, deltas not in
    /// {+1,-1}, negative rates or n_traj == 0.
    void validate() const;
};

/// `points` uniform samples on [0, t_max].
std::vector<double> uniform_grid(double t_max, std::size_t points);

inline constexpr double kDefaultTMax = 10.0;
inline constexpr std::size_t kDefaultGridPoints = 1001;

struct WitnessSeries {
    NoiseMode mode = NoiseMode::frozen;
    NoiseParams params;
    std::vector<double> times;
    std::vector<double> ew;
    /// Empty in frozen mode.
    std::vector<double> std_error;
    /// max |Tr rho(t) - 1| over the grid (frozen mode; 0 for telegraph).
    double max_trace_defect = 0.0;
};

/// e^{-i xi t} [cos(lambda t) I - i delta sin(lambda t) sigma_x].
Matrix qubit_propagator(double lambda_c, int delta, double xi, double t);

/// Default witness state: both (b,P0)(a,P-2) Bell pairs of the g,g linear
/// cluster outcome, over [a1, a1.p, a2, a2.p].
StateVector default_witness_state();

/// Witness state by name: "eq16:<outcome>" (outcome g,g / g,e / e,g / e,e).
StateVector witness_state(const std::string &name);

/// EW at a single time for constant deltas.
double frozen_witness_at(const StateVector &w, const NoiseParams &params,
                         double t);

WitnessSeries evolve_frozen(const StateVector &w, const NoiseParams &params);
WitnessSeries evolve_telegraph(const StateVector &w, const NoiseParams &params);

} // namespace hyperqed
