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

// Machine-readable artifacts. All output is deterministic for identical
// inputs; numbers are written with 17 significant digits.

#pragma once

#include <string>

#include "hyperqed/analysis.hpp"
#include "hyperqed/noise.hpp"
#include "hyperqed/protocols.hpp"

namespace hyperqed {

inline constexpr int kSchemaVersion = 1;

std::string state_json(const StateVector &state,
                       double threshold = kDefaultCompareThreshold);
std::string gate_json(const GateOp &gate);
std::string compare_json(const CompareReport &report);

std::string trace_json(const ProtocolTrace &trace,
                       double threshold = kDefaultCompareThreshold);
/// outcome,probability,zero_probability,reference,fidelity,
/// branch_magnitude_fidelity,phase_spread,state_ref
std::string outcomes_csv(const ProtocolTrace &trace);
/// Human-readable report for stdout.
std::string trace_summary(const ProtocolTrace &trace, bool ascii = false);

/// "# key=value ..." params line, then time,ew,stderr rows.
std::string noise_csv(const WitnessSeries &series);
std::string noise_metadata_json(const WitnessSeries &series);

} // namespace hyperqed
