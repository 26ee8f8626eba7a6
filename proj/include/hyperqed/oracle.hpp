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
 * Dense-Kronecker equivalence and property suites.
 *
 * Suite "kron": every primitive on seeded random states and every gate step
 * of the built-in protocols (replayed from snapshots) against full-space
 * matrix multiplication. Suite "property": algebraic invariants of the
 * primitives, measurement and analysis layers.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperqed/tensor.hpp"

namespace hyperqed {

struct OracleOptions {
    std::size_t max_dim = kDefaultOracleCap;
    std::uint64_t seed = 20260417;
    /// Negative control: corrupts one comparison so the suite must fail.
    bool inject_fault = false;
};

struct OracleCheck {
    std::string suite;
    std::string name;
    bool passed = false;
    double max_error = 0.0;
    std::size_t cases = 0;
    std::string detail;
};

struct OracleReport {
    std::vector<OracleCheck> checks;
    std::size_t skipped_steps = 0;

    [[nodiscard]] bool all_passed() const;
    [[nodiscard]] std::string table() const;
};

OracleReport run_oracle_suite(const OracleOptions &options = {});

} // namespace hyperqed
