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
 * End-to-end engineering pipelines (tagging chain, bipartite linear
 * cluster, four-partite 2D cluster, ring graph) executed as exact unitary
 * sequences with post-selection, plus the trace recorder shared with the
 * script executor.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperqed/analysis.hpp"
#include "hyperqed/interactions.hpp"
#include "hyperqed/measurement.hpp"
#include "hyperqed/references.hpp"
#include "hyperqed/tensor.hpp"

namespace hyperqed {

inline constexpr std::size_t kDefaultSnapshotCap = std::size_t{1} << 16;
inline constexpr std::size_t kMaxChainAtoms = 6;
inline constexpr std::size_t kMaxRingNodes = 5;
inline constexpr double kProtocolTol = 1e-10;

enum class StepKind { gate, remove, detect };

const char *to_string(StepKind kind);

struct TraceStep {
    StepKind kind = StepKind::gate;
    std::string description;
    std::vector<std::string> targets;
    std::optional<GateOp> gate;
    /// Snapshot index of the state after this step (absent above the cap).
    std::optional<std::size_t> snapshot;
    std::size_t dim = 0;
    double norm = 1.0;
    /// For remove steps: purity and |0> population of the removed factor.
    std::optional<double> removed_purity;
    std::optional<double> vacuum_population;
    /// Originating script line, when executed from a script.
    std::optional<std::size_t> line;
};

struct TraceOutcome {
    DetectionOutcome detection;
    std::string reference_name;
    std::optional<StateVector> reference;
    std::optional<CompareReport> report;
};

struct ProtocolTrace {
    std::string name;
    PhaseConvention convention = PhaseConvention::paper;
    PhysicalParams params;
    /// snapshots[0] is the initial product state.
    std::vector<StateVector> snapshots;
    std::vector<TraceStep> steps;
    std::vector<TraceOutcome> outcomes;

    /// True when every outcome with a reference reaches fidelity and branch
    /// magnitude fidelity 1 within `tol`.
    [[nodiscard]] bool passed(double tol = kProtocolTol) const;
    [[nodiscard]] double total_probability() const;
};

/// Maps an outcome label to (reference name, reference state), or nullopt.
using ReferenceLookup = std::function<
    std::optional<std::pair<std::string, StateVector>>(const std::string &)>;

/// Records a straight-line sequence of gates, factor removals and a final
/// detection. Snapshots are kept while the state dimension stays within
/// `snapshot_cap`.
class TraceBuilder {
  public:
    TraceBuilder(std::string name, PhaseConvention convention,
                 PhysicalParams params, StateVector initial,
                 std::size_t snapshot_cap = kDefaultSnapshotCap);

    [[nodiscard]] const StateVector &state() const { return state_; }
    [[nodiscard]] const Layout &layout() const { return state_.layout(); }

    void apply(const GateOp &gate, std::optional<std::size_t> line = {});
    void remove(const std::string &label, std::optional<std::size_t> line = {});
    void detect(const std::vector<std::string> &targets,
                std::optional<std::size_t> line = {});
    [[nodiscard]] bool detected() const { return detection_.has_value(); }

    ProtocolTrace finish(const ReferenceLookup &references = {},
                         double compare_threshold = kDefaultCompareThreshold);

  private:
    void record(TraceStep step);

    ProtocolTrace trace_;
    StateVector state_;
    std::size_t snapshot_cap_;
    std::optional<std::vector<DetectionOutcome>> detection_;
};

/// Initial product state: cavities given by `cavity_init` (0, 1, or -1 for
/// (|0>+|1>)/sqrt2), atoms in |b, P0>, auxiliary atoms in |g>.
StateVector product_state(const Layout &layout,
                          const std::function<int(const std::string &)> &cavity_init);

/// Pulse phase giving the post-pulse coefficient `c` on the |a, P-2> branch
/// at the pi-pulse endpoint (-i e^{i phi} = c).
double phase_for_coefficient(cplx c);

ProtocolTrace tag_chain(std::size_t n, PhaseConvention convention,
                        const PhysicalParams &params = {},
                        std::size_t max_atoms = kMaxChainAtoms);

/// `t2` defaults to pi / lambda.
ProtocolTrace linear_cluster(PhaseConvention convention,
                             std::optional<double> t2 = {},
                             const PhysicalParams &params = {});

/// `t_d` defaults to pi / (2 lambda).
ProtocolTrace cluster_2d(PhaseConvention convention,
                         std::optional<double> t_d = {},
                         const PhysicalParams &params = {});

ProtocolTrace ring_graph(std::size_t n, PhaseConvention convention,
                         const PhysicalParams &params = {},
                         std::size_t max_nodes = kMaxRingNodes);

/// Dispatch by CLI name: tag-chain, linear-cluster, cluster-2d, ring-graph.
ProtocolTrace run_protocol(const std::string &name, std::optional<std::size_t> n,
                           PhaseConvention convention,
                           const PhysicalParams &params = {},
                           std::optional<double> dispersive_time = {});

/// Reference lookups shared by the built-ins and the script executor.
ReferenceLookup make_reference_lookup(ReferenceName name,
                                      const ReferenceParams &params,
                                      double lambda_disp);

} // namespace hyperqed
