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
 * Dense state vectors, density matrices and gate application over hybrid
 * (cavity / atomic internal / atomic momentum / auxiliary atom) Hilbert
 * spaces.
 *
 * Basis indexing is row-major over the declared subsystem order: the last
 * declared subsystem varies fastest.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hyperqed/error.hpp"

namespace hyperqed {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr std::size_t kDefaultOracleCap = 4096;

enum class SubsystemKind { cavity, internal, momentum, auxiliary };

const char *to_string(SubsystemKind kind);
SubsystemKind subsystem_kind_from_string(const std::string &name);

struct Subsystem {
    std::string label;
    SubsystemKind kind;
    std::size_t dim;

    bool operator==(const Subsystem &) const = default;
};

/// Basis label of index `index` for a subsystem of the given kind, e.g.
/// "0"/"1" for cavities, "b"/"a" for internal levels, "P0"/"P-2" for
/// momentum and "g"/"e" for auxiliary atoms.
std::string basis_label(SubsystemKind kind, std::size_t index);

/// Inverse of basis_label; throws Error(invalid_argument) if unknown.
std::size_t basis_index(SubsystemKind kind, std::size_t dim,
                        const std::string &label);

/// Ordered list of labelled subsystems.
class Layout {
  public:
    Layout() = default;
    explicit Layout(std::vector<Subsystem> subsystems);

    [[nodiscard]] std::size_t size() const { return subsystems_.size(); }
    [[nodiscard]] std::size_t total_dim() const { return total_dim_; }
    [[nodiscard]] const std::vector<Subsystem> &subsystems() const {
        return subsystems_;
    }
    [[nodiscard]] const Subsystem &operator[](std::size_t i) const {
        return subsystems_[i];
    }
    [[nodiscard]] bool contains(const std::string &label) const;
    /// Position of `label` in declaration order; throws on unknown label.
    [[nodiscard]] std::size_t position(const std::string &label) const;
    [[nodiscard]] const Subsystem &at(const std::string &label) const {
        return subsystems_[position(label)];
    }
    /// Stride of subsystem `i` in the flattened index.
    [[nodiscard]] std::size_t stride(std::size_t i) const {
        return strides_[i];
    }
    [[nodiscard]] std::vector<std::size_t> digits(std::size_t index) const;
    [[nodiscard]] std::size_t flat_index(std::span<const std::size_t> digits) const;
    [[nodiscard]] std::vector<std::string> labels() const;

    /// Layout with the named subsystems removed (order of the rest kept).
    [[nodiscard]] Layout without(const std::vector<std::string> &labels) const;
    /// Layout keeping only the named subsystems, in declaration order.
    [[nodiscard]] Layout restricted(const std::vector<std::string> &labels) const;

    bool operator==(const Layout &other) const {
        return subsystems_ == other.subsystems_;
    }

  private:
    std::vector<Subsystem> subsystems_;
    std::vector<std::size_t> strides_;
    std::size_t total_dim_ = 1;
};

/// Normalized pure state over a Layout. Immutable once constructed.
class StateVector {
  public:
    /// Normalizes `amplitudes`; throws if the norm vanishes or the length
    /// does not match the layout.
    StateVector(Layout layout, Vector amplitudes);

    [[nodiscard]] const Layout &layout() const { return layout_; }
    [[nodiscard]] const Vector &amplitudes() const { return amplitudes_; }
    [[nodiscard]] cplx amplitude(std::size_t i) const { return amplitudes_(i); }
    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    [[nodiscard]] double norm() const { return amplitudes_.norm(); }
    /// Labels of basis index `i`, one per subsystem.
    [[nodiscard]] std::vector<std::string> basis_labels(std::size_t i) const;

  private:
    Layout layout_;
    Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix over a Layout.
class DensityMatrix {
  public:
    DensityMatrix(Layout layout, Matrix entries);
    static DensityMatrix from_pure(const StateVector &state);

    [[nodiscard]] const Layout &layout() const { return layout_; }
    [[nodiscard]] const Matrix &entries() const { return entries_; }
    [[nodiscard]] double trace() const { return entries_.trace().real(); }
    [[nodiscard]] double purity() const;

  private:
    Layout layout_;
    Matrix entries_;
};

/// Unitary acting on an ordered list of target subsystems. The local basis
/// of the gate is row-major over `targets` in the order given.
class GateOp {
  public:
    GateOp(std::string name, std::vector<std::string> targets, Matrix matrix,
           std::vector<std::size_t> forbidden_inputs = {});

    [[nodiscard]] const std::string &name() const { return name_; }
    [[nodiscard]] const std::vector<std::string> &targets() const {
        return targets_;
    }
    [[nodiscard]] const Matrix &matrix() const { return matrix_; }
    /// Local input basis states that must carry no amplitude when the gate
    /// is applied (population that would leave the truncated space).
    [[nodiscard]] const std::vector<std::size_t> &forbidden_inputs() const {
        return forbidden_;
    }

  private:
    std::string name_;
    std::vector<std::string> targets_;
    Matrix matrix_;
    std::vector<std::size_t> forbidden_;
};

/// Max-norm of U^dagger U - I.
double unitarity_defect(const Matrix &u);

StateVector basis_state(const Layout &layout,
                        const std::map<std::string, std::string> &labels);
StateVector basis_state(const Layout &layout,
                        const std::map<std::string, std::size_t> &indices);

/// Normalized linear combination of states sharing a layout.
StateVector superpose(std::span<const std::pair<cplx, StateVector>> terms);

/// Tensor product a (x) b; labels must be disjoint.
StateVector kron(const StateVector &a, const StateVector &b);

StateVector apply_gate(const StateVector &state, const GateOp &gate);

/// Full-space matrix of `gate` built by index bookkeeping, independent of
/// the strided apply_gate path. Throws above `cap`.
Matrix kron_oracle(const GateOp &gate, const Layout &layout,
                   std::size_t cap = kDefaultOracleCap);

cplx inner(const StateVector &a, const StateVector &b);

/// |<a|b>|^2
double overlap_probability(const StateVector &a, const StateVector &b);

/// Reduced density matrix over `keep` (declaration order retained).
DensityMatrix partial_trace(const DensityMatrix &rho,
                            const std::vector<std::string> &keep);

/// Reduced density matrix of a pure state, computed without forming the
/// full projector.
DensityMatrix reduced_density(const StateVector &state,
                              const std::vector<std::string> &keep);

StateVector permute_subsystems(const StateVector &state,
                               const std::vector<std::string> &new_order);

} // namespace hyperqed
