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

#include "hyperqed/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace hyperqed {

const char *to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_argument:
        return "invalid_argument";
    case ErrorCode::unknown_label:
        return "unknown_label";
    case ErrorCode::out_of_range:
        return "out_of_range";
    case ErrorCode::dimension_mismatch:
        return "dimension_mismatch";
    case ErrorCode::non_unitary:
        return "non_unitary";
    case ErrorCode::fock_overflow:
        return "fock_overflow";
    case ErrorCode::entangled_subsystem:
        return "entangled_subsystem";
    case ErrorCode::cap_exceeded:
        return "cap_exceeded";
    case ErrorCode::parse_error:
        return "parse_error";
    case ErrorCode::runtime_error:
        return "runtime_error";
    }
    return "unknown";
}

const char *to_string(SubsystemKind kind) {
    switch (kind) {
    case SubsystemKind::cavity:
        return "cavity";
    case SubsystemKind::internal:
        return "internal";
    case SubsystemKind::momentum:
        return "momentum";
    case SubsystemKind::auxiliary:
        return "auxiliary";
    }
    return "unknown";
}

SubsystemKind subsystem_kind_from_string(const std::string &name) {
    if (name == "cavity")
        return SubsystemKind::cavity;
    if (name == "internal")
        return SubsystemKind::internal;
    if (name == "momentum")
        return SubsystemKind::momentum;
    if (name == "auxiliary")
        return SubsystemKind::auxiliary;
    throw Error(ErrorCode::invalid_argument,
                "unknown subsystem kind '" + name + "'");
}

namespace {

const std::vector<std::string> &named_levels(SubsystemKind kind) {
    static const std::vector<std::string> internal{"b", "a"};
    static const std::vector<std::string> momentum{"P0", "P-2"};
    static const std::vector<std::string> auxiliary{"g", "e"};
    static const std::vector<std::string> none{};
    switch (kind) {
    case SubsystemKind::internal:
        return internal;
    case SubsystemKind::momentum:
        return momentum;
    case SubsystemKind::auxiliary:
        return auxiliary;
    case SubsystemKind::cavity:
        break;
    }
    return none;
}

} // namespace

std::string basis_label(SubsystemKind kind, std::size_t index) {
    const auto &names = named_levels(kind);
    if (index < names.size())
        return names[index];
    if (kind == SubsystemKind::cavity)
        return std::to_string(index);
    return "#" + std::to_string(index);
}

std::size_t basis_index(SubsystemKind kind, std::size_t dim,
                        const std::string &label) {
    for (std::size_t i = 0; i < dim; ++i) {
        if (basis_label(kind, i) == label)
            return i;
    }
    throw Error(ErrorCode::invalid_argument,
                "basis label '" + label + "' is not valid for a " +
                    to_string(kind) + " subsystem of dimension " +
                    std::to_string(dim));
}

// ---------------------------------------------------------------------------
// Layout

Layout::Layout(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
    std::set<std::string> seen;
    for (const auto &s : subsystems_) {
        if (s.label.empty())
            throw Error(ErrorCode::invalid_argument, "empty subsystem label");
        if (!seen.insert(s.label).second)
            throw Error(ErrorCode::invalid_argument,
                        "duplicate subsystem label '" + s.label + "'");
        if (s.dim < 2)
            throw Error(ErrorCode::invalid_argument,
                        "subsystem '" + s.label + "' needs dimension >= 2");
    }
    strides_.assign(subsystems_.size(), 1);
    total_dim_ = 1;
    for (std::size_t i = subsystems_.size(); i-- > 0;) {
        strides_[i] = total_dim_;
        total_dim_ *= subsystems_[i].dim;
    }
}

bool Layout::contains(const std::string &label) const {
    return std::any_of(subsystems_.begin(), subsystems_.end(),
                       [&](const Subsystem &s) { return s.label == label; });
}

std::size_t Layout::position(const std::string &label) const {
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
        if (subsystems_[i].label == label)
            return i;
    }
    throw Error(ErrorCode::unknown_label, "unknown subsystem '" + label + "'");
}

std::vector<std::size_t> Layout::digits(std::size_t index) const {
    std::vector<std::size_t> out(subsystems_.size());
    for (std::size_t i = 0; i < subsystems_.size(); ++i)
        out[i] = (index / strides_[i]) % subsystems_[i].dim;
    return out;
}

std::size_t Layout::flat_index(std::span<const std::size_t> digits) const {
    std::size_t index = 0;
    for (std::size_t i = 0; i < subsystems_.size(); ++i)
        index += digits[i] * strides_[i];
    return index;
}

std::vector<std::string> Layout::labels() const {
    std::vector<std::string> out;
    out.reserve(subsystems_.size());
    for (const auto &s : subsystems_)
        out.push_back(s.label);
    return out;
}

Layout Layout::without(const std::vector<std::string> &labels) const {
    for (const auto &l : labels)
        (void)position(l);
    std::vector<Subsystem> rest;
    for (const auto &s : subsystems_) {
        if (std::find(labels.begin(), labels.end(), s.label) == labels.end())
            rest.push_back(s);
    }
    return Layout(std::move(rest));
}

Layout Layout::restricted(const std::vector<std::string> &labels) const {
    for (const auto &l : labels)
        (void)position(l);
    std::vector<Subsystem> kept;
    for (const auto &s : subsystems_) {
        if (std::find(labels.begin(), labels.end(), s.label) != labels.end())
            kept.push_back(s);
    }
    return Layout(std::move(kept));
}

// ---------------------------------------------------------------------------
// States

StateVector::StateVector(Layout layout, Vector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim())
        throw Error(ErrorCode::dimension_mismatch,
                    "amplitude count " + std::to_string(amplitudes_.size()) +
                        " does not match layout dimension " +
                        std::to_string(layout_.total_dim()));
    const double n = amplitudes_.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw Error(ErrorCode::invalid_argument,
                    "state has zero or non-finite norm");
    if (std::abs(n - 1.0) > kNormTol)
        amplitudes_ /= n;
}

std::vector<std::string> StateVector::basis_labels(std::size_t i) const {
    const auto d = layout_.digits(i);
    std::vector<std::string> out;
    out.reserve(d.size());
    for (std::size_t k = 0; k < d.size(); ++k)
        out.push_back(basis_label(layout_[k].kind, d[k]));
    return out;
}

DensityMatrix::DensityMatrix(Layout layout, Matrix entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
    const auto n = static_cast<Eigen::Index>(layout_.total_dim());
    if (entries_.rows() != n || entries_.cols() != n)
        throw Error(ErrorCode::dimension_mismatch,
                    "density matrix size does not match layout");
    const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kNormTol)
        throw Error(ErrorCode::invalid_argument,
                    "density matrix is not Hermitian");
    if (std::abs(entries_.trace() - cplx(1.0)) > kNormTol)
        throw Error(ErrorCode::invalid_argument,
                    "density matrix trace differs from 1");
}

DensityMatrix DensityMatrix::from_pure(const StateVector &state) {
    const Vector &v = state.amplitudes();
    return DensityMatrix(state.layout(), v * v.adjoint());
}

double DensityMatrix::purity() const {
    return (entries_ * entries_).trace().real();
}

// ---------------------------------------------------------------------------
// Gates

double unitarity_defect(const Matrix &u) {
    if (u.rows() != u.cols())
        return INFINITY;
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()))
        .cwiseAbs()
        .maxCoeff();
}

GateOp::GateOp(std::string name, std::vector<std::string> targets,
               Matrix matrix, std::vector<std::size_t> forbidden_inputs)
    : name_(std::move(name)), targets_(std::move(targets)),
      matrix_(std::move(matrix)), forbidden_(std::move(forbidden_inputs)) {
    if (targets_.empty())
        throw Error(ErrorCode::invalid_argument, "gate has no targets");
    std::set<std::string> unique(targets_.begin(), targets_.end());
    if (unique.size() != targets_.size())
        throw Error(ErrorCode::invalid_argument, "gate targets repeat");
    const double defect = unitarity_defect(matrix_);
    if (!(defect < kUnitaryTol))
        throw Error(ErrorCode::non_unitary,
                    "gate '" + name_ + "' is not unitary (defect " +
                        std::to_string(defect) + ")");
    for (auto f : forbidden_) {
        if (f >= static_cast<std::size_t>(matrix_.rows()))
            throw Error(ErrorCode::out_of_range,
                        "forbidden input index out of range");
    }
}

StateVector basis_state(const Layout &layout,
                        const std::map<std::string, std::size_t> &indices) {
    for (const auto &[label, idx] : indices)
        (void)layout.position(label);
    std::vector<std::size_t> digits(layout.size());
    for (std::size_t i = 0; i < layout.size(); ++i) {
        auto it = indices.find(layout[i].label);
        if (it == indices.end())
            throw Error(ErrorCode::invalid_argument,
                        "no basis index given for '" + layout[i].label + "'");
        if (it->second >= layout[i].dim)
            throw Error(ErrorCode::out_of_range,
                        "index " + std::to_string(it->second) +
                            " out of range for '" + layout[i].label +
                            "' (dim " + std::to_string(layout[i].dim) + ")");
        digits[i] = it->second;
    }
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    amps(static_cast<Eigen::Index>(layout.flat_index(digits))) = 1.0;
    return StateVector(layout, std::move(amps));
}

StateVector basis_state(const Layout &layout,
                        const std::map<std::string, std::string> &labels) {
    std::map<std::string, std::size_t> indices;
    for (const auto &[label, name] : labels) {
        const auto &s = layout.at(label);
        indices[label] = basis_index(s.kind, s.dim, name);
    }
    return basis_state(layout, indices);
}

StateVector superpose(std::span<const std::pair<cplx, StateVector>> terms) {
    if (terms.empty())
        throw Error(ErrorCode::invalid_argument, "empty superposition");
    const Layout &layout = terms.front().second.layout();
    Vector acc = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    for (const auto &[c, s] : terms) {
        if (!(s.layout() == layout))
            throw Error(ErrorCode::dimension_mismatch,
                        "superposition terms have different layouts");
        acc += c * s.amplitudes();
    }
    return StateVector(layout, std::move(acc));
}

StateVector kron(const StateVector &a, const StateVector &b) {
    std::vector<Subsystem> subs = a.layout().subsystems();
    for (const auto &s : b.layout().subsystems())
        subs.push_back(s);
    Layout layout(std::move(subs));
    const auto nb = static_cast<Eigen::Index>(b.dim());
    Vector amps(static_cast<Eigen::Index>(layout.total_dim()));
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
        amps.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
    return StateVector(std::move(layout), std::move(amps));
}

namespace {

struct TargetIndexing {
    std::vector<std::size_t> local_offsets; // flat offset of each local index
    std::vector<std::size_t> bases;         // flat index with target digits 0
};

TargetIndexing index_targets(const Layout &layout,
                             const std::vector<std::string> &targets) {
    std::vector<std::size_t> pos;
    pos.reserve(targets.size());
    std::size_t local_dim = 1;
    for (const auto &t : targets) {
        pos.push_back(layout.position(t));
        local_dim *= layout[pos.back()].dim;
    }

    TargetIndexing ix;
    ix.local_offsets.assign(local_dim, 0);
    for (std::size_t k = 0; k < local_dim; ++k) {
        std::size_t rem = k;
        std::size_t off = 0;
        for (std::size_t j = pos.size(); j-- > 0;) {
            const auto d = layout[pos[j]].dim;
            off += (rem % d) * layout.stride(pos[j]);
            rem /= d;
        }
        ix.local_offsets[k] = off;
    }

    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        if (std::find(pos.begin(), pos.end(), i) == pos.end())
            rest.push_back(i);
    }
    std::size_t rest_dim = layout.total_dim() / local_dim;
    ix.bases.reserve(rest_dim);
    std::vector<std::size_t> digit(rest.size(), 0);
    for (std::size_t r = 0; r < rest_dim; ++r) {
        std::size_t base = 0;
        for (std::size_t j = 0; j < rest.size(); ++j)
            base += digit[j] * layout.stride(rest[j]);
        ix.bases.push_back(base);
        for (std::size_t j = rest.size(); j-- > 0;) {
            if (++digit[j] < layout[rest[j]].dim)
                break;
            digit[j] = 0;
        }
    }
    return ix;
}

} // namespace

StateVector apply_gate(const StateVector &state, const GateOp &gate) {
    const Layout &layout = state.layout();
    std::size_t local_dim = 1;
    for (const auto &t : gate.targets())
        local_dim *= layout.at(t).dim;
    if (local_dim != static_cast<std::size_t>(gate.matrix().rows()))
        throw Error(ErrorCode::dimension_mismatch,
                    "gate '" + gate.name() + "' has dimension " +
                        std::to_string(gate.matrix().rows()) +
                        " but its targets span " + std::to_string(local_dim));

    const auto ix = index_targets(layout, gate.targets());
    const Vector &in = state.amplitudes();

    for (auto f : gate.forbidden_inputs()) {
        for (auto base : ix.bases) {
            if (std::abs(in(static_cast<Eigen::Index>(
                    base + ix.local_offsets[f]))) > kNormTol)
                throw Error(ErrorCode::fock_overflow,
                            "gate '" + gate.name() +
                                "' would move population beyond the Fock "
                                "cutoff");
        }
    }

    const Matrix &u = gate.matrix();
    Vector out(in.size());
    Vector local(static_cast<Eigen::Index>(local_dim));
    for (auto base : ix.bases) {
        for (std::size_t k = 0; k < local_dim; ++k)
            local(static_cast<Eigen::Index>(k)) =
                in(static_cast<Eigen::Index>(base + ix.local_offsets[k]));
        const Vector mapped = u * local;
        for (std::size_t k = 0; k < local_dim; ++k)
            out(static_cast<Eigen::Index>(base + ix.local_offsets[k])) =
                mapped(static_cast<Eigen::Index>(k));
    }
    return StateVector(layout, std::move(out));
}

Matrix kron_oracle(const GateOp &gate, const Layout &layout, std::size_t cap) {
    const std::size_t n = layout.total_dim();
    if (n > cap)
        throw Error(ErrorCode::cap_exceeded,
                    "oracle dimension " + std::to_string(n) +
                        " exceeds cap " + std::to_string(cap));
    std::vector<std::size_t> pos;
    for (const auto &t : gate.targets())
        pos.push_back(layout.position(t));

    // Per basis index: local index over the targets and a key for the
    // remaining digits (targets zeroed).
    std::vector<std::size_t> local(n), rest_key(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto d = layout.digits(i);
        std::size_t loc = 0;
        for (auto p : pos) {
            loc = loc * layout[p].dim + d[p];
            d[p] = 0;
        }
        local[i] = loc;
        rest_key[i] = layout.flat_index(d);
    }

    const Matrix &u = gate.matrix();
    if (static_cast<std::size_t>(u.rows()) !=
        std::accumulate(pos.begin(), pos.end(), std::size_t{1},
                        [&](std::size_t acc, std::size_t p) {
                            return acc * layout[p].dim;
                        }))
        throw Error(ErrorCode::dimension_mismatch,
                    "gate dimension does not match its targets");

    Matrix full = Matrix::Zero(static_cast<Eigen::Index>(n),
                               static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            if (rest_key[r] == rest_key[c])
                full(static_cast<Eigen::Index>(r),
                     static_cast<Eigen::Index>(c)) =
                    u(static_cast<Eigen::Index>(local[r]),
                      static_cast<Eigen::Index>(local[c]));
        }
    }
    return full;
}

cplx inner(const StateVector &a, const StateVector &b) {
    if (!(a.layout() == b.layout()))
        throw Error(ErrorCode::dimension_mismatch,
                    "inner product of states with different layouts");
    return a.amplitudes().dot(b.amplitudes());
}

double overlap_probability(const StateVector &a, const StateVector &b) {
    return std::norm(inner(a, b));
}

DensityMatrix partial_trace(const DensityMatrix &rho,
                            const std::vector<std::string> &keep) {
    if (keep.empty())
        throw Error(ErrorCode::invalid_argument,
                    "partial trace needs at least one kept subsystem");
    const Layout &layout = rho.layout();
    const Layout kept = layout.restricted(keep);
    std::vector<std::size_t> kept_pos;
    for (const auto &s : kept.subsystems())
        kept_pos.push_back(layout.position(s.label));

    const std::size_t n = layout.total_dim();
    std::vector<std::size_t> kidx(n), ridx(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto d = layout.digits(i);
        std::size_t k = 0;
        for (auto p : kept_pos) {
            k = k * layout[p].dim + d[p];
            d[p] = 0;
        }
        kidx[i] = k;
        ridx[i] = layout.flat_index(d);
    }
    const auto m = static_cast<Eigen::Index>(kept.total_dim());
    Matrix out = Matrix::Zero(m, m);
    const Matrix &e = rho.entries();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (ridx[r] == ridx[c])
                out(static_cast<Eigen::Index>(kidx[r]),
                    static_cast<Eigen::Index>(kidx[c])) +=
                    e(static_cast<Eigen::Index>(r),
                      static_cast<Eigen::Index>(c));
        }
    }
    // Restore exact Hermiticity lost to summation order.
    Matrix herm = 0.5 * (out + out.adjoint());
    return DensityMatrix(kept, std::move(herm));
}

StateVector permute_subsystems(const StateVector &state,
                               const std::vector<std::string> &new_order) {
    const Layout &layout = state.layout();
    if (new_order.size() != layout.size())
        throw Error(ErrorCode::invalid_argument,
                    "new order is not a permutation of the layout");
    std::set<std::string> unique(new_order.begin(), new_order.end());
    if (unique.size() != new_order.size())
        throw Error(ErrorCode::invalid_argument,
                    "new order repeats a subsystem");
    std::vector<std::size_t> src;
    std::vector<Subsystem> subs;
    for (const auto &l : new_order) {
        src.push_back(layout.position(l));
        subs.push_back(layout[src.back()]);
    }
    Layout target(std::move(subs));
    const std::size_t n = layout.total_dim();
    Vector out(static_cast<Eigen::Index>(n));
    std::vector<std::size_t> nd(layout.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto d = layout.digits(i);
        for (std::size_t j = 0; j < src.size(); ++j)
            nd[j] = d[src[j]];
        out(static_cast<Eigen::Index>(target.flat_index(nd))) =
            state.amplitudes()(static_cast<Eigen::Index>(i));
    }
    return StateVector(std::move(target), std::move(out));
}

DensityMatrix reduced_density(const StateVector &state,
                              const std::vector<std::string> &keep) {
    if (keep.empty())
        throw Error(ErrorCode::invalid_argument,
                    "partial trace needs at least one kept subsystem");
    const Layout &layout = state.layout();
    const Layout kept = layout.restricted(keep);
    std::vector<std::string> order = kept.labels();
    for (const auto &s : layout.subsystems()) {
        if (!kept.contains(s.label))
            order.push_back(s.label);
    }
    const StateVector permuted = permute_subsystems(state, order);
    const auto dk = static_cast<Eigen::Index>(kept.total_dim());
    const auto dr = static_cast<Eigen::Index>(layout.total_dim()) / dk;
    // Row-major reshape: row = kept index, column = rest index.
    Matrix m(dk, dr);
    for (Eigen::Index i = 0; i < dk; ++i)
        for (Eigen::Index j = 0; j < dr; ++j)
            m(i, j) = permuted.amplitudes()(i * dr + j);
    Matrix rho = m * m.adjoint();
    Matrix herm = 0.5 * (rho + rho.adjoint());
    herm /= herm.trace().real();
    return DensityMatrix(kept, std::move(herm));
}

} // namespace hyperqed
