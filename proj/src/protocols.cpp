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

#include "hyperqed/protocols.hpp"

#include <cmath>
#include <numbers>

namespace hyperqed {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

bool same_time(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
}

std::string ground_label(std::size_t count) {
    std::string s;
    for (std::size_t i = 0; i < count; ++i)
        s += i ? ",g" : "g";
    return s;
}

} // namespace

const char *to_string(StepKind kind) {
    switch (kind) {
    case StepKind::gate:
        return "gate";
    case StepKind::remove:
        return "remove";
    case StepKind::detect:
        return "detect";
    }
    return "unknown";
}

bool ProtocolTrace::passed(double tol) const {
    for (const auto &o : outcomes) {
        if (!o.report)
            continue;
        if (o.report->fidelity < 1.0 - tol ||
            o.report->branch_magnitude_fidelity < 1.0 - tol)
            return false;
    }
    return true;
}

double ProtocolTrace::total_probability() const {
    double p = 0.0;
    for (const auto &o : outcomes)
        p += o.detection.probability;
    return p;
}

// ---------------------------------------------------------------------------

TraceBuilder::TraceBuilder(std::string name, PhaseConvention convention,
                           PhysicalParams params, StateVector initial,
                           std::size_t snapshot_cap)
    : state_(std::move(initial)), snapshot_cap_(snapshot_cap) {
    trace_.name = std::move(name);
    trace_.convention = convention;
    trace_.params = params;
    trace_.snapshots.push_back(state_);
}

void TraceBuilder::record(TraceStep step) {
    step.dim = state_.dim();
    step.norm = state_.norm();
    if (state_.dim() <= snapshot_cap_) {
        trace_.snapshots.push_back(state_);
        step.snapshot = trace_.snapshots.size() - 1;
    }
    trace_.steps.push_back(std::move(step));
}

void TraceBuilder::apply(const GateOp &gate, std::optional<std::size_t> line) {
    if (detection_)
        throw Error(ErrorCode::invalid_argument,
                    "no steps may follow detection");
    state_ = apply_gate(state_, gate);
    TraceStep step;
    step.kind = StepKind::gate;
    step.description = gate.name();
    step.targets = gate.targets();
    step.gate = gate;
    step.line = line;
    record(std::move(step));
}

void TraceBuilder::remove(const std::string &label,
                          std::optional<std::size_t> line) {
    if (detection_)
        throw Error(ErrorCode::invalid_argument,
                    "no steps may follow detection");
    const DensityMatrix rho = reduced_density(state_, {label});
    TraceStep step;
    step.kind = StepKind::remove;
    step.description = "remove " + label;
    step.targets = {label};
    step.removed_purity = rho.purity();
    step.vacuum_population = rho.entries()(0, 0).real();
    step.line = line;
    state_ = remove_disentangled(state_, label);
    record(std::move(step));
}

void TraceBuilder::detect(const std::vector<std::string> &targets,
                          std::optional<std::size_t> line) {
    if (detection_)
        throw Error(ErrorCode::invalid_argument, "detection already recorded");
    detection_ = detect_all(state_, targets);
    TraceStep step;
    step.kind = StepKind::detect;
    std::string d = "detect";
    for (const auto &t : targets)
        d += " " + t;
    step.description = d;
    step.targets = targets;
    step.line = line;
    // Detection does not change the pre-measurement snapshot.
    step.dim = state_.dim();
    step.norm = state_.norm();
    trace_.steps.push_back(std::move(step));
}

ProtocolTrace TraceBuilder::finish(const ReferenceLookup &references,
                                   double compare_threshold) {
    std::vector<DetectionOutcome> outcomes;
    if (detection_) {
        outcomes = std::move(*detection_);
    } else {
        DetectionOutcome d;
        d.probability = 1.0;
        d.post_state = state_;
        outcomes.push_back(std::move(d));
    }
    for (auto &d : outcomes) {
        TraceOutcome o;
        o.detection = std::move(d);
        if (references) {
            if (auto ref = references(o.detection.label())) {
                o.reference_name = ref->first;
                o.reference = ref->second;
                if (o.detection.post_state)
                    o.report = compare(*o.detection.post_state, ref->second,
                                       compare_threshold);
            }
        }
        trace_.outcomes.push_back(std::move(o));
    }
    return std::move(trace_);
}

// ---------------------------------------------------------------------------

StateVector product_state(const Layout &layout,
                          const std::function<int(const std::string &)> &cavity_init) {
    Vector amps = Vector::Ones(1);
    const double r = 1.0 / std::sqrt(2.0);
    for (const auto &s : layout.subsystems()) {
        Vector local = Vector::Zero(static_cast<Eigen::Index>(s.dim));
        if (s.kind == SubsystemKind::cavity) {
            const int init = cavity_init ? cavity_init(s.label) : 0;
            if (init < 0) {
                local(0) = r;
                local(1) = r;
            } else {
                local(init) = 1.0;
            }
        } else {
            local(0) = 1.0;
        }
        Vector next(amps.size() * local.size());
        for (Eigen::Index i = 0; i < amps.size(); ++i)
            next.segment(i * local.size(), local.size()) = amps(i) * local;
        amps = std::move(next);
    }
    return StateVector(layout, std::move(amps));
}

double phase_for_coefficient(cplx c) {
    // -i e^{i phi} = c  =>  e^{i phi} = i c.
    return std::arg(kI * c);
}

ReferenceLookup make_reference_lookup(ReferenceName name,
                                      const ReferenceParams &params,
                                      double lambda_disp) {
    (void)lambda_disp;
    switch (name) {
    case ReferenceName::eq16:
        return [](const std::string &label)
                   -> std::optional<std::pair<std::string, StateVector>> {
            return std::pair{std::string("eq16"),
                             reference_state(ReferenceName::eq16, label)};
        };
    case ReferenceName::eq21:
        return [params](const std::string &label)
                   -> std::optional<std::pair<std::string, StateVector>> {
            if (label == "e,g" && same_time(params.lambda_t, kPi / 2.0))
                return std::pair{std::string("eq22"),
                                 reference_state(ReferenceName::eq22)};
            return std::pair{std::string("eq21"),
                             reference_state(ReferenceName::eq21, label, params)};
        };
    case ReferenceName::eq29:
        return [params](const std::string &label)
                   -> std::optional<std::pair<std::string, StateVector>> {
            if (label != ground_label(params.n + 2))
                return std::nullopt;
            return std::pair{std::string("eq29"),
                             reference_state(ReferenceName::eq29, {}, params)};
        };
    default:
        return [name, params](const std::string &label)
                   -> std::optional<std::pair<std::string, StateVector>> {
            if (!label.empty())
                return std::nullopt;
            return std::pair{std::string(to_string(name)),
                             reference_state(name, {}, params)};
        };
    }
}

// ---------------------------------------------------------------------------
// Built-in pipelines

namespace {

void tag_atom(TraceBuilder &tb, std::size_t cavity, std::size_t atom,
              const PhysicalParams &p, double phi) {
    tb.apply(bragg_gate(tb.layout(), cavity_label(cavity),
                        momentum_label(atom), p.bragg_endpoint(), p));
    tb.apply(classical_pulse(tb.layout(), atom_label(atom),
                             momentum_label(atom), 1, p.pulse_endpoint(),
                             p.omega_classical, phi));
}

} // namespace

ProtocolTrace tag_chain(std::size_t n, PhaseConvention convention,
                        const PhysicalParams &params, std::size_t max_atoms) {
    if (n < 1 || n > max_atoms)
        throw Error(ErrorCode::cap_exceeded,
                    "tag chain needs 1 <= n <= " + std::to_string(max_atoms));
    params.validate();

    std::vector<Subsystem> subs{{cavity_label(1), SubsystemKind::cavity, 2}};
    for (auto &s : atom_subsystems(1, n))
        subs.push_back(std::move(s));
    const Layout layout(std::move(subs));
    TraceBuilder tb("tag_chain", convention, params,
                    product_state(layout, [](const std::string &) { return -1; }));

    // Per-atom excited-branch coefficients in the paper convention: the
    // single-atom -i, the "+" GHZ pair, and (i)^{3j} for longer chains.
    std::vector<double> phases(n, 0.0);
    if (convention == PhaseConvention::paper) {
        if (n == 2) {
            phases[1] = phase_for_coefficient(kI);
        } else if (n > 2) {
            for (std::size_t j = 1; j <= n; ++j) {
                const cplx c = std::pow(kI, static_cast<int>(3 * j));
                phases[j - 1] = phase_for_coefficient(
                    {std::round(c.real()), std::round(c.imag())});
            }
        }
    }
    for (std::size_t j = 1; j <= n; ++j)
        tag_atom(tb, 1, j, params, phases[j - 1]);

    ReferenceParams rp;
    rp.n = n;
    const ReferenceName ref = n == 1   ? ReferenceName::eq6
                              : n == 2 ? ReferenceName::eq17
                                       : ReferenceName::eq7;
    return tb.finish(make_reference_lookup(ref, rp, params.lambda_disp));
}

ProtocolTrace linear_cluster(PhaseConvention convention,
                             std::optional<double> t2,
                             const PhysicalParams &params) {
    params.validate();
    const double t_disp = t2.value_or(params.dispersive_pi());
    if (t_disp < 0.0)
        throw Error(ErrorCode::invalid_argument,
                    "dispersive time must be non-negative");

    std::vector<Subsystem> subs{{cavity_label(1), SubsystemKind::cavity, 2},
                                {cavity_label(2), SubsystemKind::cavity, 2}};
    for (auto &s : atom_subsystems(1, 2))
        subs.push_back(std::move(s));
    subs.push_back({aux_label(1), SubsystemKind::auxiliary, 2});
    subs.push_back({aux_label(2), SubsystemKind::auxiliary, 2});
    const Layout layout(std::move(subs));
    TraceBuilder tb("linear_cluster", convention, params,
                    product_state(layout, [](const std::string &) { return -1; }));

    // Paper convention: atom 1 enters with +i on its excited branch so the
    // printed dispersive phases land on the printed detection blocks.
    const double phi1 =
        convention == PhaseConvention::paper ? phase_for_coefficient(kI) : 0.0;
    tag_atom(tb, 1, 1, params, phi1);
    tag_atom(tb, 2, 2, params, 0.0);

    tb.apply(jc_swap(tb.layout(), "c1", "x1", params.jc_endpoint(), params.mu));
    tb.remove("c1");
    tb.apply(dispersive_gate(tb.layout(), "c2", "x1", t_disp,
                             params.lambda_disp, convention));
    tb.apply(jc_swap(tb.layout(), "c2", "x2", params.jc_endpoint(), params.mu));
    tb.remove("c2");
    tb.apply(ramsey_transform(tb.layout(), "x1"));
    tb.apply(ramsey_transform(tb.layout(), "x2"));
    tb.detect({"x1", "x2"});

    if (!same_time(t_disp, params.dispersive_pi()))
        return tb.finish();
    return tb.finish(
        make_reference_lookup(ReferenceName::eq16, {}, params.lambda_disp));
}

ProtocolTrace cluster_2d(PhaseConvention convention,
                         std::optional<double> t_d,
                         const PhysicalParams &params) {
    params.validate();
    const double t_disp = t_d.value_or(params.dispersive_pi() / 2.0);
    if (t_disp < 0.0)
        throw Error(ErrorCode::invalid_argument,
                    "dispersive time must be non-negative");

    std::vector<Subsystem> subs{{cavity_label(1), SubsystemKind::cavity, 2},
                                {cavity_label(2), SubsystemKind::cavity, 2}};
    for (auto &s : atom_subsystems(1, 4))
        subs.push_back(std::move(s));
    subs.push_back({aux_label(1), SubsystemKind::auxiliary, 2});
    subs.push_back({aux_label(2), SubsystemKind::auxiliary, 2});
    const Layout layout(std::move(subs));
    TraceBuilder tb("cluster_2d", convention, params,
                    product_state(layout, [](const std::string &) { return -1; }));

    // Paper convention: each pair ends with the printed "+" GHZ branch.
    const double phi_second =
        convention == PhaseConvention::paper ? phase_for_coefficient(kI) : 0.0;
    tag_atom(tb, 1, 1, params, 0.0);
    tag_atom(tb, 1, 2, params, phi_second);
    tag_atom(tb, 2, 3, params, 0.0);
    tag_atom(tb, 2, 4, params, phi_second);

    tb.apply(jc_swap(tb.layout(), "c1", "x1", params.jc_endpoint(), params.mu));
    tb.remove("c1");
    tb.apply(dispersive_gate(tb.layout(), "c2", "x1", t_disp,
                             params.lambda_disp, convention));
    tb.apply(jc_swap(tb.layout(), "c2", "x2", params.jc_endpoint(), params.mu));
    tb.remove("c2");
    tb.apply(ramsey_transform(tb.layout(), "x1"));
    tb.apply(ramsey_transform(tb.layout(), "x2"));
    tb.detect({"x1", "x2"});

    ReferenceParams rp;
    rp.lambda_t = params.lambda_disp * t_disp;
    return tb.finish(
        make_reference_lookup(ReferenceName::eq21, rp, params.lambda_disp));
}

ProtocolTrace ring_graph(std::size_t n, PhaseConvention convention,
                         const PhysicalParams &params, std::size_t max_nodes) {
    if (n < 2)
        throw Error(ErrorCode::invalid_argument,
                    "a ring needs at least 2 nodes (j >= 2); one atom gives "
                    "only a hyper-superposition");
    if (n > max_nodes)
        throw Error(ErrorCode::cap_exceeded,
                    "ring graph limited to n <= " + std::to_string(max_nodes));
    params.validate();

    std::vector<Subsystem> subs;
    for (std::size_t k = 1; k <= n; ++k)
        subs.push_back({cavity_label(k), SubsystemKind::cavity, 2});
    for (auto &s : atom_subsystems(1, n))
        subs.push_back(std::move(s));
    for (std::size_t k = 0; k <= n; ++k)
        subs.push_back({aux_label(k), SubsystemKind::auxiliary, 2});
    const Layout layout(std::move(subs));
    TraceBuilder tb("ring_graph", convention, params,
                    product_state(layout, [](const std::string &) { return -1; }));

    // Paper convention: atom 1 (linked twice) enters with +i, the others
    // with -i, so the all-ground pattern carries "+" on every factor.
    for (std::size_t j = 1; j <= n; ++j) {
        const double phi = convention == PhaseConvention::paper && j == 1
                               ? phase_for_coefficient(kI)
                               : 0.0;
        tag_atom(tb, j, j, params, phi);
    }

    const std::string roving = aux_label(0);
    for (std::size_t k = 1; k <= n; ++k)
        tb.apply(dispersive_gate(tb.layout(), cavity_label(k), roving,
                                 params.dispersive_pi(), params.lambda_disp,
                                 convention));
    tb.apply(dispersive_gate(tb.layout(), cavity_label(1), roving,
                             params.dispersive_pi(), params.lambda_disp,
                             convention));
    tb.apply(ramsey_transform(tb.layout(), roving));

    for (std::size_t k = 1; k <= n; ++k) {
        tb.apply(jc_swap(tb.layout(), cavity_label(k), aux_label(k),
                         params.jc_endpoint(), params.mu));
        tb.remove(cavity_label(k));
    }
    std::vector<std::string> detected{roving};
    for (std::size_t k = 1; k <= n; ++k) {
        tb.apply(ramsey_transform(tb.layout(), aux_label(k)));
        detected.push_back(aux_label(k));
    }
    tb.detect(detected);

    // The printed product runs over n + 1 factors for n cavities; compare
    // against the product over the n atoms actually present.
    ReferenceParams rp;
    rp.n = n - 1;
    return tb.finish(
        make_reference_lookup(ReferenceName::eq29, rp, params.lambda_disp));
}

ProtocolTrace run_protocol(const std::string &name, std::optional<std::size_t> n,
                           PhaseConvention convention,
                           const PhysicalParams &params,
                           std::optional<double> dispersive_time) {
    if (name == "tag-chain" || name == "tag_chain") {
        if (!n)
            throw Error(ErrorCode::invalid_argument, "tag-chain needs -n");
        return tag_chain(*n, convention, params);
    }
    if (name == "linear-cluster" || name == "linear_cluster")
        return linear_cluster(convention, dispersive_time, params);
    if (name == "cluster-2d" || name == "cluster_2d")
        return cluster_2d(convention, dispersive_time, params);
    if (name == "ring-graph" || name == "ring_graph") {
        if (!n)
            throw Error(ErrorCode::invalid_argument, "ring-graph needs -n");
        return ring_graph(*n, convention, params);
    }
    throw Error(ErrorCode::invalid_argument, "unknown protocol '" + name + "'");
}

} // namespace hyperqed
