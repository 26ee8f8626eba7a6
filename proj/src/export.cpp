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

#include "hyperqed/export.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace hyperqed {

namespace {

using json = nlohmann::ordered_json;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json layout_json(const Layout &layout) {
    json arr = json::array();
    for (const auto &s : layout.subsystems())
        arr.push_back({{"label", s.label}, {"kind", to_string(s.kind)}, {"dim", s.dim}});
    return arr;
}

json state_value(const StateVector &state, double threshold) {
    json amps = json::array();
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const cplx a = state.amplitude(i);
        if (!(std::abs(a) > threshold))
            continue;
        amps.push_back({{"basis", state.basis_labels(i)}, {"re", a.real()}, {"im", a.imag()}});
    }
    return {{"layout", layout_json(state.layout())},
            {"threshold", threshold},
            {"amplitudes", std::move(amps)}};
}

json report_value(const CompareReport &r) {
    json res = json::array();
    for (const auto &p : r.phase_residuals)
        res.push_back({{"basis", p.basis}, {"phase", p.phase}});
    return {{"fidelity", r.fidelity},
            {"branch_magnitude_fidelity", r.branch_magnitude_fidelity},
            {"relative_phase_spread", r.relative_phase_spread()},
            {"phase_residuals", std::move(res)},
            {"support_mismatch", r.support_mismatch}};
}

json params_value(const PhysicalParams &p) {
    const auto check = p.adiabatic_check();
    return {{"mu", p.mu},
            {"delta", p.delta},
            {"omega_r", p.omega_r},
            {"lambda", p.lambda_disp},
            {"omega", p.omega_classical},
            {"adiabatic",
             {{"delta_over_omega_r", check.detuning_over_recoil},
              {"omega_r_delta_over_mu2", check.recoil_detuning_over_mu2},
              {"valid", check.valid}}}};
}

} // namespace

std::string state_json(const StateVector &state, double threshold) {
    return state_value(state, threshold).dump(2);
}

std::string gate_json(const GateOp &gate) {
    json rows = json::array();
    const Matrix &m = gate.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return json{{"schema_version", kSchemaVersion},
                {"name", gate.name()},
                {"targets", gate.targets()},
                {"matrix", std::move(rows)}}
        .dump(2);
}

std::string compare_json(const CompareReport &report) {
    json j = report_value(report);
    j["schema_version"] = kSchemaVersion;
    return j.dump(2);
}

std::string trace_json(const ProtocolTrace &trace, double threshold) {
    json steps = json::array();
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto &s = trace.steps[i];
        json js{{"index", i},
                {"kind", to_string(s.kind)},
                {"description", s.description},
                {"targets", s.targets},
                {"dim", s.dim},
                {"norm", s.norm}};
        js["snapshot"] = s.snapshot ? json(*s.snapshot) : json(nullptr);
        if (s.removed_purity)
            js["removed_purity"] = *s.removed_purity;
        if (s.vacuum_population)
            js["vacuum_population"] = *s.vacuum_population;
        if (s.line)
            js["line"] = *s.line;
        steps.push_back(std::move(js));
    }
    json outcomes = json::array();
    for (const auto &o : trace.outcomes) {
        json assign = json::object();
        for (const auto &[label, value] : o.detection.assignments)
            assign[label] = value;
        json jo{{"label", o.detection.label()},
                {"assignments", std::move(assign)},
                {"probability", o.detection.probability},
                {"zero_probability", o.detection.zero_probability}};
        jo["reference"] = o.reference_name.empty() ? json(nullptr)
                                                   : json(o.reference_name);
        jo["report"] = o.report ? report_value(*o.report) : json(nullptr);
        jo["state"] = o.detection.post_state
                          ? state_value(*o.detection.post_state, threshold)
                          : json(nullptr);
        outcomes.push_back(std::move(jo));
    }
    json j{{"schema_version", kSchemaVersion},
           {"kind", "protocol_trace"},
           {"name", trace.name},
           {"convention", to_string(trace.convention)},
           {"params", params_value(trace.params)},
           {"initial_state", state_value(trace.snapshots.front(), threshold)},
           {"steps", std::move(steps)},
           {"outcomes", std::move(outcomes)},
           {"total_probability", trace.total_probability()},
           {"passed", trace.passed()}};
    return j.dump(2) + "\n";
}

std::string outcomes_csv(const ProtocolTrace &trace) {
    std::ostringstream os;
    os << "outcome,probability,zero_probability,reference,fidelity,"
          "branch_magnitude_fidelity,phase_spread,state_ref\n";
    for (std::size_t i = 0; i < trace.outcomes.size(); ++i) {
        const auto &o = trace.outcomes[i];
        os << '"' << o.detection.label() << '"' << ','
           << num(o.detection.probability) << ','
           << (o.detection.zero_probability ? "true" : "false") << ','
           << o.reference_name << ',';
        if (o.report)
            os << num(o.report->fidelity) << ','
               << num(o.report->branch_magnitude_fidelity) << ','
               << num(o.report->relative_phase_spread());
        else
            os << ",,";
        os << ",outcomes[" << i << "].state\n";
    }
    return os.str();
}

std::string trace_summary(const ProtocolTrace &trace, bool ascii) {
    std::ostringstream os;
    os << trace.name << " (" << to_string(trace.convention) << " convention, "
       << trace.steps.size() << " steps)\n";
    for (const auto &o : trace.outcomes) {
        const std::string label =
            o.detection.label().empty() ? "final" : o.detection.label();
        char line[160];
        std::snprintf(line, sizeof line, "  [%s] p=%.6f", label.c_str(),
                      o.detection.probability);
        os << line;
        if (o.report) {
            std::snprintf(line, sizeof line,
                          "  vs %s: fidelity=%.12f branch-magnitude=%.12f "
                          "phase-spread=%.6f",
                          o.reference_name.c_str(), o.report->fidelity,
                          o.report->branch_magnitude_fidelity,
                          o.report->relative_phase_spread());
            os << line;
        }
        os << "\n";
        if (o.detection.post_state) {
            KetFormat f;
            f.ascii = ascii;
            os << "      " << ket_string(*o.detection.post_state, f) << "\n";
        }
        if (o.report && o.report->relative_phase_spread() > 1e-9) {
            os << "      phase residuals:";
            for (const auto &r : o.report->phase_residuals) {
                std::snprintf(line, sizeof line, " %s:%+.6f", r.basis.c_str(),
                              r.phase);
                os << line;
            }
            os << "\n";
        }
    }
    os << "  total probability " << num(trace.total_probability()) << ", "
       << (trace.passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string noise_csv(const WitnessSeries &series) {
    const auto &p = series.params;
    std::ostringstream os;
    os << "# mode=" << to_string(series.mode) << " lambda=" << num(p.lambda_c)
       << " xi=" << num(p.xi) << " deltas=";
    for (std::size_t i = 0; i < p.deltas.size(); ++i)
        os << (i ? ";" : "") << p.deltas[i];
    os << " flip_rate=" << num(p.flip_rate) << " n_traj=" << p.n_traj
       << " seed=" << p.seed << " points=" << p.t_grid.size() << "\n";
    os << "time,ew,stderr,neg_ew\n";
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        os << num(series.times[i]) << ',' << num(series.ew[i]) << ',';
        if (!series.std_error.empty())
            os << num(series.std_error[i]);
        os << ',' << num(-series.ew[i]) << '\n';
    }
    return os.str();
}

std::string noise_metadata_json(const WitnessSeries &series) {
    const auto &p = series.params;
    json j{{"schema_version", kSchemaVersion},
           {"kind", "witness_series"},
           {"mode", to_string(series.mode)},
           {"seed", p.seed},
           {"lambda", p.lambda_c},
           {"xi", p.xi},
           {"deltas", p.deltas},
           {"flip_rate", p.flip_rate},
           {"n_traj", p.n_traj},
           {"points", p.t_grid.size()},
           {"t_max", p.t_grid.empty() ? 0.0 : p.t_grid.back()},
           {"max_trace_defect", series.max_trace_defect}};
    return j.dump(2) + "\n";
}

} // namespace hyperqed
