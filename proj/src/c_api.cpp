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

#include "hyperqed/hyperqed.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "hyperqed/dsl.hpp"
#include "hyperqed/export.hpp"
#include "hyperqed/noise.hpp"
#include "hyperqed/oracle.hpp"
#include "hyperqed/protocols.hpp"

struct hq_trace {
    hyperqed::ProtocolTrace trace;
};

struct hq_series {
    hyperqed::WitnessSeries series;
};

struct hq_oracle_report {
    hyperqed::OracleReport report;
};

namespace {

thread_local std::string g_last_error;

hq_status fail(hq_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

hq_status map_code(hyperqed::ErrorCode code) {
    using hyperqed::ErrorCode;
    switch (code) {
    case ErrorCode::invalid_argument:
        return HQ_E_INVALID_ARGUMENT;
    case ErrorCode::unknown_label:
        return HQ_E_UNKNOWN_LABEL;
    case ErrorCode::out_of_range:
        return HQ_E_OUT_OF_RANGE;
    case ErrorCode::dimension_mismatch:
        return HQ_E_DIMENSION;
    case ErrorCode::non_unitary:
        return HQ_E_NON_UNITARY;
    case ErrorCode::fock_overflow:
        return HQ_E_FOCK_OVERFLOW;
    case ErrorCode::entangled_subsystem:
        return HQ_E_ENTANGLED;
    case ErrorCode::cap_exceeded:
        return HQ_E_CAP_EXCEEDED;
    case ErrorCode::parse_error:
        return HQ_E_PARSE;
    case ErrorCode::runtime_error:
        return HQ_E_RUNTIME;
    }
    return HQ_E_INTERNAL;
}

template <class F> hq_status guard(F &&body) {
    try {
        return body();
    } catch (const hyperqed::Error &e) {
        return fail(map_code(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return fail(HQ_E_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(HQ_E_INTERNAL, e.what());
    }
}

char *dup(const std::string &s) {
    char *p = static_cast<char *>(std::malloc(s.size() + 1));
    if (p)
        std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class F> char *dup_guard(F &&body) {
    try {
        return dup(body());
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return nullptr;
    }
}

hyperqed::PhysicalParams to_params(const hq_params *p) {
    if (!p)
        return hyperqed::PhysicalParams::natural();
    hyperqed::PhysicalParams out;
    out.mu = p->mu;
    out.delta = p->delta;
    out.omega_r = p->omega_r;
    out.lambda_disp = p->lambda_disp;
    out.omega_classical = p->omega_classical;
    return out;
}

hyperqed::PhaseConvention to_convention(hq_convention c) {
    return c == HQ_CONVENTION_HAMILTONIAN ? hyperqed::PhaseConvention::hamiltonian
                                          : hyperqed::PhaseConvention::paper;
}

} // namespace

extern "C" {

const char *hq_version(void) { return "0.1.0"; }

const char *hq_last_error(void) { return g_last_error.c_str(); }

const char *hq_status_string(hq_status status) {
    switch (status) {
    case HQ_OK:
        return "ok";
    case HQ_E_INVALID_ARGUMENT:
        return "invalid argument";
    case HQ_E_UNKNOWN_LABEL:
        return "unknown label";
    case HQ_E_OUT_OF_RANGE:
        return "out of range";
    case HQ_E_DIMENSION:
        return "dimension mismatch";
    case HQ_E_NON_UNITARY:
        return "non-unitary matrix";
    case HQ_E_FOCK_OVERFLOW:
        return "Fock cutoff overflow";
    case HQ_E_ENTANGLED:
        return "subsystem entangled";
    case HQ_E_CAP_EXCEEDED:
        return "cap exceeded";
    case HQ_E_PARSE:
        return "parse error";
    case HQ_E_RUNTIME:
        return "runtime error";
    case HQ_E_NULL_ARGUMENT:
        return "null argument";
    case HQ_E_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

void hq_string_free(char *s) { std::free(s); }

hq_status hq_params_preset(const char *name, hq_params *out) {
    if (!name || !out)
        return fail(HQ_E_NULL_ARGUMENT, "null argument to hq_params_preset");
    return guard([&] {
        const auto p = hyperqed::PhysicalParams::preset(name);
        *out = {p.mu, p.delta, p.omega_r, p.lambda_disp, p.omega_classical};
        return HQ_OK;
    });
}

int hq_params_adiabatic(const hq_params *params, double ratio_min) {
    if (!params)
        return 0;
    return to_params(params).adiabatic_check(ratio_min > 0 ? ratio_min : 10.0).valid
               ? 1
               : 0;
}

hq_status hq_protocol_run(const char *name, size_t n, hq_convention convention,
                          const hq_params *params, double dispersive_time,
                          hq_trace **out) {
    if (!name || !out)
        return fail(HQ_E_NULL_ARGUMENT, "null argument to hq_protocol_run");
    *out = nullptr;
    return guard([&] {
        std::optional<std::size_t> count;
        if (n > 0)
            count = n;
        std::optional<double> td;
        if (dispersive_time >= 0.0)
            td = dispersive_time;
        auto t = hyperqed::run_protocol(name, count, to_convention(convention),
                                        to_params(params), td);
        *out = new hq_trace{std::move(t)};
        return HQ_OK;
    });
}

hq_status hq_script_run(const char *text, hq_convention convention,
                        const hq_params *params, hq_trace **out) {
    if (!text || !out)
        return fail(HQ_E_NULL_ARGUMENT, "null argument to hq_script_run");
    *out = nullptr;
    return guard([&] {
        auto parsed = hyperqed::dsl::parse(text);
        if (!parsed.ok()) {
            std::string msg;
            for (const auto &d : parsed.diagnostics)
                msg += d.format() + "\n";
            return fail(HQ_E_PARSE, msg);
        }
        hyperqed::dsl::ExecuteOptions opt;
        if (convention != HQ_CONVENTION_SCRIPT)
            opt.convention = to_convention(convention);
        if (params)
            opt.params = to_params(params);
        *out = new hq_trace{hyperqed::dsl::execute(*parsed.script, opt)};
        return HQ_OK;
    });
}

hq_status hq_script_format(const char *text, char **out) {
    if (!text || !out)
        return fail(HQ_E_NULL_ARGUMENT, "null argument to hq_script_format");
    *out = nullptr;
    return guard([&] {
        auto parsed = hyperqed::dsl::parse(text);
        if (!parsed.ok()) {
            std::string msg;
            for (const auto &d : parsed.diagnostics)
                msg += d.format() + "\n";
            return fail(HQ_E_PARSE, msg);
        }
        *out = dup(hyperqed::dsl::print(*parsed.script));
        return HQ_OK;
    });
}

void hq_trace_free(hq_trace *trace) { delete trace; }

int hq_trace_passed(const hq_trace *trace, double tol) {
    return trace && trace->trace.passed(tol) ? 1 : 0;
}

size_t hq_trace_outcome_count(const hq_trace *trace) {
    return trace ? trace->trace.outcomes.size() : 0;
}

size_t hq_trace_step_count(const hq_trace *trace) {
    return trace ? trace->trace.steps.size() : 0;
}

double hq_trace_total_probability(const hq_trace *trace) {
    return trace ? trace->trace.total_probability() : 0.0;
}

hq_status hq_trace_outcome(const hq_trace *trace, size_t index,
                           hq_outcome_info *info) {
    if (!trace || !info)
        return fail(HQ_E_NULL_ARGUMENT, "null argument to hq_trace_outcome");
    if (index >= trace->trace.outcomes.size())
        return fail(HQ_E_OUT_OF_RANGE, "outcome index out of range");
    const auto &o = trace->trace.outcomes[index];
    info->probability = o.detection.probability;
    info->has_report = o.report ? 1 : 0;
    info->fidelity = o.report ? o.report->fidelity : 0.0;
    info->branch_magnitude_fidelity =
        o.report ? o.report->branch_magnitude_fidelity : 0.0;
    info->phase_spread = o.report ? o.report->relative_phase_spread() : 0.0;
    return HQ_OK;
}

char *hq_trace_outcome_label(const hq_trace *trace, size_t index) {
    if (!trace || index >= trace->trace.outcomes.size())
        return nullptr;
    return dup(trace->trace.outcomes[index].detection.label());
}

char *hq_trace_outcome_report_json(const hq_trace *trace, size_t index) {
    if (!trace || index >= trace->trace.outcomes.size() ||
        !trace->trace.outcomes[index].report)
        return nullptr;
    return dup_guard(
        [&] { return hyperqed::compare_json(*trace->trace.outcomes[index].report); });
}

char *hq_trace_json(const hq_trace *trace) {
    if (!trace)
        return nullptr;
    return dup_guard([&] { return hyperqed::trace_json(trace->trace); });
}

char *hq_trace_csv(const hq_trace *trace) {
    if (!trace)
        return nullptr;
    return dup_guard([&] { return hyperqed::outcomes_csv(trace->trace); });
}

char *hq_trace_summary(const hq_trace *trace, int ascii) {
    if (!trace)
        return nullptr;
    return dup_guard([&] { return hyperqed::trace_summary(trace->trace, ascii != 0); });
}

void hq_noise_config_default(hq_noise_config *config) {
    if (!config)
        return;
    config->lambda_c = 1.0;
    config->xi = 0.0;
    for (int &d : config->deltas)
        d = 1;
    config->flip_rate = 0.0;
    config->t_max = hyperqed::kDefaultTMax;
    config->points = hyperqed::kDefaultGridPoints;
    config->n_traj = 1;
    config->seed = 0;
    config->telegraph = 0;
    config->state = nullptr;
}

hq_status hq_noise_run(const hq_noise_config *config, hq_series **out) {
    if (!config || !out)
        return fail(HQ_E_NULL_ARGUMENT, "null argument to hq_noise_run");
    *out = nullptr;
    return guard([&] {
        hyperqed::NoiseParams p;
        p.lambda_c = config->lambda_c;
        p.xi = config->xi;
        p.deltas.assign(std::begin(config->deltas), std::end(config->deltas));
        p.flip_rate = config->flip_rate;
        p.t_grid = hyperqed::uniform_grid(config->t_max, config->points);
        p.n_traj = config->n_traj;
        p.seed = config->seed;
        const auto w = config->state ? hyperqed::witness_state(config->state)
                                     : hyperqed::default_witness_state();
        auto s = config->telegraph ? hyperqed::evolve_telegraph(w, p)
                                   : hyperqed::evolve_frozen(w, p);
        *out = new hq_series{std::move(s)};
        return HQ_OK;
    });
}

void hq_series_free(hq_series *series) { delete series; }

size_t hq_series_length(const hq_series *series) {
    return series ? series->series.times.size() : 0;
}

const double *hq_series_times(const hq_series *series) {
    return series ? series->series.times.data() : nullptr;
}

const double *hq_series_ew(const hq_series *series) {
    return series ? series->series.ew.data() : nullptr;
}

const double *hq_series_stderr(const hq_series *series) {
    if (!series || series->series.std_error.empty())
        return nullptr;
    return series->series.std_error.data();
}

char *hq_series_csv(const hq_series *series) {
    if (!series)
        return nullptr;
    return dup_guard([&] { return hyperqed::noise_csv(series->series); });
}

char *hq_series_metadata_json(const hq_series *series) {
    if (!series)
        return nullptr;
    return dup_guard([&] { return hyperqed::noise_metadata_json(series->series); });
}

void hq_oracle_config_default(hq_oracle_config *config) {
    if (!config)
        return;
    const hyperqed::OracleOptions d;
    config->max_dim = d.max_dim;
    config->seed = d.seed;
    config->inject_fault = 0;
}

hq_status hq_oracle_run(const hq_oracle_config *config, hq_oracle_report **out) {
    if (!out)
        return fail(HQ_E_NULL_ARGUMENT, "null argument to hq_oracle_run");
    *out = nullptr;
    return guard([&] {
        hyperqed::OracleOptions o;
        if (config) {
            o.max_dim = config->max_dim;
            o.seed = config->seed;
            o.inject_fault = config->inject_fault != 0;
        }
        *out = new hq_oracle_report{hyperqed::run_oracle_suite(o)};
        return HQ_OK;
    });
}

void hq_oracle_free(hq_oracle_report *report) { delete report; }

int hq_oracle_all_passed(const hq_oracle_report *report) {
    return report && report->report.all_passed() ? 1 : 0;
}

size_t hq_oracle_check_count(const hq_oracle_report *report) {
    return report ? report->report.checks.size() : 0;
}

size_t hq_oracle_failed_count(const hq_oracle_report *report) {
    if (!report)
        return 0;
    std::size_t n = 0;
    for (const auto &c : report->report.checks)
        n += c.passed ? 0 : 1;
    return n;
}

char *hq_oracle_table(const hq_oracle_report *report) {
    if (!report)
        return nullptr;
    return dup_guard([&] { return report->report.table(); });
}

} // extern "C"
