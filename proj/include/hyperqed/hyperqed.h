/*
 * Copyright 2026 The hyperqed Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the hyperqed simulator.
 *
 * Conventions:
 *   - Every fallible call returns hq_status; on failure hq_last_error()
 *     returns a message for the calling thread until its next failing call.
 *   - Handles are opaque and released with the matching *_free function.
 *   - Strings returned as char* are heap copies released with
 *     hq_string_free; const char* results are owned by the library.
 */

#ifndef HYPERQED_H
#define HYPERQED_H

#include <stddef.h>
#include <stdint.h>

#if defined(HQ_BUILDING_LIBRARY)
#define HQ_API __attribute__((visibility("default")))
#else
#define HQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hq_status {
    HQ_OK = 0,
    HQ_E_INVALID_ARGUMENT = 1,
    HQ_E_UNKNOWN_LABEL = 2,
    HQ_E_OUT_OF_RANGE = 3,
    HQ_E_DIMENSION = 4,
    HQ_E_NON_UNITARY = 5,
    HQ_E_FOCK_OVERFLOW = 6,
    HQ_E_ENTANGLED = 7,
    HQ_E_CAP_EXCEEDED = 8,
    HQ_E_PARSE = 9,
    HQ_E_RUNTIME = 10,
    HQ_E_NULL_ARGUMENT = 11,
    HQ_E_INTERNAL = 12
} hq_status;

typedef enum hq_convention {
    HQ_CONVENTION_PAPER = 0,
    HQ_CONVENTION_HAMILTONIAN = 1,
    /* Scripts only: use the script's own setting (paper if absent). */
    HQ_CONVENTION_SCRIPT = 2
} hq_convention;

/* Natural units, hbar = 1. */
typedef struct hq_params {
    double mu;
    double delta;
    double omega_r;
    double lambda_disp;
    double omega_classical;
} hq_params;

typedef struct hq_trace hq_trace;
typedef struct hq_series hq_series;
typedef struct hq_oracle_report hq_oracle_report;

HQ_API const char *hq_version(void);
HQ_API const char *hq_last_error(void);
HQ_API const char *hq_status_string(hq_status status);
HQ_API void hq_string_free(char *s);

/* "natural", "rb85" or "helium". */
HQ_API hq_status hq_params_preset(const char *name, hq_params *out);
/* 1 when the Bragg adiabatic ordering holds with ratio_min (default 10). */
HQ_API int hq_params_adiabatic(const hq_params *params, double ratio_min);

/* ---- protocols --------------------------------------------------------- */

/*
 * name: "tag-chain", "linear-cluster", "cluster-2d" or "ring-graph".
 * n: atom / node count (0 when not applicable).
 * params: NULL for natural units.
 * dispersive_time: negative for the default (pi/lambda linear cluster,
 *                  pi/(2 lambda) 2D cluster).
 */
HQ_API hq_status hq_protocol_run(const char *name, size_t n,
                                 hq_convention convention,
                                 const hq_params *params,
                                 double dispersive_time, hq_trace **out);

/* Parse and execute a .qproto script. HQ_E_PARSE carries every
 * diagnostic, one per line, in hq_last_error(). */
HQ_API hq_status hq_script_run(const char *text, hq_convention convention,
                               const hq_params *params, hq_trace **out);
/* Parse only; returns the canonical printed form on success. */
HQ_API hq_status hq_script_format(const char *text, char **out);

HQ_API void hq_trace_free(hq_trace *trace);
/* 1 when every referenced outcome reaches fidelity and branch-magnitude
 * fidelity 1 within tol. */
HQ_API int hq_trace_passed(const hq_trace *trace, double tol);
HQ_API size_t hq_trace_outcome_count(const hq_trace *trace);
HQ_API size_t hq_trace_step_count(const hq_trace *trace);
HQ_API double hq_trace_total_probability(const hq_trace *trace);

typedef struct hq_outcome_info {
    double probability;
    int has_report;
    double fidelity;
    double branch_magnitude_fidelity;
    double phase_spread;
} hq_outcome_info;

HQ_API hq_status hq_trace_outcome(const hq_trace *trace, size_t index,
                                  hq_outcome_info *info);
HQ_API char *hq_trace_outcome_label(const hq_trace *trace, size_t index);
HQ_API char *hq_trace_outcome_report_json(const hq_trace *trace, size_t index);
HQ_API char *hq_trace_json(const hq_trace *trace);
HQ_API char *hq_trace_csv(const hq_trace *trace);
HQ_API char *hq_trace_summary(const hq_trace *trace, int ascii);

/* ---- witness dynamics -------------------------------------------------- */

typedef struct hq_noise_config {
    double lambda_c;
    double xi;
    int deltas[4];
    double flip_rate;   /* telegraph only */
    double t_max;
    size_t points;
    size_t n_traj;      /* telegraph only */
    uint64_t seed;
    int telegraph;      /* 0 frozen, 1 telegraph */
    const char *state;  /* NULL or "eq16:g,g" etc. */
} hq_noise_config;

HQ_API void hq_noise_config_default(hq_noise_config *config);
HQ_API hq_status hq_noise_run(const hq_noise_config *config, hq_series **out);
HQ_API void hq_series_free(hq_series *series);
HQ_API size_t hq_series_length(const hq_series *series);
HQ_API const double *hq_series_times(const hq_series *series);
HQ_API const double *hq_series_ew(const hq_series *series);
/* NULL in frozen mode. */
HQ_API const double *hq_series_stderr(const hq_series *series);
HQ_API char *hq_series_csv(const hq_series *series);
HQ_API char *hq_series_metadata_json(const hq_series *series);

/* ---- oracle suite ------------------------------------------------------ */

typedef struct hq_oracle_config {
    size_t max_dim;
    uint64_t seed;
    int inject_fault;
} hq_oracle_config;

HQ_API void hq_oracle_config_default(hq_oracle_config *config);
HQ_API hq_status hq_oracle_run(const hq_oracle_config *config,
                               hq_oracle_report **out);
HQ_API void hq_oracle_free(hq_oracle_report *report);
HQ_API int hq_oracle_all_passed(const hq_oracle_report *report);
HQ_API size_t hq_oracle_check_count(const hq_oracle_report *report);
HQ_API size_t hq_oracle_failed_count(const hq_oracle_report *report);
HQ_API char *hq_oracle_table(const hq_oracle_report *report);

#ifdef __cplusplus
}
#endif

#endif /* HYPERQED_H */
