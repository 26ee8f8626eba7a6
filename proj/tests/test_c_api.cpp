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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>

#include "hyperqed/hyperqed.h"

namespace {

std::string take(char *s) {
    std::string out = s ? s : "";
    hq_string_free(s);
    return out;
}

} // namespace

TEST_CASE("version and status strings") {
    CHECK(std::strlen(hq_version()) > 0);
    CHECK(std::string(hq_status_string(HQ_OK)) == "ok");
    CHECK(std::string(hq_status_string(HQ_E_PARSE)) == "parse error");
}

TEST_CASE("presets") {
    hq_params p{};
    REQUIRE(hq_params_preset("natural", &p) == HQ_OK);
    CHECK(p.mu == 1.0);
    CHECK(p.delta == 100.0);
    CHECK(hq_params_adiabatic(&p, 10.0) == 1);
    CHECK(hq_params_preset("argon", &p) == HQ_E_INVALID_ARGUMENT);
    CHECK(std::string(hq_last_error()).find("argon") != std::string::npos);
    CHECK(hq_params_preset(nullptr, &p) == HQ_E_NULL_ARGUMENT);
}

TEST_CASE("protocol run and accessors") {
    hq_trace *t = nullptr;
    REQUIRE(hq_protocol_run("linear-cluster", 0, HQ_CONVENTION_PAPER, nullptr, -1.0, &t) ==
            HQ_OK);
    REQUIRE(t != nullptr);
    CHECK(hq_trace_passed(t, 1e-10) == 1);
    REQUIRE(hq_trace_outcome_count(t) == 4);
    CHECK(hq_trace_step_count(t) > 0);
    CHECK(std::abs(hq_trace_total_probability(t) - 1.0) < 1e-10);
    for (size_t i = 0; i < 4; ++i) {
        hq_outcome_info info{};
        REQUIRE(hq_trace_outcome(t, i, &info) == HQ_OK);
        CHECK(std::abs(info.probability - 0.25) < 1e-10);
        CHECK(info.has_report == 1);
        CHECK(std::abs(info.branch_magnitude_fidelity - 1.0) < 1e-10);
    }
    CHECK(take(hq_trace_outcome_label(t, 1)) == "g,e");
    CHECK(take(hq_trace_outcome_report_json(t, 0)).find("\"fidelity\"") != std::string::npos);
    CHECK(take(hq_trace_json(t)).find("\"outcomes\"") != std::string::npos);
    CHECK(take(hq_trace_csv(t)).rfind("outcome,", 0) == 0);
    CHECK(take(hq_trace_summary(t, 1)).find("PASS") != std::string::npos);
    hq_outcome_info info{};
    CHECK(hq_trace_outcome(t, 9, &info) == HQ_E_OUT_OF_RANGE);
    CHECK(hq_trace_outcome_label(t, 9) == nullptr);
    hq_trace_free(t);
}

TEST_CASE("protocol errors map to status codes") {
    hq_trace *t = nullptr;
    CHECK(hq_protocol_run("ring-graph", 1, HQ_CONVENTION_PAPER, nullptr, -1.0, &t) ==
          HQ_E_INVALID_ARGUMENT);
    CHECK(t == nullptr);
    CHECK(std::string(hq_last_error()).find("j >= 2") != std::string::npos);
    CHECK(hq_protocol_run("tag-chain", 9, HQ_CONVENTION_PAPER, nullptr, -1.0, &t) ==
          HQ_E_CAP_EXCEEDED);
    CHECK(hq_protocol_run(nullptr, 0, HQ_CONVENTION_PAPER, nullptr, -1.0, &t) ==
          HQ_E_NULL_ARGUMENT);
}

TEST_CASE("hamiltonian two-atom chain fails the fidelity check") {
    hq_trace *t = nullptr;
    REQUIRE(hq_protocol_run("tag-chain", 2, HQ_CONVENTION_HAMILTONIAN, nullptr, -1.0, &t) ==
            HQ_OK);
    CHECK(hq_trace_passed(t, 1e-10) == 0);
    hq_outcome_info info{};
    REQUIRE(hq_trace_outcome(t, 0, &info) == HQ_OK);
    CHECK(std::abs(info.branch_magnitude_fidelity - 1.0) < 1e-10);
    CHECK(info.fidelity < 1e-10);
    hq_trace_free(t);
}

TEST_CASE("scripts") {
    hq_trace *t = nullptr;
    CHECK(hq_script_run("cavity c1\nbragg a1 c1 t=endpoint\n", HQ_CONVENTION_SCRIPT, nullptr,
                        &t) == HQ_E_PARSE);
    CHECK(t == nullptr);
    CHECK(std::string(hq_last_error()).find("2:7: E_UNDECLARED") != std::string::npos);

    REQUIRE(hq_script_run("", HQ_CONVENTION_SCRIPT, nullptr, &t) == HQ_OK);
    CHECK(hq_trace_outcome_count(t) == 1);
    hq_trace_free(t);

    REQUIRE(hq_script_run("cavity c1 init=plus\natom a1\nbragg a1 c1 t=endpoint\nremove c1\n",
                          HQ_CONVENTION_PAPER, nullptr, &t) == HQ_E_ENTANGLED);
    CHECK(std::string(hq_last_error()).rfind("line 4", 0) == 0);

    char *fmt = nullptr;
    REQUIRE(hq_script_format("aux   x1\nramsey x1 # c\n", &fmt) == HQ_OK);
    CHECK(std::string(fmt).find("ramsey x1") != std::string::npos);
    hq_string_free(fmt);
}

TEST_CASE("noise series") {
    hq_noise_config cfg;
    hq_noise_config_default(&cfg);
    cfg.lambda_c = 0.5;
    cfg.points = 51;
    hq_series *s = nullptr;
    REQUIRE(hq_noise_run(&cfg, &s) == HQ_OK);
    REQUIRE(hq_series_length(s) == 51);
    CHECK(hq_series_times(s)[50] == 10.0);
    CHECK(std::abs(hq_series_ew(s)[0] + 0.5) < 1e-12);
    CHECK(hq_series_stderr(s) == nullptr);
    CHECK(take(hq_series_csv(s)).find("time,ew,stderr") != std::string::npos);
    CHECK(take(hq_series_metadata_json(s)).find("\"frozen\"") != std::string::npos);
    hq_series_free(s);

    cfg.telegraph = 1;
    cfg.flip_rate = 0.5;
    cfg.n_traj = 3;
    REQUIRE(hq_noise_run(&cfg, &s) == HQ_OK);
    CHECK(hq_series_stderr(s) != nullptr);
    hq_series_free(s);

    cfg.n_traj = 0;
    CHECK(hq_noise_run(&cfg, &s) == HQ_E_INVALID_ARGUMENT);
    hq_noise_config_default(&cfg);
    cfg.state = "eq99";
    CHECK(hq_noise_run(&cfg, &s) == HQ_E_INVALID_ARGUMENT);
}

TEST_CASE("oracle") {
    hq_oracle_config cfg;
    hq_oracle_config_default(&cfg);
    cfg.max_dim = 32;
    hq_oracle_report *r = nullptr;
    REQUIRE(hq_oracle_run(&cfg, &r) == HQ_OK);
    CHECK(hq_oracle_all_passed(r) == 1);
    CHECK(hq_oracle_check_count(r) > 0);
    CHECK(hq_oracle_failed_count(r) == 0);
    CHECK(take(hq_oracle_table(r)).find("checks passed") != std::string::npos);
    hq_oracle_free(r);
    cfg.inject_fault = 1;
    REQUIRE(hq_oracle_run(&cfg, &r) == HQ_OK);
    CHECK(hq_oracle_all_passed(r) == 0);
    CHECK(hq_oracle_failed_count(r) >= 1);
    hq_oracle_free(r);
}

TEST_CASE("last error is per thread") {
    hq_params p{};
    REQUIRE(hq_params_preset("argon", &p) != HQ_OK);
    std::string other;
    std::thread th([&] {
        hq_params q{};
        (void)hq_params_preset("neon", &q);
        other = hq_last_error();
    });
    th.join();
    CHECK(other.find("neon") != std::string::npos);
    CHECK(std::string(hq_last_error()).find("argon") != std::string::npos);
}

TEST_CASE("null handles are tolerated") {
    hq_trace_free(nullptr);
    hq_series_free(nullptr);
    hq_oracle_free(nullptr);
    hq_string_free(nullptr);
    CHECK(hq_trace_outcome_count(nullptr) == 0);
    CHECK(hq_trace_json(nullptr) == nullptr);
    CHECK(hq_series_length(nullptr) == 0);
    CHECK(hq_oracle_all_passed(nullptr) == 0);
}
