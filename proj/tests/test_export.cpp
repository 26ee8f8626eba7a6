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

#include <json.hpp>

#include "hyperqed/export.hpp"
#include "hyperqed/interactions.hpp"
#include "hyperqed/noise.hpp"
#include "hyperqed/protocols.hpp"
#include "hyperqed/references.hpp"
#include "test_support.hpp"

using namespace hqtest;
using nlohmann::json;

TEST_SUITE("export") {

TEST_CASE("state dump lists labelled amplitudes above threshold") {
    const auto j = json::parse(state_json(reference_state(ReferenceName::eq6)));
    CHECK(j["layout"].size() == 3);
    REQUIRE(j["amplitudes"].size() == 2);
    const auto &last = j["amplitudes"][1];
    CHECK(last["basis"] == json::array({"1", "a", "P-2"}));
    CHECK(last["re"].get<double>() == doctest::Approx(0.0));
    CHECK(last["im"].get<double>() == doctest::Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("gate matrix is exported row-major as complex pairs") {
    const Layout l({{"x1", SubsystemKind::auxiliary, 2}});
    const auto j = json::parse(gate_json(ramsey_transform(l, "x1")));
    CHECK(j["targets"] == json::array({"x1"}));
    REQUIRE(j["matrix"].size() == 2);
    CHECK(j["matrix"][1][1][0].get<double>() == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK(j["matrix"][1][1][1].get<double>() == 0.0);
}

TEST_CASE("trace JSON and CSV are deterministic and complete") {
    const auto tr = linear_cluster(PhaseConvention::paper);
    const std::string a = trace_json(tr);
    CHECK(a == trace_json(linear_cluster(PhaseConvention::paper)));
    const auto j = json::parse(a);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["convention"] == "paper");
    CHECK(j["outcomes"].size() == 4);
    CHECK(j["passed"] == true);
    CHECK(j["outcomes"][0]["report"]["fidelity"].get<double>() == doctest::Approx(1.0));

    const std::string csv = outcomes_csv(tr);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("outcome,probability", 0) == 0);
    std::size_t rows = 0;
    while (std::getline(in, line))
        rows += line.empty() ? 0 : 1;
    CHECK(rows == 4);

    const std::string sum = trace_summary(tr, true);
    CHECK(sum.find("PASS") != std::string::npos);
    CHECK(sum.find("\xE2") == std::string::npos);
}

TEST_CASE("compare report JSON") {
    const auto tr = tag_chain(2, PhaseConvention::hamiltonian);
    const auto j = json::parse(compare_json(*tr.outcomes[0].report));
    CHECK(j["branch_magnitude_fidelity"].get<double>() == doctest::Approx(1.0));
    REQUIRE(j["phase_residuals"].size() == 2);
    CHECK(j["phase_residuals"][1]["phase"].get<double>() == doctest::Approx(kPi));
}

TEST_CASE("noise CSV and metadata") {
    NoiseParams p;
    p.lambda_c = 0.5;
    p.t_grid = uniform_grid(1.0, 5);
    const auto s = evolve_frozen(default_witness_state(), p);
    const std::string csv = noise_csv(s);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# mode=frozen lambda=0.5", 0) == 0);
    std::getline(in, line);
    CHECK(line == "time,ew,stderr,neg_ew");
    std::getline(in, line);
    CHECK(line == "0,-0.5,,0.5");
    const auto meta = json::parse(noise_metadata_json(s));
    CHECK(meta["mode"] == "frozen");
    CHECK(meta["points"] == 5);
}

} // TEST_SUITE
