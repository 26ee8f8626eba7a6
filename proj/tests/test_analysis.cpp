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

#include "hyperqed/analysis.hpp"
#include "hyperqed/protocols.hpp"
#include "hyperqed/references.hpp"
#include "test_support.hpp"

using namespace hqtest;

TEST_SUITE("analysis") {

TEST_CASE("compare: identical states") {
    const auto s = reference_state(ReferenceName::eq16, std::string("e,g"));
    const auto r = compare(s, s);
    CHECK(std::abs(r.fidelity - 1.0) < 1e-12);
    CHECK(std::abs(r.branch_magnitude_fidelity - 1.0) < 1e-12);
    CHECK(r.support_mismatch.empty());
    for (const auto &p : r.phase_residuals)
        CHECK(p.phase == 0.0);
    CHECK(r.relative_phase_spread() < 1e-12);
}

TEST_CASE("compare: global phase shows up in every residual") {
    const auto s = reference_state(ReferenceName::eq22);
    const double alpha = 0.83;
    const auto shifted = StateVector(s.layout(), std::exp(kI * alpha) * s.amplitudes());
    const auto r = compare(shifted, s);
    CHECK(std::abs(r.fidelity - 1.0) < 1e-12);
    REQUIRE(r.phase_residuals.size() == 4);
    for (const auto &p : r.phase_residuals)
        CHECK(std::abs(p.phase - alpha) < 1e-12);
    CHECK(r.relative_phase_spread() < 1e-12);
}

TEST_CASE("compare: unphased two-atom chain against the printed GHZ pair") {
    const auto tr = tag_chain(2, PhaseConvention::hamiltonian);
    REQUIRE(tr.outcomes.size() == 1);
    const auto &r = *tr.outcomes[0].report;
    CHECK(std::abs(r.branch_magnitude_fidelity - 1.0) < 1e-10);
    CHECK(std::abs(r.fidelity) < 1e-10);
    REQUIRE(r.phase_residuals.size() == 2);
    CHECK(std::abs(r.phase_residuals[0].phase) < 1e-10);
    CHECK(r.phase_residuals[1].basis == "1,a,P-2,a,P-2");
    CHECK(std::abs(r.phase_residuals[1].phase - kPi) < 1e-10);
}

TEST_CASE("compare: support mismatch and ranges") {
    const Layout l = qubits(2);
    const auto a = basis_state(l, std::map<std::string, std::size_t>{{"q0", 0}, {"q1", 0}});
    const auto b = basis_state(l, std::map<std::string, std::size_t>{{"q0", 1}, {"q1", 0}});
    const auto r = compare(a, b);
    CHECK(r.fidelity == 0.0);
    CHECK(r.branch_magnitude_fidelity == 0.0);
    CHECK(r.support_mismatch.size() == 2);
    CHECK_THROWS_AS(compare(a, reference_state(ReferenceName::eq4)), Error);

    std::mt19937_64 rng(31);
    for (int k = 0; k < 10; ++k) {
        const auto x = random_state(qubits(3), rng);
        const auto y = random_state(qubits(3), rng);
        const auto xy = compare(x, y);
        const auto yx = compare(y, x);
        CHECK(xy.fidelity >= -1e-12);
        CHECK(xy.fidelity <= 1.0 + 1e-12);
        CHECK(xy.branch_magnitude_fidelity <= 1.0 + 1e-12);
        CHECK(std::abs(xy.branch_magnitude_fidelity - yx.branch_magnitude_fidelity) < 1e-12);
    }
}

TEST_CASE("negativity: Bell pair, factorized block, cross-pair cluster") {
    const Layout l = qubits(2);
    Vector v = Vector::Zero(4);
    v(0) = v(3) = 1.0;
    const auto bell = DensityMatrix::from_pure(StateVector(l, v));
    CHECK(std::abs(negativity(bell, {"q0"}) - 0.5) < 1e-12);
    CHECK(std::abs(negativity(bell, {"q1"}) - 0.5) < 1e-12);

    const auto e16 = DensityMatrix::from_pure(
        reference_state(ReferenceName::eq16, std::string("g,g")));
    CHECK(std::abs(negativity(e16, {"a1", "a1.p"})) < 1e-9);

    const auto e22 = DensityMatrix::from_pure(reference_state(ReferenceName::eq22));
    CHECK(std::abs(negativity(e22, {"a1", "a1.p", "a2", "a2.p"}) - 0.5) < 1e-9);

    CHECK_THROWS_AS(negativity(bell, {}), Error);
    CHECK_THROWS_AS(negativity(bell, {"q0", "q1"}), Error);
}

TEST_CASE("negativity: product states and local unitaries") {
    std::mt19937_64 rng(32);
    const Layout la({{"A", SubsystemKind::auxiliary, 2}});
    const Layout lb({{"B", SubsystemKind::cavity, 3}});
    for (int k = 0; k < 5; ++k) {
        const auto prod = kron(random_state(la, rng), random_state(lb, rng));
        CHECK(std::abs(negativity(DensityMatrix::from_pure(prod), {"A"})) < 1e-9);

        const auto psi = random_state(qubits(3), rng);
        const double n0 = negativity(DensityMatrix::from_pure(psi), {"q0"});
        auto moved = apply_gate(psi, GateOp("u", {"q0"}, random_unitary(2, rng)));
        moved = apply_gate(moved, GateOp("v", {"q2", "q1"}, random_unitary(4, rng)));
        CHECK(std::abs(negativity(DensityMatrix::from_pure(moved), {"q0"}) - n0) < 1e-9);
    }
}

TEST_CASE("witness value") {
    std::mt19937_64 rng(33);
    const Layout l = qubits(3);
    const auto w = random_state(l, rng);
    CHECK(std::abs(witness_value(DensityMatrix::from_pure(w), w) + 0.5) < 1e-12);

    const DensityMatrix mixed(l, Matrix::Identity(8, 8) / 8.0);
    CHECK(std::abs(witness_value(mixed, w) - (0.5 - 1.0 / 8.0)) < 1e-12);

    const auto a = basis_state(l, std::map<std::string, std::size_t>{{"q0", 0}, {"q1", 0}, {"q2", 0}});
    const auto b = basis_state(l, std::map<std::string, std::size_t>{{"q0", 1}, {"q1", 0}, {"q2", 0}});
    CHECK(std::abs(witness_value(DensityMatrix::from_pure(b), a) - 0.5) < 1e-15);

    for (int k = 0; k < 5; ++k) {
        const auto psi = random_state(l, rng);
        const auto rho = DensityMatrix::from_pure(psi);
        const double ov = std::norm(inner(w, psi));
        CHECK(std::abs(witness_value(rho, w) + ov - 0.5) < 1e-12);
    }
    CHECK_THROWS_AS(witness_value(mixed, reference_state(ReferenceName::eq4)), Error);
}

TEST_CASE("ket rendering") {
    CHECK(ket_string(reference_state(ReferenceName::eq4)) ==
          "0.7071|0,b,P₀⟩ + 0.7071|1,b,P₋₂⟩");
    KetFormat ascii;
    ascii.ascii = true;
    CHECK(ket_string(reference_state(ReferenceName::eq4), ascii) ==
          "0.7071|0,b,P0> + 0.7071|1,b,P-2>");
    const Layout l = qubits(1);
    const auto one = basis_state(l, std::map<std::string, std::size_t>{{"q0", 1}});
    CHECK(ket_string(one, 0.0) == "1.0000|e⟩");
    CHECK(ket_string(one, 1.0) == "(below threshold)");
}

} // TEST_SUITE
