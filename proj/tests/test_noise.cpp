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

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "hyperqed/analysis.hpp"
#include "hyperqed/noise.hpp"
#include "test_support.hpp"

using namespace hqtest;

namespace {

NoiseParams frozen(double lambda, std::size_t points = 401, double t_max = 10.0) {
    NoiseParams p;
    p.lambda_c = lambda;
    p.t_grid = uniform_grid(t_max, points);
    return p;
}

double closed_form(double lambda, double t) {
    return 0.5 - std::pow(std::cos(2.0 * lambda * t), 4);
}

// Dense 16x16 evolution with matrix exponentials, independent of the
// closed-form propagator.
double dense_witness(const StateVector &w, double lambda, const std::vector<int> &d,
                     double xi, double t) {
    Matrix sx(2, 2);
    sx << 0, 1, 1, 0;
    Matrix u = Matrix::Identity(1, 1);
    for (int dn : d) {
        const Matrix h = xi * Matrix::Identity(2, 2) + lambda * dn * sx;
        const Matrix un = (Matrix(-kI * t * h)).exp();
        u = Eigen::kroneckerProduct(u, un).eval();
    }
    const Vector psi = u * w.amplitudes();
    return 0.5 - std::norm(w.amplitudes().dot(psi));
}

} // namespace

TEST_SUITE("noise") {

TEST_CASE("single-qubit propagator") {
    CHECK(max_abs_diff(qubit_propagator(0.7, 1, 0.0, 0.0), Matrix::Identity(2, 2)) == 0.0);
    CHECK(max_abs_diff(qubit_propagator(1.0, 1, 0.0, kPi), Matrix(-Matrix::Identity(2, 2))) < 1e-15);
    Matrix mix(2, 2);
    mix << 0, -kI, -kI, 0;
    CHECK(max_abs_diff(qubit_propagator(1.0, 1, 0.0, kPi / 2), mix) < 1e-15);

    Matrix sx(2, 2);
    sx << 0, 1, 1, 0;
    for (int d : {1, -1}) {
        const double lam = 0.37, xi = 0.2, t = 2.9;
        const Matrix h = xi * Matrix::Identity(2, 2) + lam * d * sx;
        const Matrix expm = (Matrix(-kI * t * h)).exp();
        CHECK(max_abs_diff(qubit_propagator(lam, d, xi, t), expm) < 1e-13);
    }
}

TEST_CASE("closed form agrees with the dense 16x16 evolution") {
    const auto w = default_witness_state();
    for (double lam : {0.1, 0.5, 1.0, 1.7})
        for (double t : {0.0, 0.3, 1.1, 2.5, 7.9}) {
            const double dense = dense_witness(w, lam, {1, 1, 1, 1}, 0.0, t);
            CHECK(std::abs(dense - closed_form(lam, t)) < 1e-12);
            CHECK(std::abs(frozen_witness_at(w, frozen(lam), t) - dense) < 1e-12);
        }
}

TEST_CASE("frozen series: start, range, trace and periodicity") {
    const auto w = default_witness_state();
    for (double lam : {0.1, 0.5, 1.0}) {
        const auto p = frozen(lam, 1001);
        const auto s = evolve_frozen(w, p);
        CHECK(s.mode == NoiseMode::frozen);
        CHECK(s.std_error.empty());
        CHECK(std::abs(s.ew[0] + 0.5) < 1e-12);
        CHECK(s.max_trace_defect < 1e-10);
        for (std::size_t i = 0; i < s.ew.size(); ++i) {
            CHECK(s.ew[i] >= -0.5 - 1e-12);
            CHECK(s.ew[i] <= 0.5 + 1e-12);
            CHECK(std::abs(s.ew[i] - closed_form(lam, s.times[i])) < 1e-10);
            CHECK(std::abs(frozen_witness_at(w, p, s.times[i] + kPi / lam) - s.ew[i]) < 1e-10);
        }
    }
}

TEST_CASE("xi only contributes a global phase") {
    const auto w = default_witness_state();
    auto p = frozen(0.5, 101);
    const auto base = evolve_frozen(w, p);
    p.xi = 1.3;
    const auto shifted = evolve_frozen(w, p);
    for (std::size_t i = 0; i < base.ew.size(); ++i)
        CHECK(std::abs(base.ew[i] - shifted.ew[i]) < 1e-12);
}

TEST_CASE("sign flips that keep each pair's signs equal leave the series unchanged") {
    const auto w = default_witness_state();
    const auto base = evolve_frozen(w, frozen(0.5, 201));
    for (std::vector<int> d : {std::vector<int>{-1, -1, 1, 1}, {1, 1, -1, -1}, {-1, -1, -1, -1}}) {
        auto p = frozen(0.5, 201);
        p.deltas = d;
        const auto s = evolve_frozen(w, p);
        for (std::size_t i = 0; i < s.ew.size(); ++i)
            CHECK(std::abs(s.ew[i] - base.ew[i]) < 1e-12);
    }
    // A mixed pair changes it; the series then follows the dense evolution.
    auto p = frozen(0.5, 201);
    p.deltas = {-1, 1, 1, 1};
    const auto s = evolve_frozen(w, p);
    double diff = 0.0;
    for (std::size_t i = 0; i < s.ew.size(); ++i) {
        diff = std::max(diff, std::abs(s.ew[i] - base.ew[i]));
        CHECK(std::abs(s.ew[i] - dense_witness(w, 0.5, p.deltas, 0.0, s.times[i])) < 1e-12);
    }
    CHECK(diff > 0.1);
}

TEST_CASE("telegraph: determinism, start value and the slow-flip limit") {
    const auto w = default_witness_state();
    NoiseParams p = frozen(0.5, 201);
    p.flip_rate = 0.4;
    p.n_traj = 25;
    p.seed = 99;
    const auto a = evolve_telegraph(w, p);
    const auto b = evolve_telegraph(w, p);
    CHECK(a.ew == b.ew);
    CHECK(a.std_error == b.std_error);
    CHECK(std::abs(a.ew[0] + 0.5) < 1e-12);
    CHECK(a.std_error.size() == a.ew.size());
    for (double v : a.ew) {
        CHECK(v >= -0.5 - 1e-12);
        CHECK(v <= 0.5 + 1e-12);
    }
    p.seed = 100;
    CHECK(evolve_telegraph(w, p).ew != a.ew);

    NoiseParams slow = frozen(0.5, 201);
    slow.flip_rate = 1e-12;
    slow.seed = 5;
    const auto t = evolve_telegraph(w, slow);
    const auto f = evolve_frozen(w, frozen(0.5, 201));
    for (std::size_t i = 0; i < f.ew.size(); ++i)
        CHECK(std::abs(t.ew[i] - f.ew[i]) < 1e-12);
    CHECK(t.std_error[10] == 0.0);
}

TEST_CASE("telegraph: fast switching spreads trajectories") {
    const auto w = default_witness_state();
    NoiseParams p = frozen(0.5, 101);
    p.flip_rate = 3.0;
    p.n_traj = 40;
    p.seed = 3;
    const auto s = evolve_telegraph(w, p);
    CHECK(s.std_error[0] == 0.0);
    double max_se = 0.0, max_gap = 0.0;
    const auto f = evolve_frozen(w, frozen(0.5, 101));
    for (std::size_t i = 0; i < s.ew.size(); ++i) {
        max_se = std::max(max_se, s.std_error[i]);
        max_gap = std::max(max_gap, std::abs(s.ew[i] - f.ew[i]));
    }
    CHECK(max_se > 0.0);
    CHECK(max_gap > 0.05);
}

TEST_CASE("parameter validation") {
    const auto w = default_witness_state();
    NoiseParams p = frozen(1.0, 11);
    p.t_grid = {0.0, 1.0, 0.5};
    CHECK_THROWS_AS(evolve_frozen(w, p), Error);
    p = frozen(1.0, 11);
    p.deltas = {1, 1, 2, 1};
    CHECK_THROWS_AS(evolve_frozen(w, p), Error);
    p = frozen(1.0, 11);
    p.deltas = {1, 1, 1};
    CHECK_THROWS_AS(evolve_frozen(w, p), Error);
    p = frozen(1.0, 11);
    CHECK_THROWS_AS(evolve_telegraph(w, p), Error);
    p.flip_rate = 1.0;
    p.n_traj = 0;
    CHECK_THROWS_AS(evolve_telegraph(w, p), Error);
    CHECK_THROWS_AS(uniform_grid(10.0, 1), Error);
    CHECK_THROWS_AS(uniform_grid(-1.0, 10), Error);
    CHECK_THROWS_AS(witness_state("eq22"), Error);
    CHECK_NOTHROW(witness_state("eq16:e,g"));
    CHECK(noise_mode_from_string("telegraph") == NoiseMode::telegraph);
    CHECK_THROWS_AS(noise_mode_from_string("pink"), Error);
}

} // TEST_SUITE
