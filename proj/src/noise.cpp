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

#include "hyperqed/noise.hpp"

#include <cmath>
#include <random>

#include "hyperqed/analysis.hpp"
#include "hyperqed/references.hpp"

namespace hyperqed {

namespace {

const cplx kI{0.0, 1.0};

void require_qubits(const StateVector &w, std::size_t count) {
    const Layout &l = w.layout();
    bool ok = l.size() == count;
    for (std::size_t k = 0; ok && k < l.size(); ++k)
        ok = l[k].dim == 2;
    if (!ok)
        throw Error(ErrorCode::dimension_mismatch,
                    "witness state must be exactly " + std::to_string(count) +
                        " two-level subsystems");
}

// (U_1 x ... x U_n) w, one factor at a time.
Vector apply_local(const StateVector &w, const std::vector<Matrix> &us) {
    StateVector psi = w;
    const Layout &l = w.layout();
    for (std::size_t k = 0; k < us.size(); ++k)
        psi = apply_gate(psi, GateOp("u" + std::to_string(k), {l[k].label}, us[k]));
    return psi.amplitudes();
}

double witness_of(const StateVector &w, const Vector &psi, double &trace_defect) {
    const DensityMatrix rho(w.layout(), psi * psi.adjoint());
    trace_defect = std::abs(rho.entries().trace() - cplx(1.0));
    return witness_value(rho, w);
}

} // namespace

const char *to_string(NoiseMode mode) {
    return mode == NoiseMode::frozen ? "frozen" : "telegraph";
}

NoiseMode noise_mode_from_string(const std::string &name) {
    if (name == "frozen")
        return NoiseMode::frozen;
    if (name == "telegraph")
        return NoiseMode::telegraph;
    throw Error(ErrorCode::invalid_argument, "unknown noise mode '" + name + "'");
}

void NoiseParams::validate() const {
    if (!std::isfinite(lambda_c) || !std::isfinite(xi))
        throw Error(ErrorCode::invalid_argument, "lambda and xi must be finite");
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw Error(ErrorCode::invalid_argument, "time grid must start at 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]) || !std::isfinite(t_grid[i]))
            throw Error(ErrorCode::invalid_argument,
                        "time grid must be strictly increasing");
    for (int d : deltas)
        if (d != 1 && d != -1)
            throw Error(ErrorCode::invalid_argument, "deltas must be +1 or -1");
    if (!(flip_rate >= 0.0) || !std::isfinite(flip_rate))
        throw Error(ErrorCode::invalid_argument, "flip rate must be >= 0");
    if (n_traj < 1)
        throw Error(ErrorCode::invalid_argument, "need at least one trajectory");
}

std::vector<double> uniform_grid(double t_max, std::size_t points) {
    if (points < 2 || !(t_max > 0.0) || !std::isfinite(t_max))
        throw Error(ErrorCode::invalid_argument,
                    "grid needs t_max > 0 and at least 2 points");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = t_max * static_cast<double>(i) / static_cast<double>(points - 1);
    return g;
}

Matrix qubit_propagator(double lambda_c, int delta, double xi, double t) {
    const double c = std::cos(lambda_c * t);
    const double s = std::sin(lambda_c * t);
    const cplx phase = std::exp(-kI * xi * t);
    Matrix u(2, 2);
    u << c, -kI * static_cast<double>(delta) * s,
        -kI * static_cast<double>(delta) * s, c;
    return phase * u;
}

StateVector default_witness_state() {
    return reference_state(ReferenceName::eq16, std::string("g,g"));
}

StateVector witness_state(const std::string &name) {
    const std::string prefix = "eq16:";
    if (name.rfind(prefix, 0) == 0)
        return reference_state(ReferenceName::eq16, name.substr(prefix.size()));
    if (name == "eq16")
        return default_witness_state();
    throw Error(ErrorCode::invalid_argument,
                "unknown witness state '" + name +
                    "' (expected eq16:g,g, eq16:g,e, eq16:e,g or eq16:e,e)");
}

double frozen_witness_at(const StateVector &w, const NoiseParams &params,
                         double t) {
    require_qubits(w, params.deltas.size());
    std::vector<Matrix> us;
    for (int d : params.deltas)
        us.push_back(qubit_propagator(params.lambda_c, d, params.xi, t));
    double defect = 0.0;
    return witness_of(w, apply_local(w, us), defect);
}

WitnessSeries evolve_frozen(const StateVector &w, const NoiseParams &params) {
    params.validate();
    require_qubits(w, params.deltas.size());
    WitnessSeries out;
    out.mode = NoiseMode::frozen;
    out.params = params;
    out.times = params.t_grid;
    out.ew.reserve(params.t_grid.size());
    for (double t : params.t_grid) {
        std::vector<Matrix> us;
        for (int d : params.deltas)
            us.push_back(qubit_propagator(params.lambda_c, d, params.xi, t));
        double defect = 0.0;
        out.ew.push_back(witness_of(w, apply_local(w, us), defect));
        out.max_trace_defect = std::max(out.max_trace_defect, defect);
    }
    return out;
}

WitnessSeries evolve_telegraph(const StateVector &w, const NoiseParams &params) {
    params.validate();
    if (!(params.flip_rate > 0.0))
        throw Error(ErrorCode::invalid_argument,
                    "telegraph mode needs a positive flip rate");
    require_qubits(w, params.deltas.size());

    const std::size_t nq = params.deltas.size();
    const std::size_t nt = params.t_grid.size();
    std::vector<double> sum(nt, 0.0), sum_sq(nt, 0.0);

    // Trajectories are reduced in index order.
    for (std::size_t traj = 0; traj < params.n_traj; ++traj) {
        std::seed_seq seq{static_cast<std::uint32_t>(params.seed),
                          static_cast<std::uint32_t>(params.seed >> 32),
                          static_cast<std::uint32_t>(traj),
                          static_cast<std::uint32_t>(
                              static_cast<std::uint64_t>(traj) >> 32)};
        std::mt19937_64 rng(seq);
        std::exponential_distribution<double> holding(params.flip_rate);

        // Per qubit: propagator up to the last flip, its time, current sign
        // and the next flip time.
        std::vector<Matrix> u_last(nq, Matrix::Identity(2, 2));
        std::vector<double> t_last(nq, 0.0);
        std::vector<int> sign(params.deltas);
        std::vector<double> next_flip(nq);
        for (std::size_t q = 0; q < nq; ++q)
            next_flip[q] = holding(rng);

        for (std::size_t k = 0; k < nt; ++k) {
            const double t = params.t_grid[k];
            std::vector<Matrix> us(nq);
            for (std::size_t q = 0; q < nq; ++q) {
                while (next_flip[q] <= t) {
                    u_last[q] = qubit_propagator(params.lambda_c, sign[q],
                                                 params.xi,
                                                 next_flip[q] - t_last[q]) *
                                u_last[q];
                    t_last[q] = next_flip[q];
                    sign[q] = -sign[q];
                    next_flip[q] += holding(rng);
                }
                us[q] = qubit_propagator(params.lambda_c, sign[q], params.xi,
                                         t - t_last[q]) *
                        u_last[q];
            }
            double defect = 0.0;
            const double ew = witness_of(w, apply_local(w, us), defect);
            sum[k] += ew;
            sum_sq[k] += ew * ew;
        }
    }

    WitnessSeries out;
    out.mode = NoiseMode::telegraph;
    out.params = params;
    out.times = params.t_grid;
    out.ew.resize(nt);
    out.std_error.resize(nt);
    const double n = static_cast<double>(params.n_traj);
    for (std::size_t k = 0; k < nt; ++k) {
        const double mean = sum[k] / n;
        out.ew[k] = mean;
        if (params.n_traj > 1) {
            const double var =
                std::max(0.0, (sum_sq[k] - n * mean * mean) / (n - 1.0));
            out.std_error[k] = std::sqrt(var / n);
        } else {
            out.std_error[k] = 0.0;
        }
    }
    return out;
}

} // namespace hyperqed
