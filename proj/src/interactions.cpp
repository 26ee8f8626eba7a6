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

#include "hyperqed/interactions.hpp"

#include <cmath>
#include <sstream>

namespace hyperqed {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

const Subsystem &require(const Layout &layout, const std::string &label,
                         SubsystemKind kind) {
    const Subsystem &s = layout.at(label);
    if (s.kind != kind)
        throw Error(ErrorCode::invalid_argument,
                    "subsystem '" + label + "' is " + to_string(s.kind) +
                        ", expected " + to_string(kind));
    return s;
}

void require_dim(const Subsystem &s, std::size_t dim) {
    if (s.dim != dim)
        throw Error(ErrorCode::dimension_mismatch,
                    "subsystem '" + s.label + "' must have dimension " +
                        std::to_string(dim));
}

} // namespace

const char *to_string(PhaseConvention c) {
    return c == PhaseConvention::paper ? "paper" : "hamiltonian";
}

PhaseConvention phase_convention_from_string(const std::string &name) {
    if (name == "paper")
        return PhaseConvention::paper;
    if (name == "hamiltonian")
        return PhaseConvention::hamiltonian;
    throw Error(ErrorCode::invalid_argument,
                "unknown phase convention '" + name + "'");
}

AdiabaticCheck PhysicalParams::adiabatic_check(double ratio_min) const {
    AdiabaticCheck c{};
    c.detuning_over_recoil = delta / omega_r;
    c.recoil_detuning_over_mu2 = omega_r * delta / (mu * mu);
    c.valid = c.detuning_over_recoil >= ratio_min &&
              c.recoil_detuning_over_mu2 >= ratio_min;
    return c;
}

void PhysicalParams::validate() const {
    const double vals[] = {mu, delta, omega_r, lambda_disp, omega_classical};
    for (double v : vals) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw Error(ErrorCode::invalid_argument,
                        "physical rates must be positive and finite");
    }
}

PhysicalParams PhysicalParams::natural() { return {}; }

PhysicalParams PhysicalParams::rb85() {
    // SI rates in rad/s, rescaled so that mu = 1.
    const double mu_si = 2.0 * kPi * 16.4e6;
    const double delta_si = 2.0 * kPi * 1.0e9;
    const double omega_r_si = 2.4e4;
    PhysicalParams p;
    p.mu = 1.0;
    p.delta = delta_si / mu_si;
    p.omega_r = omega_r_si / mu_si;
    p.lambda_disp = mu_si / delta_si; // mu^2/Delta in units of mu
    p.omega_classical = 1.0;
    return p;
}

PhysicalParams PhysicalParams::helium() {
    const double delta_si = 6.28e9;
    const double omega_r_si = 2.0 * kPi * 1.06e6;
    const double bragg_rate_si = 2.0 * kPi * 120e3; // mu^2 / (4 Delta)
    const double mu_si = std::sqrt(4.0 * delta_si * bragg_rate_si);
    PhysicalParams p;
    p.mu = 1.0;
    p.delta = delta_si / mu_si;
    p.omega_r = omega_r_si / mu_si;
    p.lambda_disp = mu_si / delta_si;
    p.omega_classical = 1.0;
    return p;
}

PhysicalParams PhysicalParams::preset(const std::string &name) {
    if (name == "natural")
        return natural();
    if (name == "rb85")
        return rb85();
    if (name == "helium")
        return helium();
    throw Error(ErrorCode::invalid_argument,
                "unknown parameter preset '" + name + "'");
}

GateOp bragg_gate(const Layout &layout, const std::string &cavity,
                  const std::string &momentum, double t,
                  const PhysicalParams &params) {
    const Subsystem &cav = require(layout, cavity, SubsystemKind::cavity);
    const Subsystem &mom = require(layout, momentum, SubsystemKind::momentum);
    require_dim(mom, 2);
    if (t < 0.0)
        throw Error(ErrorCode::invalid_argument,
                    "Bragg interaction time must be non-negative");
    params.validate();

    const auto dc = static_cast<Eigen::Index>(cav.dim);
    Matrix u = Matrix::Zero(2 * dc, 2 * dc);
    for (Eigen::Index n = 0; n < dc; ++n) {
        const double theta = params.mu * params.mu * static_cast<double>(n) *
                             t / (4.0 * params.delta);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Eigen::Index p0 = 2 * n;
        const Eigen::Index pm2 = 2 * n + 1;
        u(p0, p0) = c;
        u(pm2, p0) = s;
        u(p0, pm2) = -s;
        u(pm2, pm2) = c;
    }
    return GateOp("bragg " + cavity + " " + momentum + " t=" + fmt(t),
                  {cavity, momentum}, std::move(u));
}

GateOp classical_pulse(const Layout &layout, const std::string &internal,
                       const std::string &momentum, std::size_t selector,
                       double t, double omega, double phi) {
    const Subsystem &in = require(layout, internal, SubsystemKind::internal);
    const Subsystem &mom = require(layout, momentum, SubsystemKind::momentum);
    require_dim(in, 2);
    require_dim(mom, 2);
    if (selector >= mom.dim)
        throw Error(ErrorCode::out_of_range,
                    "pulse selector out of range for '" + momentum + "'");

    const double c = std::cos(omega * t / 2.0);
    const double s = std::sin(omega * t / 2.0);
    // Local basis (internal, momentum): index = i_int * 2 + i_mom.
    Matrix u = Matrix::Identity(4, 4);
    const auto b = static_cast<Eigen::Index>(0 * 2 + selector);
    const auto a = static_cast<Eigen::Index>(1 * 2 + selector);
    u(b, b) = c;
    u(a, b) = -kI * std::exp(kI * phi) * s;
    u(b, a) = -kI * std::exp(-kI * phi) * s;
    u(a, a) = c;
    return GateOp("pulse " + internal + " " + momentum + " sel=" +
                      basis_label(SubsystemKind::momentum, selector) +
                      " t=" + fmt(t) + " omega=" + fmt(omega) +
                      " phi=" + fmt(phi),
                  {internal, momentum}, std::move(u));
}

GateOp jc_swap(const Layout &layout, const std::string &cavity,
               const std::string &auxiliary, double t, double mu) {
    const Subsystem &cav = require(layout, cavity, SubsystemKind::cavity);
    const Subsystem &aux = require(layout, auxiliary, SubsystemKind::auxiliary);
    require_dim(aux, 2);
    if (!(mu > 0.0))
        throw Error(ErrorCode::invalid_argument, "mu must be positive");

    const auto dc = static_cast<Eigen::Index>(cav.dim);
    // Local basis (cavity, aux): index = n * 2 + {g:0, e:1}.
    Matrix u = Matrix::Identity(2 * dc, 2 * dc);
    for (Eigen::Index n = 1; n < dc; ++n) {
        const double theta = mu * std::sqrt(static_cast<double>(n)) * t;
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Eigen::Index gn = 2 * n;
        const Eigen::Index em = 2 * (n - 1) + 1;
        u(gn, gn) = c;
        u(em, gn) = -kI * s;
        u(gn, em) = -kI * s;
        u(em, em) = c;
    }
    std::vector<std::size_t> forbidden;
    const double edge =
        std::sin(mu * std::sqrt(static_cast<double>(dc)) * t);
    if (std::abs(edge) > 1e-15)
        forbidden.push_back(static_cast<std::size_t>(2 * (dc - 1) + 1));
    return GateOp("jc " + cavity + " " + auxiliary + " t=" + fmt(t) +
                      " mu=" + fmt(mu),
                  {cavity, auxiliary}, std::move(u), std::move(forbidden));
}

GateOp dispersive_gate(const Layout &layout, const std::string &cavity,
                       const std::string &auxiliary, double t,
                       double lambda_disp, PhaseConvention convention) {
    const Subsystem &cav = require(layout, cavity, SubsystemKind::cavity);
    const Subsystem &aux = require(layout, auxiliary, SubsystemKind::auxiliary);
    require_dim(aux, 2);
    if (convention == PhaseConvention::paper && cav.dim > 2)
        throw Error(ErrorCode::invalid_argument,
                    "paper-convention dispersive phases are defined only for "
                    "Fock cutoff 2");

    const auto dc = static_cast<Eigen::Index>(cav.dim);
    Matrix u = Matrix::Zero(2 * dc, 2 * dc);
    const double lt = lambda_disp * t;
    for (Eigen::Index n = 0; n < dc; ++n) {
        const auto nd = static_cast<double>(n);
        cplx pg;
        cplx pe;
        if (convention == PhaseConvention::hamiltonian) {
            pg = std::exp(kI * lt * nd);
            pe = std::exp(-kI * lt * (nd + 1.0));
        } else {
            pg = std::exp(-kI * lt * nd);
            pe = n == 0 ? std::exp(-2.0 * kI * lt) : std::exp(kI * lt);
        }
        u(2 * n, 2 * n) = pg;
        u(2 * n + 1, 2 * n + 1) = pe;
    }
    return GateOp("dispersive " + cavity + " " + auxiliary + " t=" + fmt(t) +
                      " lambda=" + fmt(lambda_disp) +
                      " convention=" + to_string(convention),
                  {cavity, auxiliary}, std::move(u));
}

GateOp ramsey_transform(const Layout &layout, const std::string &auxiliary) {
    const Subsystem &aux = require(layout, auxiliary, SubsystemKind::auxiliary);
    require_dim(aux, 2);
    const double r = 1.0 / std::sqrt(2.0);
    Matrix u(2, 2);
    u << r, r, r, -r;
    return GateOp("ramsey " + auxiliary, {auxiliary}, std::move(u));
}

} // namespace hyperqed
