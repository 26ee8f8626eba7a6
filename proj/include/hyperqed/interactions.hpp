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

/**
 * @file
 * Atom-cavity interaction primitives as parameterized unitaries.
 *
 * All rates are in natural units (hbar = 1). Every constructor takes the
 * Layout so cavity Fock cutoffs and level counts are known.
 */

#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "hyperqed/tensor.hpp"

namespace hyperqed {

/// Phase convention for the dispersive link and for the pulse phases the
/// built-in protocols choose.
enum class PhaseConvention { hamiltonian, paper };

const char *to_string(PhaseConvention c);
PhaseConvention phase_convention_from_string(const std::string &name);

struct AdiabaticCheck {
    double detuning_over_recoil;         // Delta / omega_r
    double recoil_detuning_over_mu2;     // omega_r * Delta / mu^2
    bool valid;
};

struct PhysicalParams {
    double mu = 1.0;              ///< vacuum Rabi frequency
    double delta = 100.0;         ///< atom-field detuning
    double omega_r = 1.0;         ///< recoil frequency
    double lambda_disp = 1.0;     ///< dispersive rate mu_d^2 / Delta
    double omega_classical = 1.0; ///< classical pulse Rabi frequency

    /// Bragg time at which one photon fully transfers P0 -> P-2.
    [[nodiscard]] double bragg_endpoint() const {
        return 2.0 * std::numbers::pi * delta / (mu * mu);
    }
    [[nodiscard]] double pulse_endpoint() const {
        return std::numbers::pi / omega_classical;
    }
    [[nodiscard]] double jc_endpoint() const {
        return std::numbers::pi / (2.0 * mu);
    }
    [[nodiscard]] double dispersive_pi() const {
        return std::numbers::pi / lambda_disp;
    }

    /// Delta >> omega_r >> mu^2/Delta, each ratio compared to ratio_min.
    [[nodiscard]] AdiabaticCheck adiabatic_check(double ratio_min = 10.0) const;

    void validate() const;

    /// Natural units: mu = 1, Delta = 100 mu.
    static PhysicalParams natural();
    /// 85Rb experiment values converted to natural units (time unit 1/mu).
    static PhysicalParams rb85();
    /// Helium experiment values converted to natural units.
    static PhysicalParams helium();
    static PhysicalParams preset(const std::string &name);

    bool operator==(const PhysicalParams &) const = default;
};

/// Off-resonant Bragg scattering: photon-number-conditioned rotation of the
/// momentum pair {P0, P-2} by Theta(n, t) = mu^2 n t / (4 Delta).
GateOp bragg_gate(const Layout &layout, const std::string &cavity,
                  const std::string &momentum, double t,
                  const PhysicalParams &params);

/// Classical pulse on the internal levels, applied only where the momentum
/// subsystem equals `selector`.
GateOp classical_pulse(const Layout &layout, const std::string &internal,
                       const std::string &momentum, std::size_t selector,
                       double t, double omega, double phi);

/// Resonant Jaynes-Cummings exchange between a cavity and an auxiliary atom.
/// |e, n_max - 1> is flagged as a forbidden input whenever the evolution
/// would couple it to the truncated |g, n_max>.
GateOp jc_swap(const Layout &layout, const std::string &cavity,
               const std::string &auxiliary, double t, double mu);

/// Diagonal dispersive phase gate between a cavity and an auxiliary atom.
GateOp dispersive_gate(const Layout &layout, const std::string &cavity,
                       const std::string &auxiliary, double t,
                       double lambda_disp, PhaseConvention convention);

/// Ramsey zone: |g> -> (|g>+|e>)/sqrt2, |e> -> (|g>-|e>)/sqrt2.
GateOp ramsey_transform(const Layout &layout, const std::string &auxiliary);

} // namespace hyperqed
