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

#include "hyperqed/references.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace hyperqed {

namespace {

const cplx kI{0.0, 1.0};

// Ket in which every atom listed in `excited` is |a, P-2> and the rest are
// |b, P0>; the optional cavity takes the given photon number.
std::map<std::string, std::size_t>
branch(std::size_t first, std::size_t count,
       std::initializer_list<std::size_t> excited,
       std::optional<std::pair<std::string, std::size_t>> cavity = {}) {
    std::map<std::string, std::size_t> m;
    for (std::size_t j = first; j < first + count; ++j) {
        const bool up = std::find(excited.begin(), excited.end(), j) !=
                        excited.end();
        m[atom_label(j)] = up ? 1 : 0;
        m[momentum_label(j)] = up ? 1 : 0;
    }
    if (cavity)
        m[cavity->first] = cavity->second;
    return m;
}

Layout tagged_layout(std::size_t cavity, std::size_t first, std::size_t count) {
    std::vector<Subsystem> subs{
        {cavity_label(cavity), SubsystemKind::cavity, 2}};
    for (auto &s : atom_subsystems(first, count))
        subs.push_back(std::move(s));
    return Layout(std::move(subs));
}

// GHZ form (|0> prod |b,P0> + c |1> prod |a,P-2>) / sqrt2.
StateVector ghz(std::size_t cavity, std::size_t first, std::size_t count,
                cplx coefficient) {
    const Layout layout = tagged_layout(cavity, first, count);
    std::map<std::string, std::size_t> lo, hi;
    for (std::size_t j = first; j < first + count; ++j) {
        lo[atom_label(j)] = 0;
        lo[momentum_label(j)] = 0;
        hi[atom_label(j)] = 1;
        hi[momentum_label(j)] = 1;
    }
    lo[cavity_label(cavity)] = 0;
    hi[cavity_label(cavity)] = 1;
    const std::array terms{
        std::pair<cplx, StateVector>{1.0, basis_state(layout, lo)},
        std::pair<cplx, StateVector>{coefficient, basis_state(layout, hi)}};
    return superpose(terms);
}

std::size_t outcome_index(const std::optional<std::string> &outcome,
                          const char *name) {
    static const std::map<std::string, std::size_t> table{
        {"g,g", 0}, {"g,e", 1}, {"e,g", 2}, {"e,e", 3}};
    if (!outcome)
        throw Error(ErrorCode::invalid_argument,
                    std::string(name) + " needs a detection outcome");
    auto it = table.find(*outcome);
    if (it == table.end())
        throw Error(ErrorCode::invalid_argument,
                    std::string(name) + ": unknown outcome '" + *outcome +
                        "'");
    return it->second;
}

} // namespace

const char *to_string(ReferenceName name) {
    switch (name) {
    case ReferenceName::eq4:
        return "eq4";
    case ReferenceName::eq6:
        return "eq6";
    case ReferenceName::eq7:
        return "eq7";
    case ReferenceName::eq16:
        return "eq16";
    case ReferenceName::eq17:
        return "eq17";
    case ReferenceName::eq18:
        return "eq18";
    case ReferenceName::eq21:
        return "eq21";
    case ReferenceName::eq22:
        return "eq22";
    case ReferenceName::eq29:
        return "eq29";
    }
    return "unknown";
}

ReferenceName reference_name_from_string(const std::string &name) {
    static const std::map<std::string, ReferenceName> table{
        {"eq4", ReferenceName::eq4},   {"eq6", ReferenceName::eq6},
        {"eq7", ReferenceName::eq7},   {"eq16", ReferenceName::eq16},
        {"eq17", ReferenceName::eq17}, {"eq18", ReferenceName::eq18},
        {"eq21", ReferenceName::eq21}, {"eq22", ReferenceName::eq22},
        {"eq29", ReferenceName::eq29}};
    auto it = table.find(name);
    if (it == table.end())
        throw Error(ErrorCode::invalid_argument,
                    "unknown reference state '" + name + "'");
    return it->second;
}

std::string cavity_label(std::size_t k) { return "c" + std::to_string(k); }
std::string atom_label(std::size_t j) { return "a" + std::to_string(j); }
std::string momentum_label(std::size_t j) {
    return "a" + std::to_string(j) + ".p";
}
std::string aux_label(std::size_t k) { return "x" + std::to_string(k); }

std::vector<Subsystem> atom_subsystems(std::size_t first, std::size_t count) {
    std::vector<Subsystem> subs;
    for (std::size_t j = first; j < first + count; ++j) {
        subs.push_back({atom_label(j), SubsystemKind::internal, 2});
        subs.push_back({momentum_label(j), SubsystemKind::momentum, 2});
    }
    return subs;
}

StateVector reference_state(ReferenceName name,
                            const std::optional<std::string> &outcome,
                            const ReferenceParams &params) {
    switch (name) {
    case ReferenceName::eq4: {
        const Layout layout = tagged_layout(1, 1, 1);
        const std::array terms{
            std::pair<cplx, StateVector>{
                1.0, basis_state(layout, branch(1, 1, {}, {{"c1", 0}}))},
            std::pair<cplx, StateVector>{
                1.0, basis_state(layout, std::map<std::string, std::size_t>{
                                             {"c1", 1}, {"a1", 0}, {"a1.p", 1}})}};
        return superpose(terms);
    }
    case ReferenceName::eq6:
        return ghz(1, 1, 1, -kI);
    case ReferenceName::eq7: {
        if (params.n < 1)
            throw Error(ErrorCode::invalid_argument, "eq7 needs n >= 1");
        // Product over atoms of (i)^{3j}, read as the GHZ coefficient.
        cplx c = 1.0;
        for (std::size_t j = 1; j <= params.n; ++j)
            c *= std::pow(kI, static_cast<int>(3 * j));
        // Snap to the exact unit value.
        c = {std::round(c.real()), std::round(c.imag())};
        return ghz(1, 1, params.n, c);
    }
    case ReferenceName::eq17:
        return ghz(1, 1, 2, 1.0);
    case ReferenceName::eq18:
        return ghz(2, 3, 2, 1.0);
    case ReferenceName::eq16: {
        static const std::array<std::array<double, 4>, 4> signs{{
            {1, 1, 1, 1},   // g,g
            {1, -1, 1, -1}, // g,e
            {1, 1, -1, -1}, // e,g
            {1, -1, -1, 1}, // e,e
        }};
        const auto &s = signs[outcome_index(outcome, "eq16")];
        const Layout layout(atom_subsystems(1, 2));
        const std::array terms{
            std::pair<cplx, StateVector>{s[0],
                                         basis_state(layout, branch(1, 2, {}))},
            std::pair<cplx, StateVector>{s[1],
                                         basis_state(layout, branch(1, 2, {2}))},
            std::pair<cplx, StateVector>{s[2],
                                         basis_state(layout, branch(1, 2, {1}))},
            std::pair<cplx, StateVector>{
                s[3], basis_state(layout, branch(1, 2, {1, 2}))}};
        return superpose(terms);
    }
    case ReferenceName::eq21: {
        const double th = params.lambda_t;
        const cplx p1 = std::exp(-kI * th);
        const cplx p2 = std::exp(-2.0 * kI * th);
        const cplx p3 = std::exp(kI * th);
        const std::array<std::array<cplx, 4>, 4> coeff{{
            {1.0, kI * p1, p2, -kI * p3},   // g,g
            {1.0, -kI * p1, p2, kI * p3},   // g,e
            {1.0, kI * p1, -p2, kI * p3},   // e,g
            {1.0, -kI * p1, -p2, -kI * p3}, // e,e
        }};
        const auto &c = coeff[outcome_index(outcome, "eq21")];
        const Layout layout(atom_subsystems(1, 4));
        const std::array terms{
            std::pair<cplx, StateVector>{c[0],
                                         basis_state(layout, branch(1, 4, {}))},
            std::pair<cplx, StateVector>{
                c[1], basis_state(layout, branch(1, 4, {3, 4}))},
            std::pair<cplx, StateVector>{
                c[2], basis_state(layout, branch(1, 4, {1, 2}))},
            std::pair<cplx, StateVector>{
                c[3], basis_state(layout, branch(1, 4, {1, 2, 3, 4}))}};
        return superpose(terms);
    }
    case ReferenceName::eq22: {
        const Layout layout(atom_subsystems(1, 4));
        const std::array terms{
            std::pair<cplx, StateVector>{1.0,
                                         basis_state(layout, branch(1, 4, {}))},
            std::pair<cplx, StateVector>{
                1.0, basis_state(layout, branch(1, 4, {3, 4}))},
            std::pair<cplx, StateVector>{
                1.0, basis_state(layout, branch(1, 4, {1, 2}))},
            std::pair<cplx, StateVector>{
                -1.0, basis_state(layout, branch(1, 4, {1, 2, 3, 4}))}};
        return superpose(terms);
    }
    case ReferenceName::eq29: {
        const std::size_t atoms = params.n + 1;
        const Layout single(atom_subsystems(1, 1));
        const std::array pair_terms{
            std::pair<cplx, StateVector>{1.0,
                                         basis_state(single, branch(1, 1, {}))},
            std::pair<cplx, StateVector>{
                1.0, basis_state(single, branch(1, 1, {1}))}};
        const StateVector one = superpose(pair_terms);
        // Relabel each factor as atom j.
        Vector amps = one.amplitudes();
        Vector acc = amps;
        for (std::size_t j = 2; j <= atoms; ++j) {
            Vector next(acc.size() * amps.size());
            for (Eigen::Index i = 0; i < acc.size(); ++i)
                next.segment(i * amps.size(), amps.size()) = acc(i) * amps;
            acc = std::move(next);
        }
        return StateVector(Layout(atom_subsystems(1, atoms)), std::move(acc));
    }
    }
    throw Error(ErrorCode::invalid_argument, "unknown reference state");
}

} // namespace hyperqed
