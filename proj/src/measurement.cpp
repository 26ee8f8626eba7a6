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

#include "hyperqed/measurement.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace hyperqed {

std::string DetectionOutcome::label() const {
    std::string out;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (i)
            out += ",";
        out += assignments[i].second;
    }
    return out;
}

std::vector<DetectionOutcome>
detect_all(const StateVector &state, const std::vector<std::string> &targets) {
    const Layout &layout = state.layout();
    std::vector<std::size_t> pos;
    std::set<std::string> unique;
    for (const auto &t : targets) {
        const auto p = layout.position(t);
        if (layout[p].kind != SubsystemKind::auxiliary || layout[p].dim != 2)
            throw Error(ErrorCode::invalid_argument,
                        "detection target '" + t +
                            "' is not a two-level auxiliary atom");
        if (!unique.insert(t).second)
            throw Error(ErrorCode::invalid_argument,
                        "detection target '" + t + "' repeated");
        pos.push_back(p);
    }

    const Layout rest = layout.without(targets);
    const std::size_t n = layout.total_dim();
    const std::size_t outcomes = std::size_t{1} << targets.size();

    // Split every flat index into (outcome, rest index).
    std::vector<std::size_t> outcome_of(n), rest_of(n);
    std::vector<bool> is_target(layout.size(), false);
    for (auto p : pos)
        is_target[p] = true;
    for (std::size_t i = 0; i < n; ++i) {
        const auto d = layout.digits(i);
        std::size_t o = 0;
        for (auto p : pos)
            o = (o << 1) | d[p];
        std::size_t r = 0;
        for (std::size_t k = 0; k < layout.size(); ++k) {
            if (!is_target[k])
                r = r * layout[k].dim + d[k];
        }
        outcome_of[i] = o;
        rest_of[i] = r;
    }

    std::vector<Vector> blocks(
        outcomes, Vector::Zero(static_cast<Eigen::Index>(rest.total_dim())));
    for (std::size_t i = 0; i < n; ++i)
        blocks[outcome_of[i]](static_cast<Eigen::Index>(rest_of[i])) =
            state.amplitudes()(static_cast<Eigen::Index>(i));

    std::vector<DetectionOutcome> out;
    out.reserve(outcomes);
    for (std::size_t o = 0; o < outcomes; ++o) {
        DetectionOutcome d;
        for (std::size_t j = 0; j < targets.size(); ++j) {
            const std::size_t bit = (o >> (targets.size() - 1 - j)) & 1U;
            d.assignments.emplace_back(
                targets[j], basis_label(SubsystemKind::auxiliary, bit));
        }
        d.probability = blocks[o].squaredNorm();
        d.zero_probability = d.probability <= kZeroProbability;
        if (!d.zero_probability) {
            if (rest.size() == 0)
                throw Error(ErrorCode::invalid_argument,
                            "detection would leave an empty layout");
            d.post_state.emplace(rest, std::move(blocks[o]));
        }
        out.push_back(std::move(d));
    }
    return out;
}

StateVector remove_disentangled(const StateVector &state,
                                const std::string &subsystem) {
    const Layout &layout = state.layout();
    const auto p = layout.position(subsystem);
    if (layout.size() < 2)
        throw Error(ErrorCode::invalid_argument,
                    "cannot remove the only subsystem of a layout");
    const DensityMatrix rho = reduced_density(state, {subsystem});
    const double purity = rho.purity();
    if (purity < 1.0 - kPurityTol) {
        std::ostringstream os;
        os.precision(12);
        os << "subsystem '" << subsystem
           << "' is entangled with the rest (reduced purity " << purity
           << ")";
        throw Error(ErrorCode::entangled_subsystem, os.str());
    }

    // Factor state: dominant eigenvector, phased so its largest component
    // is real and positive.
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.entries());
    Vector phi = eig.eigenvectors().col(eig.eigenvectors().cols() - 1);
    Eigen::Index imax = 0;
    phi.cwiseAbs().maxCoeff(&imax);
    phi *= std::conj(phi(imax)) / std::abs(phi(imax));
    // Exact basis vectors stay exact.
    for (Eigen::Index k = 0; k < phi.size(); ++k) {
        if (std::abs(phi(k)) < 1e-15)
            phi(k) = 0.0;
    }
    if (std::abs(std::abs(phi(imax)) - 1.0) < 1e-15)
        phi(imax) = 1.0;

    const Layout rest = layout.without({subsystem});
    const std::size_t dk = layout[p].dim;
    const std::size_t stride = layout.stride(p);
    Vector out = Vector::Zero(static_cast<Eigen::Index>(rest.total_dim()));
    // Flat index i = hi * (dk * stride) + k * stride + lo.
    const std::size_t n = layout.total_dim();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i % stride;
        const std::size_t k = (i / stride) % dk;
        const std::size_t hi = i / (stride * dk);
        const cplx c = phi(static_cast<Eigen::Index>(k));
        if (c == cplx(0.0))
            continue;
        out(static_cast<Eigen::Index>(hi * stride + lo)) +=
            std::conj(c) * state.amplitudes()(static_cast<Eigen::Index>(i));
    }
    return StateVector(rest, std::move(out));
}

} // namespace hyperqed
