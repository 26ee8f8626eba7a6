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

#include "hyperqed/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hyperqed {

namespace {

constexpr double kPi = std::numbers::pi;

// Maps into (-pi, pi].
double wrap_phase(double a) {
    double w = std::remainder(a, 2.0 * kPi);
    if (w <= -kPi)
        w += 2.0 * kPi;
    return w;
}

std::string joined_labels(const StateVector &s, std::size_t i) {
    const auto labels = s.basis_labels(i);
    std::string out;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        if (k)
            out += ",";
        out += labels[k];
    }
    return out;
}

std::string pretty_level(const std::string &label, bool ascii) {
    if (ascii)
        return label;
    if (label == "P0")
        return "P₀";
    if (label == "P-2")
        return "P₋₂";
    return label;
}

} // namespace

double CompareReport::relative_phase_spread() const {
    if (phase_residuals.empty())
        return 0.0;
    cplx mean{0.0, 0.0};
    for (const auto &r : phase_residuals)
        mean += std::polar(1.0, r.phase);
    const double ref = std::arg(mean);
    double spread = 0.0;
    for (const auto &r : phase_residuals)
        spread = std::max(spread, std::abs(wrap_phase(r.phase - ref)));
    return spread;
}

CompareReport compare(const StateVector &state, const StateVector &reference,
                      double threshold) {
    if (!(state.layout() == reference.layout()))
        throw Error(ErrorCode::dimension_mismatch,
                    "compare needs states over the same layout");
    CompareReport rep;
    rep.fidelity = std::min(1.0, overlap_probability(reference, state));
    double bmf = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const cplx a = state.amplitude(i);
        const cplx b = reference.amplitude(i);
        bmf += std::abs(a) * std::abs(b);
        const bool in_a = std::abs(a) > threshold;
        const bool in_b = std::abs(b) > threshold;
        if (in_a && in_b)
            rep.phase_residuals.push_back(
                {joined_labels(state, i), wrap_phase(std::arg(a / b))});
        else if (in_a != in_b)
            rep.support_mismatch.push_back(joined_labels(state, i));
    }
    rep.branch_magnitude_fidelity = std::min(1.0, bmf);
    return rep;
}

double negativity(const DensityMatrix &rho,
                  const std::vector<std::string> &side_a) {
    const Layout &layout = rho.layout();
    if (side_a.empty() || side_a.size() >= layout.size())
        throw Error(ErrorCode::invalid_argument,
                    "negativity partition must be a proper non-empty subset");
    std::vector<bool> in_a(layout.size(), false);
    for (const auto &l : side_a) {
        const auto p = layout.position(l);
        if (in_a[p])
            throw Error(ErrorCode::invalid_argument,
                        "negativity partition repeats '" + l + "'");
        in_a[p] = true;
    }

    // Partial transpose on A: swap the A digits of row and column.
    const std::size_t n = layout.total_dim();
    std::vector<std::vector<std::size_t>> digits(n);
    for (std::size_t i = 0; i < n; ++i)
        digits[i] = layout.digits(i);
    const Matrix &e = rho.entries();
    Matrix pt(e.rows(), e.cols());
    std::vector<std::size_t> dr(layout.size()), dc(layout.size());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t k = 0; k < layout.size(); ++k) {
                dr[k] = in_a[k] ? digits[c][k] : digits[r][k];
                dc[k] = in_a[k] ? digits[r][k] : digits[c][k];
            }
            pt(static_cast<Eigen::Index>(layout.flat_index(dr)),
               static_cast<Eigen::Index>(layout.flat_index(dc))) =
                e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(pt, Eigen::EigenvaluesOnly);
    const double trace_norm = eig.eigenvalues().cwiseAbs().sum();
    return std::max(0.0, (trace_norm - 1.0) / 2.0);
}

double witness_value(const DensityMatrix &rho, const StateVector &w) {
    if (!(rho.layout() == w.layout()))
        throw Error(ErrorCode::dimension_mismatch,
                    "witness state and density matrix layouts differ");
    const Vector &v = w.amplitudes();
    const double overlap = v.dot(rho.entries() * v).real();
    return 0.5 - overlap;
}

std::string ket_string(const StateVector &state, const KetFormat &format) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(format.precision);
    bool first = true;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const cplx a = state.amplitude(i);
        const double mag = std::abs(a);
        if (!(mag > format.threshold))
            continue;
        if (!first)
            os << " + ";
        first = false;
        os << mag;
        const double ph = wrap_phase(std::arg(a));
        if (std::abs(ph) > 1e-12) {
            if (format.ascii)
                os << "*exp(i*" << ph << ")";
            else
                os << "·e^{i·" << ph << "}";
        }
        const auto labels = state.basis_labels(i);
        os << "|";
        for (std::size_t k = 0; k < labels.size(); ++k) {
            if (k)
                os << ",";
            os << pretty_level(labels[k], format.ascii);
        }
        os << (format.ascii ? ">" : "⟩");
    }
    if (first)
        return "(below threshold)";
    return os.str();
}

std::string ket_string(const StateVector &state, double threshold) {
    KetFormat f;
    f.threshold = threshold;
    return ket_string(state, f);
}

} // namespace hyperqed
