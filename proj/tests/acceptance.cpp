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

// Acceptance suite: one PASS/FAIL line per criterion, with sub-checks and
// timings listed underneath. Exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "hyperqed/analysis.hpp"
#include "hyperqed/interactions.hpp"
#include "hyperqed/noise.hpp"
#include "hyperqed/oracle.hpp"
#include "hyperqed/protocols.hpp"
#include "hyperqed/references.hpp"

using namespace hyperqed;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> lines;
    std::vector<std::string> notes;
    bool ok = true;

    void check(bool pass, const std::string &what) {
        ok = ok && pass;
        lines.push_back(std::string(pass ? "ok    " : "FAILED") + "  " + what);
    }
    void note(const std::string &what) { notes.push_back(what); }
};

std::string fmt(const char *f, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

using Runner = std::function<void(Criterion &)>;

// ---- 1, 2: single-atom tagging endpoints ---------------------------------

StateVector initial_single() {
    const Layout l({{"c1", SubsystemKind::cavity, 2},
                    {"a1", SubsystemKind::internal, 2},
                    {"a1.p", SubsystemKind::momentum, 2}});
    const std::array terms{
        std::pair<cplx, StateVector>{
            1.0, basis_state(l, std::map<std::string, std::string>{
                                    {"c1", "0"}, {"a1", "b"}, {"a1.p", "P0"}})},
        std::pair<cplx, StateVector>{
            1.0, basis_state(l, std::map<std::string, std::string>{
                                    {"c1", "1"}, {"a1", "b"}, {"a1.p", "P0"}})}};
    return superpose(terms);
}

// Targets written out by hand, independent of the reference table.
StateVector two_branch(cplx c, const char *hi_internal) {
    const Layout l = initial_single().layout();
    Vector v = Vector::Zero(8);
    v(0) = 1.0;
    const std::size_t hi = std::string(hi_internal) == "a" ? 7 : 5;
    v(static_cast<Eigen::Index>(hi)) = c;
    return StateVector(l, v);
}

void criterion1(Criterion &c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = PhysicalParams::natural();
    const auto psi0 = initial_single();
    const auto out = apply_gate(psi0, bragg_gate(psi0.layout(), "c1", "a1.p",
                                                 p.bragg_endpoint(), p));
    const double f = compare(out, two_branch(1.0, "b")).fidelity;
    c.check(std::abs(f - 1.0) < 1e-10, "fidelity vs (|0,b,P0>+|1,b,P-2>)/sqrt2 = " +
                                           fmt("%.15f", f));
    const double f_ref = compare(out, reference_state(ReferenceName::eq4)).fidelity;
    c.check(std::abs(f_ref - 1.0) < 1e-10, "agrees with the stored reference table");
    const double dt = seconds_since(t0);
    c.check(dt < 1.0, "runtime " + fmt("%.4f s", dt) + " < 1 s");
}

void criterion2(Criterion &c) {
    const auto p = PhysicalParams::natural();
    const auto psi0 = initial_single();
    auto s = apply_gate(psi0, bragg_gate(psi0.layout(), "c1", "a1.p", p.bragg_endpoint(), p));
    s = apply_gate(s, classical_pulse(s.layout(), "a1", "a1.p", 1, p.pulse_endpoint(),
                                      p.omega_classical, 0.0));
    const double f = compare(s, two_branch(-kI, "a")).fidelity;
    c.check(std::abs(f - 1.0) < 1e-10,
            "fidelity vs (|0,b,P0> - i|1,a,P-2>)/sqrt2 = " + fmt("%.15f", f));
}

// ---- 3: linear cluster ----------------------------------------------------

void criterion3(Criterion &c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto tr = linear_cluster(PhaseConvention::paper);
    c.check(tr.outcomes.size() == 4, "four detection outcomes");
    for (const auto &o : tr.outcomes) {
        const std::string lab = o.detection.label();
        const double pr = o.detection.probability;
        c.check(std::abs(pr - 0.25) < 1e-10, "(" + lab + ") probability " + fmt("%.15f", pr));
        const auto ref = reference_state(ReferenceName::eq16, lab);
        const auto r = compare(*o.detection.post_state, ref);
        c.check(std::abs(r.branch_magnitude_fidelity - 1.0) < 1e-10,
                "(" + lab + ") branch-magnitude fidelity " +
                    fmt("%.15f", r.branch_magnitude_fidelity));
        if (lab == "g,g")
            c.check(std::abs(r.fidelity - 1.0) < 1e-10,
                    "(g,g) exact fidelity incl. signs " + fmt("%.15f", r.fidelity));
    }
    const double dt = seconds_since(t0);
    c.check(dt < 5.0, "runtime " + fmt("%.4f s", dt) + " < 5 s");
}

// ---- 4: 2D cluster ----------------------------------------------------------

// Negativity by an explicit partial transpose over the first `na` of the
// subsystems, written independently of the library routine.
double brute_force_negativity(const StateVector &s, std::size_t na) {
    const Layout &l = s.layout();
    std::size_t da = 1;
    for (std::size_t k = 0; k < na; ++k)
        da *= l[k].dim;
    const std::size_t db = l.total_dim() / da;
    const Matrix rho = s.amplitudes() * s.amplitudes().adjoint();
    Matrix pt(rho.rows(), rho.cols());
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t m = 0; m < db; ++m)
                    pt(static_cast<Eigen::Index>(i * db + k),
                       static_cast<Eigen::Index>(j * db + m)) =
                        rho(static_cast<Eigen::Index>(j * db + k),
                            static_cast<Eigen::Index>(i * db + m));
    Eigen::SelfAdjointEigenSolver<Matrix> es(pt);
    double neg = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) < 0)
            neg -= es.eigenvalues()(i);
    return neg;
}

void criterion4(Criterion &c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = PhysicalParams::natural();
    const double td = kPi / (2.0 * p.lambda_disp);
    const auto tr = cluster_2d(PhaseConvention::paper, td);
    for (const auto &o : tr.outcomes)
        c.check(std::abs(o.detection.probability - 0.25) < 1e-10,
                "(" + o.detection.label() + ") probability " +
                    fmt("%.15f", o.detection.probability));

    const auto target = reference_state(ReferenceName::eq22);
    for (const auto &o : tr.outcomes) {
        if (o.detection.label() != "e,g")
            continue;
        const auto r = compare(*o.detection.post_state, target);
        c.check(std::abs(r.branch_magnitude_fidelity - 1.0) < 1e-10,
                "(e,g) branch-magnitude fidelity vs the (+,+,+,-) target " +
                    fmt("%.15f", r.branch_magnitude_fidelity));
        c.check(std::abs(r.fidelity - 1.0) < 1e-10,
                "(e,g) exact fidelity incl. signs (+,+,+,-) " + fmt("%.15f", r.fidelity));
        std::string res = "(e,g) phase residuals:";
        for (const auto &ph : r.phase_residuals)
            res += " " + fmt("%+.6f", ph.phase);
        c.note(res);
    }

    const double n_lib = negativity(DensityMatrix::from_pure(target),
                                    {"a1", "a1.p", "a2", "a2.p"});
    const double n_bf = brute_force_negativity(target, 4);
    c.check(std::abs(n_lib - 0.5) < 1e-9, "pair-vs-pair negativity of the target " +
                                              fmt("%.12f", n_lib));
    c.check(std::abs(n_bf - n_lib) < 1e-9,
            "brute-force partial transpose agrees " + fmt("%.12f", n_bf));

    // Informational: the same pipeline with unphased pulses.
    const auto th = cluster_2d(PhaseConvention::hamiltonian, td);
    for (const auto &o : th.outcomes)
        if (o.detection.label() == "e,g") {
            const auto r = compare(*o.detection.post_state, target);
            std::string res = "hamiltonian convention (e,g): fidelity " +
                              fmt("%.6f", r.fidelity) + ", residuals";
            for (const auto &ph : r.phase_residuals)
                res += " " + fmt("%+.6f", ph.phase);
            c.note(res);
        }
    const double dt = seconds_since(t0);
    c.check(dt < 10.0, "runtime " + fmt("%.4f s", dt) + " < 10 s");
}

// ---- 5: ring graph ----------------------------------------------------------

void criterion5(Criterion &c) {
    for (std::size_t n : {2u, 3u}) {
        const auto tr = ring_graph(n, PhaseConvention::paper);
        const std::string tag = "n=" + std::to_string(n) + " ";
        const double expect = std::pow(2.0, -static_cast<double>(n + 1));
        double worst = 0.0;
        for (const auto &o : tr.outcomes)
            worst = std::max(worst, std::abs(o.detection.probability - expect));
        c.check(tr.outcomes.size() == (std::size_t{1} << (n + 1)) && worst < 1e-10,
                tag + std::to_string(tr.outcomes.size()) + " outcomes, max |p - 2^-(n+1)| " +
                    fmt("%.2e", worst));
        const auto &ground = tr.outcomes.front();
        ReferenceParams rp;
        rp.n = n - 1;
        const auto ref = reference_state(ReferenceName::eq29, {}, rp);
        const auto r = compare(*ground.detection.post_state, ref);
        c.check(std::abs(r.branch_magnitude_fidelity - 1.0) < 1e-10,
                tag + "all-ground branch-magnitude fidelity " +
                    fmt("%.15f", r.branch_magnitude_fidelity));
        double worst_purity = 0.0, worst_vac = 0.0;
        std::size_t removed = 0;
        for (const auto &s : tr.steps)
            if (s.kind == StepKind::remove) {
                ++removed;
                worst_purity = std::max(worst_purity, std::abs(*s.removed_purity - 1.0));
                worst_vac = std::max(worst_vac, std::abs(*s.vacuum_population - 1.0));
            }
        c.check(removed == n && worst_purity < 1e-10 && worst_vac < 1e-10,
                tag + std::to_string(removed) + " cavities erased to vacuum, purity defect " +
                    fmt("%.2e", worst_purity));
    }
}

// ---- 6: oracle equivalence ------------------------------------------------

void criterion6(Criterion &c) {
    const auto t0 = std::chrono::steady_clock::now();
    OracleOptions o;
    o.max_dim = 4096;
    const auto r = run_oracle_suite(o);
    std::size_t failed = 0;
    double worst = 0.0;
    for (const auto &ch : r.checks) {
        if (!ch.passed) {
            ++failed;
            c.note("failing check: " + ch.suite + " / " + ch.name);
        }
        if (ch.suite != "property")
            worst = std::max(worst, ch.max_error);
    }
    c.check(failed == 0, std::to_string(r.checks.size() - failed) + "/" +
                             std::to_string(r.checks.size()) + " checks, worst oracle error " +
                             fmt("%.2e", worst));
    c.note(std::to_string(r.skipped_steps) + " protocol steps above dimension 4096 skipped");
    c.note("runtime " + fmt("%.3f s", seconds_since(t0)));
}

// ---- 7, 9: witness dynamics -------------------------------------------------

double closed_form(double lambda, double t) {
    return 0.5 - std::pow(std::cos(2.0 * lambda * t), 4);
}

// Independent 16x16 evolution using matrix exponentials.
double dense_ew(const StateVector &w, double lambda, double t) {
    Matrix sx(2, 2);
    sx << 0, 1, 1, 0;
    const Matrix u1 = (Matrix(-kI * lambda * t * sx)).exp();
    Matrix u = Matrix::Identity(1, 1);
    for (int k = 0; k < 4; ++k)
        u = Eigen::kroneckerProduct(u, u1).eval();
    const Matrix rho0 = w.amplitudes() * w.amplitudes().adjoint();
    const Matrix rho = u * rho0 * u.adjoint();
    return 0.5 - (w.amplitudes().adjoint() * rho * w.amplitudes())(0, 0).real();
}

const std::vector<double> kLambdas{0.1, 0.5, 1.0};

void criterion7(Criterion &c) {
    const auto w = default_witness_state();

    double worst_dense = 0.0;
    for (double lam : kLambdas)
        for (int k = 0; k <= 200; ++k) {
            const double t = 10.0 * k / 200.0;
            worst_dense = std::max(worst_dense, std::abs(dense_ew(w, lam, t) - closed_form(lam, t)));
        }
    c.check(worst_dense < 1e-10,
            "closed form 1/2 - cos^4(2 lambda t) vs dense 16x16 evolution, max dev " +
                fmt("%.2e", worst_dense));

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<WitnessSeries> series;
    for (double lam : kLambdas) {
        NoiseParams p;
        p.lambda_c = lam;
        p.t_grid = uniform_grid(kDefaultTMax, kDefaultGridPoints);
        series.push_back(evolve_frozen(w, p));
    }
    const double dt = seconds_since(t0);
    c.check(dt < 5.0, "three series on [0,10] x 1001 points in " + fmt("%.4f s", dt) + " < 5 s");

    for (const auto &s : series) {
        const double lam = s.params.lambda_c;
        const std::string tag = "lambda=" + fmt("%g", lam) + ": ";
        c.check(std::abs(s.ew[0] + 0.5) < 1e-12, tag + "EW(0) = " + fmt("%.15f", s.ew[0]));

        double worst = 0.0;
        for (std::size_t i = 0; i < s.ew.size(); ++i)
            worst = std::max(worst, std::abs(s.ew[i] - closed_form(lam, s.times[i])));
        c.check(worst < 1e-10, tag + "series vs closed form, max dev " + fmt("%.2e", worst));

        // Period pi/lambda: exact shift of every grid point, and on the grid
        // itself when a full period fits.
        const double period = kPi / lam;
        double worst_shift = 0.0;
        for (std::size_t i = 0; i < s.ew.size(); ++i)
            worst_shift = std::max(
                worst_shift, std::abs(frozen_witness_at(w, s.params, s.times[i] + period) - s.ew[i]));
        c.check(worst_shift < 1e-10,
                tag + "EW(t + pi/lambda) = EW(t), max dev " + fmt("%.2e", worst_shift));
        const double h = s.times[1] - s.times[0];
        const auto shift = static_cast<std::size_t>(std::llround(period / h));
        if (shift < s.ew.size()) {
            // Off-grid mismatch is bounded by slope * half a step.
            const double slope = 8.0 * lam;
            const double bound = slope * std::abs(shift * h - period) + 1e-10;
            double dev = 0.0;
            for (std::size_t i = 0; i + shift < s.ew.size(); ++i)
                dev = std::max(dev, std::abs(s.ew[i + shift] - s.ew[i]));
            c.check(dev <= bound, tag + "grid shift by " + std::to_string(shift) +
                                      " samples, max dev " + fmt("%.2e", dev) + " <= " +
                                      fmt("%.2e", bound));
        } else {
            c.note(tag + "period exceeds the grid; periodicity checked by exact shift only");
        }

        // Amplitude per period: max |EW| over phase-aligned samples of five
        // consecutive periods.
        double amp0 = 0.0, amp_dev = 0.0;
        for (int k = 0; k < 5; ++k) {
            double amp = 0.0;
            for (int j = 0; j <= 400; ++j)
                amp = std::max(amp, std::abs(frozen_witness_at(w, s.params,
                                                               (k + j / 400.0) * period)));
            if (k == 0)
                amp0 = amp;
            amp_dev = std::max(amp_dev, std::abs(amp - amp0));
        }
        c.check(amp_dev < 1e-10, tag + "per-period amplitude " + fmt("%.12f", amp0) +
                                     ", spread " + fmt("%.2e", amp_dev));
    }
}

// ---- 8: documented discrepancies ------------------------------------------

void criterion8(Criterion &c) {
    const auto tr = tag_chain(2, PhaseConvention::hamiltonian);
    const auto &r = *tr.outcomes.front().report;
    c.check(tr.outcomes.front().reference_name == "eq17", "compared against the printed GHZ pair");
    c.check(std::abs(r.branch_magnitude_fidelity - 1.0) < 1e-10,
            "hamiltonian tag_chain(2) branch-magnitude fidelity " +
                fmt("%.15f", r.branch_magnitude_fidelity));
    bool shape = r.phase_residuals.size() == 2;
    if (shape) {
        shape = std::abs(r.phase_residuals[0].phase) < 1e-10 &&
                std::abs(std::abs(r.phase_residuals[1].phase) - kPi) < 1e-10 &&
                r.phase_residuals[1].basis == "1,a,P-2,a,P-2";
    }
    c.check(shape, "phase residual pi on the excited branch, 0 on the ground branch");

    // Dispersive tables. Ratio paper / hamiltonian per basis state.
    const Layout l({{"c1", SubsystemKind::cavity, 2}, {"x1", SubsystemKind::auxiliary, 2}});
    const double lam = 0.9;
    double worst = 0.0;
    for (double t : {0.0, 0.37, 1.0, kPi / (2 * lam), kPi / lam}) {
        const Matrix hp = dispersive_gate(l, "c1", "x1", t, lam, PhaseConvention::hamiltonian).matrix();
        const Matrix pp = dispersive_gate(l, "c1", "x1", t, lam, PhaseConvention::paper).matrix();
        const double th = lam * t;
        // Local order (c1, x1): |0,g>, |0,e>, |1,g>, |1,e>.
        const std::array<cplx, 4> ham{1.0, std::exp(-kI * th), std::exp(kI * th),
                                      std::exp(-2.0 * kI * th)};
        const std::array<cplx, 4> pap{1.0, std::exp(-2.0 * kI * th), std::exp(-kI * th),
                                      std::exp(kI * th)};
        const std::array<cplx, 4> ratio{1.0, std::exp(-kI * th), std::exp(-2.0 * kI * th),
                                        std::exp(3.0 * kI * th)};
        for (int k = 0; k < 4; ++k) {
            worst = std::max(worst, std::abs(hp(k, k) - ham[k]));
            worst = std::max(worst, std::abs(pp(k, k) - pap[k]));
            worst = std::max(worst, std::abs(pp(k, k) / hp(k, k) - ratio[k]));
        }
        worst = std::max(worst, (hp - Matrix(hp.diagonal().asDiagonal())).cwiseAbs().maxCoeff());
        worst = std::max(worst, (pp - Matrix(pp.diagonal().asDiagonal())).cwiseAbs().maxCoeff());
    }
    c.check(worst < 1e-12,
            "dispersive tables: hamiltonian (1, e^-i.th, e^i.th, e^-2i.th), paper "
            "(1, e^-2i.th, e^-i.th, e^i.th) on |0g>,|0e>,|1g>,|1e>, max dev " +
                fmt("%.2e", worst));
}

// Sign changes of the sampled series, ignoring exact zeros.
std::size_t crossings(const std::vector<double> &v, std::size_t lo, std::size_t hi) {
    std::size_t n = 0;
    int last = 0;
    for (std::size_t i = lo; i <= hi && i < v.size(); ++i) {
        const int s = v[i] > 0 ? 1 : (v[i] < 0 ? -1 : 0);
        if (s != 0) {
            if (last != 0 && s != last)
                ++n;
            last = s;
        }
    }
    return n;
}

// Zeros of 1/2 - cos^4(2 lambda t) inside (a, b].
std::size_t predicted_crossings(double lam, double a, double b) {
    const double x0 = std::acos(std::pow(0.5, 0.25));
    std::size_t n = 0;
    for (int m = 0; m < 1000; ++m)
        for (double x : {m * kPi + x0, (m + 1) * kPi - x0}) {
            const double t = x / (2.0 * lam);
            if (t > a && t <= b)
                ++n;
        }
    return n;
}

void criterion9(Criterion &c) {
    const auto w = default_witness_state();
    for (double lam : kLambdas) {
        NoiseParams p;
        p.lambda_c = lam;
        p.t_grid = uniform_grid(kDefaultTMax, kDefaultGridPoints);
        const auto s = evolve_frozen(w, p);
        const std::string tag = "lambda=" + fmt("%g", lam) + ": ";
        const double period = kPi / lam;
        const double h = s.times[1] - s.times[0];
        const std::size_t total = crossings(s.ew, 0, s.ew.size() - 1);
        const std::size_t predicted = predicted_crossings(lam, 0.0, s.times.back());
        c.check(total == predicted, tag + std::to_string(total) +
                                        " zero crossings on [0,10], closed form predicts " +
                                        std::to_string(predicted));
        std::size_t windows = 0;
        for (int k = 0;; ++k) {
            const double a = k * period, b = (k + 1) * period;
            if (b > s.times.back())
                break;
            ++windows;
            const auto lo = static_cast<std::size_t>(std::ceil(a / h));
            const auto hi = static_cast<std::size_t>(std::floor(b / h));
            const std::size_t got = crossings(s.ew, lo, hi);
            const std::size_t want = predicted_crossings(lam, a, b);
            c.check(want < 2 || got >= 2,
                    tag + "period window " + std::to_string(k) + ": " + std::to_string(got) +
                        " crossings (predicted " + std::to_string(want) + ", need >= 2)");
        }
        if (windows == 0)
            c.note(tag + "no complete period pi/lambda = " + fmt("%.3f", period) +
                   " inside [0,10]; only the total count applies");
    }
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, Runner>> criteria{
        {"Bragg endpoint splits the momentum", criterion1},
        {"classical pulse endpoint", criterion2},
        {"linear cluster outcomes (paper convention, t2 = pi/lambda)", criterion3},
        {"2D cluster outcomes (paper convention, t_d = pi/2lambda)", criterion4},
        {"ring graph n = 2, 3", criterion5},
        {"tensor-structured vs dense Kronecker equivalence", criterion6},
        {"witness dynamics, frozen noise", criterion7},
        {"known-discrepancy regression", criterion8},
        {"collapse and revival zero crossings", criterion9},
    };
    const auto start = std::chrono::steady_clock::now();
    int failed = 0;
    int id = 0;
    for (const auto &[title, run] : criteria) {
        Criterion c{++id, title, {}, {}, true};
        const auto t0 = std::chrono::steady_clock::now();
        try {
            run(c);
        } catch (const std::exception &e) {
            c.check(false, std::string("exception: ") + e.what());
        }
        const double dt = seconds_since(t0);
        std::printf("CRITERION %d: %s  %s  (%.3f s)\n", c.id, c.ok ? "PASS" : "FAIL",
                    c.title.c_str(), dt);
        for (const auto &l : c.lines)
            std::printf("    %s\n", l.c_str());
        for (const auto &n : c.notes)
            std::printf("    note    %s\n", n.c_str());
        failed += c.ok ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed in %.3f s\n",
                static_cast<int>(criteria.size()) - failed, criteria.size(),
                seconds_since(start));
    return failed == 0 ? 0 : 1;
}
