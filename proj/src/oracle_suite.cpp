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

#include "hyperqed/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "hyperqed/analysis.hpp"
#include "hyperqed/interactions.hpp"
#include "hyperqed/measurement.hpp"
#include "hyperqed/protocols.hpp"

namespace hyperqed {

namespace {

constexpr double kOracleTol = 1e-10;
constexpr int kRandomCases = 5;

using Rng = std::mt19937_64;

Vector random_vector(std::size_t n, Rng &rng) {
    std::normal_distribution<double> g;
    Vector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = cplx(g(rng), g(rng));
    return v / v.norm();
}

StateVector random_state(const Layout &layout, Rng &rng) {
    return StateVector(layout, random_vector(layout.total_dim(), rng));
}

// Random state with no amplitude on the gate's forbidden local inputs.
StateVector random_state_for(const GateOp &gate, const Layout &layout, Rng &rng) {
    Vector v = random_vector(layout.total_dim(), rng);
    if (!gate.forbidden_inputs().empty()) {
        std::vector<std::size_t> pos;
        for (const auto &t : gate.targets())
            pos.push_back(layout.position(t));
        for (std::size_t i = 0; i < layout.total_dim(); ++i) {
            const auto d = layout.digits(i);
            std::size_t loc = 0;
            for (auto p : pos)
                loc = loc * layout[p].dim + d[p];
            for (auto f : gate.forbidden_inputs())
                if (loc == f)
                    v(static_cast<Eigen::Index>(i)) = 0.0;
        }
        v /= v.norm();
    }
    return StateVector(layout, std::move(v));
}

Matrix random_unitary(std::size_t n, Rng &rng) {
    std::normal_distribution<double> g;
    Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            a(r, c) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
}

double max_abs(const Vector &v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const Matrix &m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

class Runner {
  public:
    explicit Runner(const OracleOptions &o) : opt_(o), rng_(o.seed) {}

    OracleReport run() {
        kron_primitives();
        kron_textbook();
        kron_protocols();
        properties();
        return std::move(report_);
    }

  private:
    void add(std::string suite, std::string name, double err, std::size_t cases,
             std::string detail = {}, std::optional<bool> verdict = {}) {
        OracleCheck c;
        c.suite = std::move(suite);
        c.name = std::move(name);
        c.max_error = err;
        c.cases = cases;
        c.passed = verdict ? *verdict : (std::isfinite(err) && err <= kOracleTol);
        c.detail = std::move(detail);
        report_.checks.push_back(std::move(c));
    }

    // Wraps a check body; any exception is a failure with its message.
    void guarded(const std::string &suite, const std::string &name,
                 const std::function<void()> &body) {
        try {
            body();
        } catch (const std::exception &e) {
            add(suite, name, INFINITY, 0, e.what(), false);
        }
    }

    double gate_vs_oracle(const GateOp &gate, const StateVector &in,
                          const StateVector &out) {
        const Matrix full = kron_oracle(gate, in.layout(), opt_.max_dim);
        Vector got = out.amplitudes();
        if (opt_.inject_fault && !fault_done_) {
            got(0) += 1e-6;
            fault_done_ = true;
        }
        return max_abs(Vector(full * in.amplitudes() - got));
    }

    void kron_primitives() {
        const PhysicalParams p = PhysicalParams::natural();
        std::uniform_real_distribution<double> ut(0.0, 10.0), uphi(-std::numbers::pi, std::numbers::pi);

        const Layout small({{"c1", SubsystemKind::cavity, 2},
                            {"a1", SubsystemKind::internal, 2},
                            {"a1.p", SubsystemKind::momentum, 2},
                            {"x1", SubsystemKind::auxiliary, 2}});
        const Layout large({{"x1", SubsystemKind::auxiliary, 2},
                            {"a1", SubsystemKind::internal, 2},
                            {"c1", SubsystemKind::cavity, 2},
                            {"a1.p", SubsystemKind::momentum, 2},
                            {"c2", SubsystemKind::cavity, 3},
                            {"a2", SubsystemKind::internal, 2},
                            {"a2.p", SubsystemKind::momentum, 2}});

        using Make = std::function<GateOp(const Layout &)>;
        const std::vector<std::pair<std::string, Make>> gates{
            {"bragg c1,a1.p", [&](const Layout &l) {
                 return bragg_gate(l, "c1", "a1.p", ut(rng_) * p.bragg_endpoint(), p);
             }},
            {"pulse a1 sel=P-2", [&](const Layout &l) {
                 return classical_pulse(l, "a1", "a1.p", 1, ut(rng_), 1.0, uphi(rng_));
             }},
            {"pulse a1 sel=P0", [&](const Layout &l) {
                 return classical_pulse(l, "a1", "a1.p", 0, ut(rng_), 1.0, uphi(rng_));
             }},
            {"jc c1,x1", [&](const Layout &l) {
                 return jc_swap(l, "c1", "x1", ut(rng_), p.mu);
             }},
            {"dispersive c1,x1 hamiltonian", [&](const Layout &l) {
                 return dispersive_gate(l, "c1", "x1", ut(rng_), p.lambda_disp,
                                        PhaseConvention::hamiltonian);
             }},
            {"dispersive c1,x1 paper", [&](const Layout &l) {
                 return dispersive_gate(l, "c1", "x1", ut(rng_), p.lambda_disp,
                                        PhaseConvention::paper);
             }},
            {"ramsey x1", [&](const Layout &l) { return ramsey_transform(l, "x1"); }},
        };
        const std::vector<std::pair<std::string, Make>> large_only{
            {"bragg c2(fock 3),a2.p", [&](const Layout &l) {
                 return bragg_gate(l, "c2", "a2.p", ut(rng_) * p.bragg_endpoint(), p);
             }},
            {"jc c2(fock 3),x1", [&](const Layout &l) {
                 return jc_swap(l, "c2", "x1", ut(rng_), p.mu);
             }},
            {"dispersive c2(fock 3),x1 hamiltonian", [&](const Layout &l) {
                 return dispersive_gate(l, "c2", "x1", ut(rng_), p.lambda_disp,
                                        PhaseConvention::hamiltonian);
             }},
        };

        auto run_set = [&](const Layout &layout, const std::string &tag,
                           const std::vector<std::pair<std::string, Make>> &set) {
            if (layout.total_dim() > opt_.max_dim) {
                for (const auto &g : set)
                    add("kron", g.first + " [" + tag + "]", 0.0, 0,
                        "skipped: dimension above --max-dim", true);
                return;
            }
            for (const auto &[name, make] : set) {
                guarded("kron", name + " [" + tag + "]", [&] {
                    double err = 0.0;
                    for (int k = 0; k < kRandomCases; ++k) {
                        const GateOp g = make(layout);
                        const StateVector in = random_state_for(g, layout, rng_);
                        const StateVector out = apply_gate(in, g);
                        err = std::max(err, gate_vs_oracle(g, in, out));
                        err = std::max(err, std::abs(out.norm() - 1.0));
                    }
                    add("kron", name + " [" + tag + "]", err, kRandomCases);
                });
            }
        };
        run_set(small, "dim 16", gates);
        run_set(large, "dim 192", gates);
        run_set(large, "dim 192", large_only);
    }

    // The oracle itself against explicit Kronecker products.
    void kron_textbook() {
        guarded("kron", "oracle vs explicit I(x)U(x)I", [&] {
            Matrix sx(2, 2);
            sx << 0, 1, 1, 0;
            const Layout two({{"q1", SubsystemKind::auxiliary, 2},
                              {"q2", SubsystemKind::auxiliary, 2}});
            Matrix expect(4, 4);
            expect << 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0;
            double err = max_abs(Matrix(kron_oracle(GateOp("sx", {"q1"}, sx), two) - expect));

            const Layout l({{"c1", SubsystemKind::cavity, 2},
                            {"a1", SubsystemKind::internal, 2},
                            {"a1.p", SubsystemKind::momentum, 2},
                            {"x1", SubsystemKind::auxiliary, 2},
                            {"c2", SubsystemKind::cavity, 3}});
            const Matrix u = random_unitary(4, rng_);
            const GateOp g("u", {"a1", "a1.p"}, u);
            const Matrix ref = Eigen::kroneckerProduct(
                Eigen::kroneckerProduct(Matrix::Identity(2, 2), u).eval(),
                Matrix::Identity(6, 6));
            err = std::max(err, max_abs(Matrix(kron_oracle(g, l) - ref)));

            // Non-adjacent, reversed targets: conjugate by the permutation
            // that brings them to the front in gate order.
            const GateOp g2("u2", {"x1", "c1"}, u);
            const StateVector psi = random_state(l, rng_);
            const StateVector front = permute_subsystems(psi, {"x1", "c1", "a1", "a1.p", "c2"});
            const Matrix big = Eigen::kroneckerProduct(u, Matrix::Identity(12, 12));
            const Vector moved = big * front.amplitudes();
            const StateVector back = permute_subsystems(
                StateVector(front.layout(), moved), {"c1", "a1", "a1.p", "x1", "c2"});
            err = std::max(err, max_abs(Vector(kron_oracle(g2, l) * psi.amplitudes() -
                                               back.amplitudes())));
            err = std::max(err, max_abs(Vector(apply_gate(psi, g2).amplitudes() -
                                               back.amplitudes())));
            add("kron", "oracle vs explicit I(x)U(x)I", err, 3);
        });
    }

    void kron_protocols() {
        struct Named {
            std::string name;
            std::function<ProtocolTrace(PhaseConvention)> run;
        };
        std::vector<Named> protos;
        for (std::size_t n = 1; n <= kMaxChainAtoms; ++n)
            protos.push_back({"tag_chain n=" + std::to_string(n),
                              [n](PhaseConvention c) { return tag_chain(n, c); }});
        protos.push_back({"linear_cluster", [](PhaseConvention c) { return linear_cluster(c); }});
        protos.push_back({"cluster_2d", [](PhaseConvention c) { return cluster_2d(c); }});
        for (std::size_t n = 2; n <= 3; ++n)
            protos.push_back({"ring_graph n=" + std::to_string(n),
                              [n](PhaseConvention c) { return ring_graph(n, c); }});

        for (auto conv : {PhaseConvention::paper, PhaseConvention::hamiltonian}) {
            for (const auto &p : protos) {
                const std::string name = p.name + " " + to_string(conv);
                guarded("kron", name, [&] {
                    const ProtocolTrace t = p.run(conv);
                    std::optional<std::size_t> prev = 0;
                    double err = 0.0;
                    std::size_t checked = 0, skipped = 0;
                    for (const auto &s : t.steps) {
                        if (s.gate) {
                            if (prev && s.snapshot &&
                                t.snapshots[*prev].dim() <= opt_.max_dim) {
                                err = std::max(err, gate_vs_oracle(*s.gate, t.snapshots[*prev],
                                                                   t.snapshots[*s.snapshot]));
                                ++checked;
                            } else {
                                ++skipped;
                            }
                        }
                        if (s.kind != StepKind::detect)
                            prev = s.snapshot;
                    }
                    report_.skipped_steps += skipped;
                    add("kron", name, err, checked,
                        skipped ? std::to_string(skipped) + " steps above max-dim" : "");
                });
            }
        }
    }

    void properties() {
        const PhysicalParams p = PhysicalParams::natural();
        std::uniform_real_distribution<double> ut(0.0, 10.0), uphi(-std::numbers::pi, std::numbers::pi);
        const Layout l({{"c1", SubsystemKind::cavity, 2},
                        {"a1", SubsystemKind::internal, 2},
                        {"a1.p", SubsystemKind::momentum, 2},
                        {"x1", SubsystemKind::auxiliary, 2}});

        guarded("property", "unitarity of primitives", [&] {
            double err = 0.0;
            for (int k = 0; k < kRandomCases; ++k) {
                for (const GateOp &g :
                     {bragg_gate(l, "c1", "a1.p", ut(rng_), p),
                      classical_pulse(l, "a1", "a1.p", 1, ut(rng_), 1.0, uphi(rng_)),
                      jc_swap(l, "c1", "x1", ut(rng_), 1.0),
                      dispersive_gate(l, "c1", "x1", ut(rng_), 1.0, PhaseConvention::hamiltonian),
                      dispersive_gate(l, "c1", "x1", ut(rng_), 1.0, PhaseConvention::paper),
                      ramsey_transform(l, "x1")})
                    err = std::max(err, unitarity_defect(g.matrix()));
            }
            add("property", "unitarity of primitives", err, 6 * kRandomCases);
        });

        guarded("property", "bragg angle additivity", [&] {
            double err = 0.0;
            for (int k = 0; k < kRandomCases; ++k) {
                const double t1 = ut(rng_) * 100.0, t2 = ut(rng_) * 100.0;
                const Matrix a = bragg_gate(l, "c1", "a1.p", t1, p).matrix();
                const Matrix b = bragg_gate(l, "c1", "a1.p", t2, p).matrix();
                const Matrix c = bragg_gate(l, "c1", "a1.p", t1 + t2, p).matrix();
                err = std::max(err, max_abs(Matrix(a * b - c)));
            }
            add("property", "bragg angle additivity", err, kRandomCases);
        });

        guarded("property", "jc(t) jc(-t) = I", [&] {
            double err = 0.0;
            for (int k = 0; k < kRandomCases; ++k) {
                const double t = ut(rng_);
                const Matrix a = jc_swap(l, "c1", "x1", t, 1.0).matrix();
                const Matrix b = jc_swap(l, "c1", "x1", -t, 1.0).matrix();
                err = std::max(err, max_abs(Matrix(a * b - Matrix::Identity(a.rows(), a.cols()))));
            }
            add("property", "jc(t) jc(-t) = I", err, kRandomCases);
        });

        guarded("property", "dispersive hamiltonian is diagonal", [&] {
            double err = 0.0;
            for (int k = 0; k < kRandomCases; ++k) {
                Matrix m = dispersive_gate(l, "c1", "x1", ut(rng_), 1.0,
                                           PhaseConvention::hamiltonian).matrix();
                m.diagonal().setZero();
                err = std::max(err, max_abs(m));
            }
            add("property", "dispersive hamiltonian is diagonal", err, kRandomCases,
                "", err == 0.0);
        });

        guarded("property", "pulse identity off selector", [&] {
            double err = 0.0;
            for (int k = 0; k < kRandomCases; ++k) {
                const Matrix m =
                    classical_pulse(l, "a1", "a1.p", 1, ut(rng_), 1.0, uphi(rng_)).matrix();
                // Local basis i_int*2 + i_mom; P0 rows/cols are 0 and 2.
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c)
                        if ((r % 2 == 0) || (c % 2 == 0))
                            err = std::max(err, std::abs(m(r, c) - (r == c ? cplx(1.0) : cplx(0.0))));
            }
            add("property", "pulse identity off selector", err, kRandomCases, "",
                err == 0.0);
        });

        guarded("property", "ramsey involution", [&] {
            const Matrix m = ramsey_transform(l, "x1").matrix();
            add("property", "ramsey involution",
                max_abs(Matrix(m * m - Matrix::Identity(2, 2))), 1);
        });

        guarded("property", "permutation preserves inner products", [&] {
            double err = 0.0;
            for (int k = 0; k < kRandomCases; ++k) {
                const StateVector a = random_state(l, rng_), b = random_state(l, rng_);
                const std::vector<std::string> order{"x1", "a1.p", "c1", "a1"};
                err = std::max(err, std::abs(inner(a, b) - inner(permute_subsystems(a, order),
                                                                 permute_subsystems(b, order))));
                const auto swap = permute_subsystems(
                    permute_subsystems(a, {"a1", "c1", "a1.p", "x1"}), {"c1", "a1", "a1.p", "x1"});
                err = std::max(err, max_abs(Vector(swap.amplitudes() - a.amplitudes())));
            }
            add("property", "permutation preserves inner products", err, kRandomCases);
        });

        guarded("property", "product-state marginal is pure", [&] {
            double err = 0.0;
            const Layout one({{"q", SubsystemKind::auxiliary, 2}});
            const Layout rest({{"c1", SubsystemKind::cavity, 2},
                               {"a1", SubsystemKind::internal, 2}});
            for (int k = 0; k < kRandomCases; ++k) {
                const StateVector s = kron(random_state(rest, rng_), random_state(one, rng_));
                const auto rho = partial_trace(DensityMatrix::from_pure(s), {"q"});
                err = std::max(err, std::abs(rho.purity() - 1.0));
            }
            add("property", "product-state marginal is pure", err, kRandomCases);
        });

        guarded("property", "detection completeness and re-mixing", [&] {
            double err = 0.0;
            for (int k = 0; k < kRandomCases; ++k) {
                const StateVector s = random_state(l, rng_);
                const auto outs = detect_all(s, {"x1"});
                double total = 0.0;
                Matrix mix = Matrix::Zero(8, 8);
                for (const auto &o : outs) {
                    total += o.probability;
                    if (o.post_state)
                        mix += o.probability * o.post_state->amplitudes() *
                               o.post_state->amplitudes().adjoint();
                }
                const auto rho = partial_trace(DensityMatrix::from_pure(s), {"c1", "a1", "a1.p"});
                err = std::max({err, std::abs(total - 1.0),
                                max_abs(Matrix(mix - rho.entries()))});
            }
            add("property", "detection completeness and re-mixing", err, kRandomCases);
        });

        guarded("property", "negativity: product zero, local-unitary invariant", [&] {
            double err = 0.0;
            const Layout two({{"q1", SubsystemKind::auxiliary, 2},
                              {"q2", SubsystemKind::auxiliary, 2}});
            const Layout q1({{"q1", SubsystemKind::auxiliary, 2}});
            const Layout q2({{"q2", SubsystemKind::auxiliary, 2}});
            for (int k = 0; k < kRandomCases; ++k) {
                const StateVector prod = kron(random_state(q1, rng_), random_state(q2, rng_));
                err = std::max(err, negativity(DensityMatrix::from_pure(prod), {"q1"}));
                const StateVector s = random_state(two, rng_);
                const double n0 = negativity(DensityMatrix::from_pure(s), {"q1"});
                const StateVector t =
                    apply_gate(apply_gate(s, GateOp("ua", {"q1"}, random_unitary(2, rng_))),
                               GateOp("ub", {"q2"}, random_unitary(2, rng_)));
                const double n1 = negativity(DensityMatrix::from_pure(t), {"q1"});
                err = std::max(err, std::abs(n0 - n1));
            }
            add("property", "negativity: product zero, local-unitary invariant", err,
                kRandomCases, "tolerance 1e-9", err <= 1e-9);
        });

        guarded("property", "witness identity and compare symmetry", [&] {
            double err = 0.0;
            for (int k = 0; k < kRandomCases; ++k) {
                const StateVector a = random_state(l, rng_), b = random_state(l, rng_);
                const auto rho = DensityMatrix::from_pure(a);
                const double ov = b.amplitudes().dot(rho.entries() * b.amplitudes()).real();
                err = std::max(err, std::abs(witness_value(rho, b) + ov - 0.5));
                err = std::max(err, std::abs(compare(a, b).branch_magnitude_fidelity -
                                             compare(b, a).branch_magnitude_fidelity));
            }
            add("property", "witness identity and compare symmetry", err, kRandomCases);
        });

        guarded("property", "protocol determinism and completeness", [&] {
            double err = 0.0;
            std::size_t cases = 0;
            for (auto conv : {PhaseConvention::paper, PhaseConvention::hamiltonian}) {
                for (int which = 0; which < 4; ++which) {
                    auto run = [&] {
                        switch (which) {
                        case 0:
                            return tag_chain(3, conv);
                        case 1:
                            return linear_cluster(conv);
                        case 2:
                            return cluster_2d(conv);
                        default:
                            return ring_graph(2, conv);
                        }
                    };
                    const ProtocolTrace a = run(), b = run();
                    bool same = a.snapshots.size() == b.snapshots.size();
                    for (std::size_t i = 0; same && i < a.snapshots.size(); ++i)
                        same = a.snapshots[i].amplitudes() == b.snapshots[i].amplitudes();
                    for (std::size_t i = 0; same && i < a.outcomes.size(); ++i)
                        same = a.outcomes[i].detection.probability ==
                               b.outcomes[i].detection.probability;
                    if (!same)
                        err = INFINITY;
                    err = std::max(err, std::abs(a.total_probability() - 1.0));
                    for (const auto &s : a.steps)
                        err = std::max(err, std::abs(s.norm - 1.0));
                    ++cases;
                }
            }
            add("property", "protocol determinism and completeness", err, cases);
        });

        guarded("property", "cavities erased to vacuum", [&] {
            double err = 0.0;
            std::size_t cases = 0;
            for (auto conv : {PhaseConvention::paper, PhaseConvention::hamiltonian}) {
                for (const ProtocolTrace &t :
                     {linear_cluster(conv), cluster_2d(conv), ring_graph(2, conv),
                      ring_graph(3, conv)}) {
                    for (const auto &s : t.steps) {
                        if (s.kind != StepKind::remove)
                            continue;
                        err = std::max({err, std::abs(*s.vacuum_population - 1.0),
                                        std::abs(*s.removed_purity - 1.0)});
                        ++cases;
                    }
                }
            }
            add("property", "cavities erased to vacuum", err, cases);
        });
    }

    OracleOptions opt_;
    Rng rng_;
    OracleReport report_;
    bool fault_done_ = false;
};

} // namespace

bool OracleReport::all_passed() const {
    for (const auto &c : checks)
        if (!c.passed)
            return false;
    return !checks.empty();
}

std::string OracleReport::table() const {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-6s %-9s %-52s %6s %10s  %s\n", "result",
                  "suite", "check", "cases", "max_err", "note");
    os << line;
    for (const auto &c : checks) {
        std::snprintf(line, sizeof line, "%-6s %-9s %-52s %6zu %10.2e  %s\n",
                      c.passed ? "PASS" : "FAIL", c.suite.c_str(), c.name.c_str(),
                      c.cases, c.max_error, c.detail.c_str());
        os << line;
    }
    std::size_t failed = 0;
    for (const auto &c : checks)
        failed += c.passed ? 0 : 1;
    os << checks.size() - failed << "/" << checks.size() << " checks passed";
    if (skipped_steps)
        os << " (" << skipped_steps << " protocol steps above max-dim skipped)";
    os << "\n";
    return os.str();
}

OracleReport run_oracle_suite(const OracleOptions &options) {
    return Runner(options).run();
}

} // namespace hyperqed
