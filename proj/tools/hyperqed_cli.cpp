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

// hyperqed command-line driver.
//
// Exit codes:
//   0  success (protocol/run: every referenced outcome matched)
//   1  usage error or invalid parameters
//   2  fidelity failure (protocol, run, verify) or oracle failure
//   3  script parse failure
//   4  other runtime failure

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperqed/hyperqed.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFidelity = 2;
constexpr int kExitParse = 3;
constexpr int kExitRuntime = 4;
constexpr double kTol = 1e-10;

struct CStr {
    char *p = nullptr;
    ~CStr() { hq_string_free(p); }
    [[nodiscard]] std::string str() const { return p ? p : ""; }
};

struct TraceDeleter {
    void operator()(hq_trace *t) const { hq_trace_free(t); }
};
using TracePtr = std::unique_ptr<hq_trace, TraceDeleter>;

struct SeriesDeleter {
    void operator()(hq_series *s) const { hq_series_free(s); }
};
using SeriesPtr = std::unique_ptr<hq_series, SeriesDeleter>;

struct OracleDeleter {
    void operator()(hq_oracle_report *r) const { hq_oracle_free(r); }
};
using OraclePtr = std::unique_ptr<hq_oracle_report, OracleDeleter>;

int exit_for(hq_status s) {
    switch (s) {
    case HQ_OK:
        return kExitOk;
    case HQ_E_INVALID_ARGUMENT:
    case HQ_E_UNKNOWN_LABEL:
    case HQ_E_OUT_OF_RANGE:
    case HQ_E_CAP_EXCEEDED:
    case HQ_E_NULL_ARGUMENT:
        return kExitUsage;
    case HQ_E_PARSE:
        return kExitParse;
    default:
        return kExitRuntime;
    }
}

int report_error(hq_status s) {
    std::cerr << "error: " << hq_last_error() << "\n";
    return exit_for(s);
}

bool write_file(const fs::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        std::cerr << "error: cannot write " << path.string() << "\n";
        return false;
    }
    return true;
}

std::string file_safe(std::string s) {
    for (char &c : s)
        if (c == ',')
            c = '_';
    return s.empty() ? "none" : s;
}

// Shared flags for protocol and run.
struct CommonOptions {
    std::string convention = "paper";
    std::string preset = "natural";
    std::string out_dir;
    bool ascii = false;
    bool quiet = false;
};

std::optional<hq_params> load_params(const CommonOptions &o) {
    hq_params p{};
    if (hq_params_preset(o.preset.c_str(), &p) != HQ_OK) {
        std::cerr << "error: " << hq_last_error() << "\n";
        return std::nullopt;
    }
    return p;
}

fs::path resolve_out_dir(const std::string &flag) {
    if (!flag.empty())
        return flag;
    if (const char *env = std::getenv("HYPERQED_OUT_DIR"); env && *env)
        return env;
    return "hyperqed_out";
}

bool ensure_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::cerr << "error: cannot create " << dir.string() << ": "
                  << ec.message() << "\n";
        return false;
    }
    return true;
}

// Writes trace JSON, outcome CSV and one report per referenced outcome.
int emit_trace(hq_trace *trace, const std::string &stem, const CommonOptions &o) {
    const fs::path dir = resolve_out_dir(o.out_dir);
    if (!ensure_dir(dir))
        return kExitUsage;
    CStr json{hq_trace_json(trace)};
    CStr csv{hq_trace_csv(trace)};
    if (!json.p || !csv.p)
        return report_error(HQ_E_INTERNAL);
    if (!write_file(dir / (stem + "_trace.json"), json.str()) ||
        !write_file(dir / (stem + "_outcomes.csv"), csv.str()))
        return kExitRuntime;
    const std::size_t n = hq_trace_outcome_count(trace);
    for (std::size_t i = 0; i < n; ++i) {
        CStr report{hq_trace_outcome_report_json(trace, i)};
        if (!report.p)
            continue;
        CStr label{hq_trace_outcome_label(trace, i)};
        if (!write_file(dir / (stem + "_report_" + file_safe(label.str()) + ".json"),
                        report.str()))
            return kExitRuntime;
    }
    if (!o.quiet) {
        CStr summary{hq_trace_summary(trace, o.ascii ? 1 : 0)};
        std::cout << summary.str();
        std::cout << "artifacts: " << (dir / stem).string() << "_*\n";
    }
    return hq_trace_passed(trace, kTol) ? kExitOk : kExitFidelity;
}

hq_convention parse_convention(const std::string &s) {
    return s == "hamiltonian" ? HQ_CONVENTION_HAMILTONIAN : HQ_CONVENTION_PAPER;
}

std::string read_all(std::istream &in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> parse_list(const std::string &s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size())
            throw std::invalid_argument(item);
        out.push_back(v);
    }
    return out;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void add_common(CLI::App *cmd, CommonOptions &o) {
    cmd->add_option("--convention", o.convention, "Phase convention")
        ->check(CLI::IsMember({"paper", "hamiltonian"}))
        ->capture_default_str();
    cmd->add_option("--preset", o.preset, "Physical parameter preset")
        ->check(CLI::IsMember({"natural", "rb85", "helium"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out_dir,
                    "Output directory (default $HYPERQED_OUT_DIR or ./hyperqed_out)");
    cmd->add_flag("--ascii", o.ascii, "ASCII-only ket output");
    cmd->add_flag("-q,--quiet", o.quiet, "Suppress the stdout summary");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"hyperqed: cavity-QED hyper-entanglement protocol simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hq_version()));

    // protocol
    CommonOptions proto_opt;
    std::string proto_name;
    std::size_t proto_n = 0;
    double proto_td = -1.0;
    auto *proto = app.add_subcommand("protocol", "Run a built-in protocol");
    proto->add_option("name", proto_name, "Protocol name")
        ->required()
        ->check(CLI::IsMember(
            {"tag-chain", "linear-cluster", "cluster-2d", "ring-graph"}));
    proto->add_option("-n", proto_n, "Atom or node count");
    proto->add_option("--td,--t2", proto_td,
                      "Dispersive time (default pi/lambda or pi/(2 lambda))");
    add_common(proto, proto_opt);

    // run
    CommonOptions run_opt;
    std::string script_path;
    bool run_script_convention = true;
    auto *run = app.add_subcommand("run", "Execute a .qproto script ('-' for stdin)");
    run->add_option("script", script_path, "Script path")->required();
    add_common(run, run_opt);

    // noise
    std::string noise_lambdas = "1";
    double noise_tmax = 10.0;
    std::size_t noise_grid = 1001;
    std::string noise_mode = "frozen";
    long long noise_traj = 100;
    std::uint64_t noise_seed = 0;
    std::string noise_state = "eq16:g,g";
    double noise_xi = 0.0;
    double noise_rate = 1.0;
    std::vector<int> noise_deltas{1, 1, 1, 1};
    std::string noise_out;
    bool noise_quiet = false;
    auto *noise = app.add_subcommand("noise", "Witness dynamics under dephasing noise");
    noise->add_option("--lambda", noise_lambdas, "Comma-separated coupling list")
        ->capture_default_str();
    noise->add_option("--t-max", noise_tmax, "Final time")->capture_default_str();
    noise->add_option("--grid", noise_grid, "Grid points")->capture_default_str();
    noise->add_option("--mode", noise_mode, "Noise mode")
        ->check(CLI::IsMember({"frozen", "telegraph"}))
        ->capture_default_str();
    noise->add_option("--traj", noise_traj, "Telegraph trajectories")
        ->capture_default_str();
    noise->add_option("--seed", noise_seed, "Telegraph seed")->capture_default_str();
    noise->add_option("--state", noise_state, "Witness state")->capture_default_str();
    noise->add_option("--xi", noise_xi, "Common energy offset")->capture_default_str();
    noise->add_option("--flip-rate", noise_rate, "Telegraph flip rate")
        ->capture_default_str();
    noise->add_option("--deltas", noise_deltas, "Four signs, each +1 or -1")
        ->delimiter(',')
        ->expected(4);
    noise->add_option("--out", noise_out, "Output directory");
    noise->add_flag("-q,--quiet", noise_quiet, "Suppress the stdout summary");

    // verify
    CommonOptions verify_opt;
    auto *verify = app.add_subcommand(
        "verify", "Run every built-in protocol and tabulate reference agreement");
    add_common(verify, verify_opt);

    // oracle
    std::size_t oracle_max_dim = 4096;
    std::uint64_t oracle_seed = 0;
    bool oracle_seed_set = false;
    bool oracle_fault = false;
    auto *oracle = app.add_subcommand(
        "oracle", "Dense Kronecker equivalence and property suites");
    oracle->add_option("--max-dim", oracle_max_dim, "Largest dimension checked")
        ->capture_default_str();
    oracle->add_option("--seed", oracle_seed, "Random-state seed")
        ->each([&](const std::string &) { oracle_seed_set = true; });
    oracle->add_flag("--inject-fault", oracle_fault,
                     "Perturb one comparison (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (*proto) {
        const auto params = load_params(proto_opt);
        if (!params)
            return kExitUsage;
        hq_trace *raw = nullptr;
        const hq_status s =
            hq_protocol_run(proto_name.c_str(), proto_n,
                            parse_convention(proto_opt.convention), &*params,
                            proto_td, &raw);
        if (s != HQ_OK)
            return report_error(s);
        TracePtr trace(raw);
        std::string stem = proto_name;
        if (proto_n > 0)
            stem += "_n" + std::to_string(proto_n);
        stem += "_" + proto_opt.convention;
        return emit_trace(trace.get(), stem, proto_opt);
    }

    if (*run) {
        std::string text;
        if (script_path == "-") {
            text = read_all(std::cin);
        } else {
            std::ifstream in(script_path, std::ios::binary);
            if (!in) {
                std::cerr << "error: cannot read " << script_path << "\n";
                return kExitUsage;
            }
            text = read_all(in);
        }
        const auto params = load_params(run_opt);
        if (!params)
            return kExitUsage;
        // The script's own settings win unless a flag was given explicitly.
        run_script_convention = run->count("--convention") == 0;
        const hq_convention conv = run_script_convention
                                       ? HQ_CONVENTION_SCRIPT
                                       : parse_convention(run_opt.convention);
        const hq_params *pp = run->count("--preset") ? &*params : nullptr;
        hq_trace *raw = nullptr;
        const hq_status s = hq_script_run(text.c_str(), conv, pp, &raw);
        if (s == HQ_E_PARSE) {
            std::cerr << hq_last_error();
            return kExitParse;
        }
        if (s != HQ_OK)
            return report_error(s);
        TracePtr trace(raw);
        const std::string stem =
            script_path == "-" ? "stdin" : fs::path(script_path).stem().string();
        return emit_trace(trace.get(), stem, run_opt);
    }

    if (*noise) {
        if (noise_traj < 1) {
            std::cerr << "error: --traj must be at least 1\n";
            return kExitUsage;
        }
        std::vector<double> lambdas;
        try {
            lambdas = parse_list(noise_lambdas);
        } catch (const std::exception &) {
            std::cerr << "error: --lambda expects comma-separated numbers\n";
            return kExitUsage;
        }
        if (lambdas.empty()) {
            std::cerr << "error: --lambda needs at least one value\n";
            return kExitUsage;
        }
        const fs::path dir = resolve_out_dir(noise_out);
        if (!ensure_dir(dir))
            return kExitUsage;
        for (double lambda : lambdas) {
            hq_noise_config cfg;
            hq_noise_config_default(&cfg);
            cfg.lambda_c = lambda;
            cfg.xi = noise_xi;
            for (std::size_t q = 0; q < 4; ++q)
                cfg.deltas[q] = noise_deltas[q];
            cfg.t_max = noise_tmax;
            cfg.points = noise_grid;
            cfg.telegraph = noise_mode == "telegraph" ? 1 : 0;
            cfg.flip_rate = cfg.telegraph ? noise_rate : 0.0;
            cfg.n_traj = cfg.telegraph ? static_cast<std::size_t>(noise_traj) : 1;
            cfg.seed = noise_seed;
            cfg.state = noise_state.c_str();
            hq_series *raw = nullptr;
            const hq_status s = hq_noise_run(&cfg, &raw);
            if (s != HQ_OK)
                return report_error(s);
            SeriesPtr series(raw);
            const std::string stem =
                "noise_" + noise_mode + "_lambda" + format_number(lambda);
            CStr csv{hq_series_csv(series.get())};
            CStr meta{hq_series_metadata_json(series.get())};
            if (!write_file(dir / (stem + ".csv"), csv.str()) ||
                !write_file(dir / (stem + ".json"), meta.str()))
                return kExitRuntime;
            if (!noise_quiet) {
                const std::size_t n = hq_series_length(series.get());
                const double *ew = hq_series_ew(series.get());
                double lo = ew[0], hi = ew[0];
                for (std::size_t i = 1; i < n; ++i) {
                    lo = std::min(lo, ew[i]);
                    hi = std::max(hi, ew[i]);
                }
                std::printf("lambda=%-8s points=%zu EW(0)=%+.6f min=%+.6f "
                            "max=%+.6f -> %s\n",
                            format_number(lambda).c_str(), n, ew[0], lo, hi,
                            (dir / (stem + ".csv")).string().c_str());
            }
        }
        return kExitOk;
    }

    if (*verify) {
        const auto params = load_params(verify_opt);
        if (!params)
            return kExitUsage;
        struct Case {
            const char *name;
            std::size_t n;
        };
        const std::vector<Case> cases = {
            {"tag-chain", 1},      {"tag-chain", 2},  {"tag-chain", 3},
            {"linear-cluster", 0}, {"cluster-2d", 0}, {"ring-graph", 2},
            {"ring-graph", 3}};
        const hq_convention conv = parse_convention(verify_opt.convention);
        bool all = true;
        std::printf("%-16s %3s %8s %12s %12s %12s  %s\n", "protocol", "n",
                    "outcomes", "min F", "min BMF", "max spread", "result");
        for (const auto &c : cases) {
            hq_trace *raw = nullptr;
            const hq_status s =
                hq_protocol_run(c.name, c.n, conv, &*params, -1.0, &raw);
            if (s != HQ_OK) {
                std::printf("%-16s %3zu  error: %s\n", c.name, c.n, hq_last_error());
                all = false;
                continue;
            }
            TracePtr trace(raw);
            double min_f = 1.0, min_b = 1.0, max_spread = 0.0;
            const std::size_t n_out = hq_trace_outcome_count(trace.get());
            std::size_t referenced = 0;
            for (std::size_t i = 0; i < n_out; ++i) {
                hq_outcome_info info{};
                hq_trace_outcome(trace.get(), i, &info);
                if (!info.has_report)
                    continue;
                ++referenced;
                min_f = std::min(min_f, info.fidelity);
                min_b = std::min(min_b, info.branch_magnitude_fidelity);
                max_spread = std::max(max_spread, info.phase_spread);
            }
            const bool ok = hq_trace_passed(trace.get(), kTol) != 0;
            all = all && ok;
            std::printf("%-16s %3zu %4zu/%-3zu %12.9f %12.9f %12.6f  %s\n", c.name,
                        c.n, referenced, n_out, min_f, min_b, max_spread,
                        ok ? "PASS" : "FAIL");
        }
        return all ? kExitOk : kExitFidelity;
    }

    if (*oracle) {
        hq_oracle_config cfg;
        hq_oracle_config_default(&cfg);
        cfg.max_dim = oracle_max_dim;
        if (oracle_seed_set)
            cfg.seed = oracle_seed;
        cfg.inject_fault = oracle_fault ? 1 : 0;
        hq_oracle_report *raw = nullptr;
        const hq_status s = hq_oracle_run(&cfg, &raw);
        if (s != HQ_OK)
            return report_error(s);
        OraclePtr report(raw);
        CStr table{hq_oracle_table(report.get())};
        std::cout << table.str();
        return hq_oracle_all_passed(report.get()) ? kExitOk : kExitFidelity;
    }

    return kExitUsage;
}
