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

#include "hyperqed/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

namespace hyperqed::dsl {

namespace {

constexpr double kPi = std::numbers::pi;

struct Token {
    std::string text;
    std::size_t column;
};

bool allowed_char(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.' || c == ',' || c == '=' ||
           c == '/' || c == '+' || c == '-' || c == '*';
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::optional<double> parse_number(const std::string &s) {
    double v = 0.0;
    const char *first = s.data();
    const char *last = s.data() + s.size();
    if (!s.empty() && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::optional<std::size_t> parse_count(const std::string &s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

bool is_identifier(const std::string &s) {
    static const std::regex re("[A-Za-z][A-Za-z0-9_]*");
    return std::regex_match(s, re);
}

std::optional<TimeExpr> parse_time(const std::string &s) {
    using K = TimeExpr::Kind;
    static const std::map<std::string, K> symbolic{
        {"endpoint", K::endpoint},     {"pi/lambda", K::pi_lambda},
        {"pi/2lambda", K::pi_2lambda}, {"pi/omega", K::pi_omega},
        {"pi/2mu", K::pi_2mu}};
    if (auto it = symbolic.find(s); it != symbolic.end())
        return TimeExpr{it->second, 0.0};
    auto v = parse_number(s);
    if (!v || *v < 0.0)
        return std::nullopt;
    return TimeExpr{K::literal, *v};
}

std::optional<PhaseExpr> parse_phase(const std::string &s) {
    static const std::regex re("(-)?([0-9]+)?pi(/([0-9]+))?");
    std::smatch m;
    if (std::regex_match(s, m, re)) {
        const double k = m[2].matched ? std::stod(m[2].str()) : 1.0;
        const double d = m[4].matched ? std::stod(m[4].str()) : 1.0;
        if (d == 0.0)
            return std::nullopt;
        double v = k * kPi / d;
        if (m[1].matched)
            v = -v;
        return PhaseExpr{v, s};
    }
    auto v = parse_number(s);
    if (!v)
        return std::nullopt;
    return PhaseExpr{*v, format_double(*v)};
}

std::optional<DeclKind> decl_kind(const std::string &kw) {
    if (kw == "cavity")
        return DeclKind::cavity;
    if (kw == "atom")
        return DeclKind::atom;
    if (kw == "aux")
        return DeclKind::aux;
    return std::nullopt;
}

std::optional<Op> op_kind(const std::string &kw) {
    static const std::map<std::string, Op> table{
        {"bragg", Op::bragg},   {"pulse", Op::pulse},
        {"jc", Op::jc},         {"dispersive", Op::dispersive},
        {"ramsey", Op::ramsey}, {"detect", Op::detect},
        {"remove", Op::remove}};
    auto it = table.find(kw);
    if (it == table.end())
        return std::nullopt;
    return it->second;
}

const char *decl_keyword(DeclKind k) {
    switch (k) {
    case DeclKind::cavity:
        return "cavity";
    case DeclKind::atom:
        return "atom";
    case DeclKind::aux:
        return "aux";
    }
    return "?";
}

class Parser {
  public:
    ParseResult run(const std::string &text) {
        std::istringstream in(text);
        std::string raw;
        std::size_t line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            line_ = line_no;
            if (!raw.empty() && raw.back() == '\r')
                raw.pop_back();
            statement(raw);
        }
        ParseResult r;
        r.diagnostics = std::move(diags_);
        if (r.diagnostics.empty())
            r.script = std::move(script_);
        return r;
    }

  private:
    void error(DiagnosticCode code, std::size_t column, std::string msg) {
        diags_.push_back({code, line_, column, std::move(msg)});
    }

    bool tokenize(const std::string &raw, std::vector<Token> &tokens) {
        std::size_t i = 0;
        while (i < raw.size()) {
            const unsigned char c = static_cast<unsigned char>(raw[i]);
            if (c == '#')
                break;
            if (c == ' ' || c == '\t') {
                ++i;
                continue;
            }
            const std::size_t start = i;
            while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' &&
                   raw[i] != '#') {
                if (!allowed_char(static_cast<unsigned char>(raw[i]))) {
                    const unsigned char bad = static_cast<unsigned char>(raw[i]);
                    char hex[8];
                    std::snprintf(hex, sizeof hex, "0x%02X", bad);
                    error(DiagnosticCode::lex, i + 1,
                          std::string("unexpected character ") +
                              (bad < 0x80 && std::isprint(bad)
                                   ? "'" + std::string(1, raw[i]) + "'"
                                   : std::string(hex)));
                    return false;
                }
                ++i;
            }
            tokens.push_back({raw.substr(start, i - start), start + 1});
        }
        return true;
    }

    void statement(const std::string &raw) {
        std::vector<Token> tokens;
        if (!tokenize(raw, tokens) || tokens.empty())
            return;
        const Token &kw = tokens.front();
        std::vector<Token> positional;
        std::vector<std::pair<Token, std::string>> named;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            const auto eq = tokens[i].text.find('=');
            if (eq == std::string::npos) {
                positional.push_back(tokens[i]);
            } else {
                Token key{tokens[i].text.substr(0, eq), tokens[i].column};
                named.emplace_back(key, tokens[i].text.substr(eq + 1));
            }
        }
        if (kw.text == "set")
            return set_statement(kw, positional, named);
        if (auto k = decl_kind(kw.text))
            return declaration(*k, kw, positional, named);
        if (auto op = op_kind(kw.text))
            return step(*op, kw, positional, named);
        error(DiagnosticCode::keyword, kw.column,
              "unknown keyword '" + kw.text + "'");
    }

    void set_statement(const Token &kw, const std::vector<Token> &positional,
                       const std::vector<std::pair<Token, std::string>> &named) {
        if (!positional.empty()) {
            error(DiagnosticCode::arity, positional.front().column,
                  "set takes key=value pairs only");
            return;
        }
        if (named.empty()) {
            error(DiagnosticCode::arity, kw.column, "set needs key=value");
            return;
        }
        for (const auto &[key, value] : named) {
            if (!check_setting(key, value))
                continue;
            if (!setting_keys_.insert(key.text).second) {
                error(DiagnosticCode::duplicate, key.column,
                      "setting '" + key.text + "' given twice");
                continue;
            }
            script_.settings.push_back({key.text, value, line_});
        }
    }

    bool check_setting(const Token &key, const std::string &value) {
        const std::string &k = key.text;
        auto bad = [&](const std::string &what) {
            error(DiagnosticCode::value, key.column,
                  "invalid value '" + value + "' for " + k + ": " + what);
            return false;
        };
        if (k == "convention") {
            if (value != "paper" && value != "hamiltonian")
                return bad("expected paper or hamiltonian");
            return true;
        }
        if (k == "preset") {
            if (value != "natural" && value != "rb85" && value != "helium")
                return bad("expected natural, rb85 or helium");
            return true;
        }
        if (k == "mu" || k == "delta" || k == "omega_r" || k == "lambda" ||
            k == "omega") {
            auto v = parse_number(value);
            if (!v || !(*v > 0.0))
                return bad("expected a positive number");
            return true;
        }
        if (k == "name") {
            if (value.empty())
                return bad("empty name");
            return true;
        }
        if (k == "reference") {
            try {
                (void)reference_name_from_string(value);
            } catch (const Error &) {
                return bad("unknown reference state");
            }
            return true;
        }
        if (k == "reference_n") {
            auto v = parse_count(value);
            if (!v || *v < 1)
                return bad("expected a positive integer");
            return true;
        }
        if (k == "reference_td") {
            if (!parse_time(value))
                return bad("expected a time");
            return true;
        }
        error(DiagnosticCode::arity, key.column,
              "unknown setting '" + k + "'");
        return false;
    }

    void declaration(DeclKind kind, const Token &kw,
                     const std::vector<Token> &positional,
                     const std::vector<std::pair<Token, std::string>> &named) {
        if (!script_.steps.empty()) {
            error(DiagnosticCode::order, kw.column,
                  "declarations must precede all steps");
            return;
        }
        if (positional.size() != 1) {
            error(DiagnosticCode::arity, kw.column,
                  std::string(decl_keyword(kind)) + " takes exactly one label");
            return;
        }
        const Token &label = positional.front();
        if (!is_identifier(label.text)) {
            error(DiagnosticCode::value, label.column,
                  "invalid label '" + label.text + "'");
            return;
        }
        Declaration d;
        d.kind = kind;
        d.label = label.text;
        d.line = line_;
        d.init = kind == DeclKind::cavity ? "vac"
                 : kind == DeclKind::atom ? "b,P0"
                                          : "g";
        for (const auto &[key, value] : named) {
            if (key.text == "init") {
                d.init = value;
            } else if (key.text == "fock" && kind == DeclKind::cavity) {
                auto v = parse_count(value);
                if (!v || *v < 2) {
                    error(DiagnosticCode::value, key.column,
                          "fock cutoff must be an integer >= 2");
                    return;
                }
                d.fock = *v;
            } else {
                error(DiagnosticCode::arity, key.column,
                      "unknown argument '" + key.text + "' for " +
                          decl_keyword(kind));
                return;
            }
        }
        if (!valid_init(d)) {
            error(DiagnosticCode::value, kw.column,
                  "invalid init '" + d.init + "' for " + decl_keyword(kind));
            return;
        }
        if (!declared_.emplace(d.label, kind).second) {
            error(DiagnosticCode::duplicate, label.column,
                  "label '" + d.label + "' already declared");
            return;
        }
        script_.declarations.push_back(std::move(d));
    }

    static bool valid_init(const Declaration &d) {
        switch (d.kind) {
        case DeclKind::cavity:
            return d.init == "vac" || d.init == "one" || d.init == "plus";
        case DeclKind::atom: {
            const auto comma = d.init.find(',');
            if (comma == std::string::npos)
                return false;
            const std::string lvl = d.init.substr(0, comma);
            const std::string mom = d.init.substr(comma + 1);
            return (lvl == "b" || lvl == "a") && (mom == "P0" || mom == "P-2");
        }
        case DeclKind::aux:
            return d.init == "g" || d.init == "e";
        }
        return false;
    }

    bool expect_kind(const Token &t, std::initializer_list<DeclKind> kinds,
                     const char *role) {
        auto it = declared_.find(t.text);
        if (it == declared_.end()) {
            error(DiagnosticCode::undeclared, t.column,
                  "undeclared label '" + t.text + "'");
            return false;
        }
        for (auto k : kinds)
            if (it->second == k)
                return true;
        error(DiagnosticCode::type, t.column,
              "'" + t.text + "' is " + decl_keyword(it->second) +
                  ", expected " + role);
        return false;
    }

    void step(Op op, const Token &kw, const std::vector<Token> &positional,
              const std::vector<std::pair<Token, std::string>> &named) {
        if (detect_seen_) {
            error(DiagnosticCode::order, kw.column,
                  "no steps may follow detect");
            return;
        }
        Step s;
        s.op = op;
        s.line = line_;

        std::size_t want = 0;
        bool variadic = false;
        bool needs_time = false;
        std::set<std::string> allowed_named;
        switch (op) {
        case Op::bragg:
        case Op::jc:
        case Op::dispersive:
            want = 2;
            needs_time = true;
            allowed_named = {"t"};
            break;
        case Op::pulse:
            want = 1;
            needs_time = true;
            allowed_named = {"t", "sel", "phi", "paper_phi"};
            break;
        case Op::ramsey:
        case Op::remove:
            want = 1;
            break;
        case Op::detect:
            want = 1;
            variadic = true;
            break;
        }
        if (variadic ? positional.empty() : positional.size() != want) {
            error(DiagnosticCode::arity, kw.column,
                  std::string(to_string(op)) + " expects " +
                      (variadic ? "at least one" : std::to_string(want)) +
                      " label" + (want == 1 && !variadic ? "" : "s") +
                      ", got " + std::to_string(positional.size()));
            return;
        }

        bool ok = true;
        for (const auto &[key, value] : named) {
            if (!allowed_named.count(key.text)) {
                error(DiagnosticCode::arity, key.column,
                      "unknown argument '" + key.text + "' for " +
                          to_string(op));
                ok = false;
                continue;
            }
            if (key.text == "t") {
                s.time = parse_time(value);
                if (!s.time) {
                    error(DiagnosticCode::value, key.column,
                          "invalid time '" + value + "'");
                    ok = false;
                }
            } else if (key.text == "sel") {
                if (value != "P0" && value != "P-2") {
                    error(DiagnosticCode::value, key.column,
                          "selector must be P0 or P-2");
                    ok = false;
                }
                s.selector = value;
            } else {
                auto p = parse_phase(value);
                if (!p) {
                    error(DiagnosticCode::value, key.column,
                          "invalid phase '" + value + "'");
                    ok = false;
                }
                (key.text == "phi" ? s.phi : s.paper_phi) = p;
            }
        }
        if (needs_time && !s.time && ok) {
            error(DiagnosticCode::arity, kw.column,
                  std::string(to_string(op)) + " requires t=");
            ok = false;
        }

        switch (op) {
        case Op::bragg:
            ok &= expect_kind(positional[0], {DeclKind::atom}, "atom");
            ok &= expect_kind(positional[1], {DeclKind::cavity}, "cavity");
            break;
        case Op::pulse:
            ok &= expect_kind(positional[0], {DeclKind::atom}, "atom");
            break;
        case Op::jc:
        case Op::dispersive:
            ok &= expect_kind(positional[0], {DeclKind::aux}, "aux");
            ok &= expect_kind(positional[1], {DeclKind::cavity}, "cavity");
            break;
        case Op::ramsey:
            ok &= expect_kind(positional[0], {DeclKind::aux}, "aux");
            break;
        case Op::remove:
            ok &= expect_kind(positional[0], {DeclKind::cavity, DeclKind::aux},
                              "cavity or aux");
            break;
        case Op::detect: {
            std::set<std::string> seen;
            for (const auto &t : positional) {
                ok &= expect_kind(t, {DeclKind::aux}, "aux");
                if (!seen.insert(t.text).second) {
                    error(DiagnosticCode::duplicate, t.column,
                          "'" + t.text + "' detected twice");
                    ok = false;
                }
            }
            break;
        }
        }
        if (!ok)
            return;
        for (const auto &t : positional)
            s.labels.push_back(t.text);
        if (op == Op::detect)
            detect_seen_ = true;
        script_.steps.push_back(std::move(s));
    }

    ProtocolScript script_;
    std::vector<Diagnostic> diags_;
    std::map<std::string, DeclKind> declared_;
    std::set<std::string> setting_keys_;
    std::size_t line_ = 0;
    bool detect_seen_ = false;
};

const Setting *find_setting(const ProtocolScript &script, const std::string &key) {
    for (const auto &s : script.settings)
        if (s.key == key)
            return &s;
    return nullptr;
}

double resolve_time(const TimeExpr &t, Op op, const PhysicalParams &p) {
    using K = TimeExpr::Kind;
    switch (t.kind) {
    case K::endpoint:
        switch (op) {
        case Op::bragg:
            return p.bragg_endpoint();
        case Op::pulse:
            return p.pulse_endpoint();
        case Op::jc:
            return p.jc_endpoint();
        default:
            return p.dispersive_pi();
        }
    case K::pi_lambda:
        return p.dispersive_pi();
    case K::pi_2lambda:
        return p.dispersive_pi() / 2.0;
    case K::pi_omega:
        return p.pulse_endpoint();
    case K::pi_2mu:
        return p.jc_endpoint();
    case K::literal:
        return t.value;
    }
    return 0.0;
}

Vector local_init(const Declaration &d) {
    if (d.kind == DeclKind::cavity) {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(d.fock));
        if (d.init == "vac") {
            v(0) = 1.0;
        } else if (d.init == "one") {
            v(1) = 1.0;
        } else {
            const double r = 1.0 / std::sqrt(2.0);
            v(0) = r;
            v(1) = r;
        }
        return v;
    }
    if (d.kind == DeclKind::aux) {
        Vector v = Vector::Zero(2);
        v(d.init == "g" ? 0 : 1) = 1.0;
        return v;
    }
    const auto comma = d.init.find(',');
    const std::size_t lvl = d.init.substr(0, comma) == "b" ? 0 : 1;
    const std::size_t mom = d.init.substr(comma + 1) == "P0" ? 0 : 1;
    Vector v = Vector::Zero(4);
    v(static_cast<Eigen::Index>(lvl * 2 + mom)) = 1.0;
    return v;
}

} // namespace

const char *to_string(DiagnosticCode code) {
    switch (code) {
    case DiagnosticCode::lex:
        return "E_LEX";
    case DiagnosticCode::keyword:
        return "E_KEYWORD";
    case DiagnosticCode::undeclared:
        return "E_UNDECLARED";
    case DiagnosticCode::arity:
        return "E_ARITY";
    case DiagnosticCode::type:
        return "E_TYPE";
    case DiagnosticCode::duplicate:
        return "E_DUPLICATE";
    case DiagnosticCode::order:
        return "E_ORDER";
    case DiagnosticCode::value:
        return "E_VALUE";
    }
    return "E_UNKNOWN";
}

std::string Diagnostic::format() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " +
           to_string(code) + ": " + message;
}

const char *to_string(Op op) {
    switch (op) {
    case Op::bragg:
        return "bragg";
    case Op::pulse:
        return "pulse";
    case Op::jc:
        return "jc";
    case Op::dispersive:
        return "dispersive";
    case Op::ramsey:
        return "ramsey";
    case Op::detect:
        return "detect";
    case Op::remove:
        return "remove";
    }
    return "?";
}

std::string TimeExpr::text() const {
    switch (kind) {
    case Kind::endpoint:
        return "endpoint";
    case Kind::pi_lambda:
        return "pi/lambda";
    case Kind::pi_2lambda:
        return "pi/2lambda";
    case Kind::pi_omega:
        return "pi/omega";
    case Kind::pi_2mu:
        return "pi/2mu";
    case Kind::literal:
        return format_double(value);
    }
    return "?";
}

ParseResult parse(const std::string &text) { return Parser().run(text); }

std::string print(const ProtocolScript &script) {
    std::ostringstream os;
    for (const auto &s : script.settings)
        os << "set " << s.key << "=" << s.value << "\n";
    for (const auto &d : script.declarations) {
        os << decl_keyword(d.kind) << " " << d.label;
        if (d.kind == DeclKind::cavity)
            os << " fock=" << d.fock;
        os << " init=" << d.init << "\n";
    }
    for (const auto &s : script.steps) {
        os << to_string(s.op);
        for (const auto &l : s.labels)
            os << " " << l;
        if (s.op == Op::pulse)
            os << " sel=" << s.selector;
        if (s.time)
            os << " t=" << s.time->text();
        if (s.phi)
            os << " phi=" << s.phi->text;
        if (s.paper_phi)
            os << " paper_phi=" << s.paper_phi->text;
        os << "\n";
    }
    return os.str();
}

PhysicalParams resolve_params(const ProtocolScript &script,
                              const PhysicalParams &base) {
    PhysicalParams p = base;
    if (const auto *s = find_setting(script, "preset"))
        p = PhysicalParams::preset(s->value);
    auto number = [&](const char *key, double &field) {
        if (const auto *s = find_setting(script, key))
            field = *parse_number(s->value);
    };
    number("mu", p.mu);
    number("delta", p.delta);
    number("omega_r", p.omega_r);
    number("lambda", p.lambda_disp);
    number("omega", p.omega_classical);
    return p;
}

ProtocolTrace execute(const ProtocolScript &script, const ExecuteOptions &options) {
    const PhysicalParams params = resolve_params(script, options.params);
    params.validate();
    PhaseConvention convention = PhaseConvention::paper;
    if (options.convention)
        convention = *options.convention;
    else if (const auto *s = find_setting(script, "convention"))
        convention = phase_convention_from_string(s->value);

    std::vector<Subsystem> subs;
    Vector amps = Vector::Ones(1);
    for (const auto &d : script.declarations) {
        switch (d.kind) {
        case DeclKind::cavity:
            subs.push_back({d.label, SubsystemKind::cavity, d.fock});
            break;
        case DeclKind::atom:
            subs.push_back({d.label, SubsystemKind::internal, 2});
            subs.push_back({d.label + ".p", SubsystemKind::momentum, 2});
            break;
        case DeclKind::aux:
            subs.push_back({d.label, SubsystemKind::auxiliary, 2});
            break;
        }
        const Vector local = local_init(d);
        Vector next(amps.size() * local.size());
        for (Eigen::Index i = 0; i < amps.size(); ++i)
            next.segment(i * local.size(), local.size()) = amps(i) * local;
        amps = std::move(next);
    }

    const auto *name = find_setting(script, "name");
    TraceBuilder tb(name ? name->value : "script", convention, params,
                    StateVector(Layout(std::move(subs)), std::move(amps)),
                    options.snapshot_cap);

    for (const auto &s : script.steps) {
        try {
            switch (s.op) {
            case Op::bragg:
                tb.apply(bragg_gate(tb.layout(), s.labels[1], s.labels[0] + ".p",
                                    resolve_time(*s.time, s.op, params), params),
                         s.line);
                break;
            case Op::pulse: {
                const PhaseExpr *phi =
                    convention == PhaseConvention::paper && s.paper_phi
                        ? &*s.paper_phi
                        : (s.phi ? &*s.phi : nullptr);
                tb.apply(classical_pulse(
                             tb.layout(), s.labels[0], s.labels[0] + ".p",
                             basis_index(SubsystemKind::momentum, 2, s.selector),
                             resolve_time(*s.time, s.op, params),
                             params.omega_classical, phi ? phi->value : 0.0),
                         s.line);
                break;
            }
            case Op::jc:
                tb.apply(jc_swap(tb.layout(), s.labels[1], s.labels[0],
                                 resolve_time(*s.time, s.op, params), params.mu),
                         s.line);
                break;
            case Op::dispersive:
                tb.apply(dispersive_gate(tb.layout(), s.labels[1], s.labels[0],
                                         resolve_time(*s.time, s.op, params),
                                         params.lambda_disp, convention),
                         s.line);
                break;
            case Op::ramsey:
                tb.apply(ramsey_transform(tb.layout(), s.labels[0]), s.line);
                break;
            case Op::remove:
                tb.remove(s.labels[0], s.line);
                break;
            case Op::detect:
                tb.detect(s.labels, s.line);
                break;
            }
        } catch (const ScriptError &) {
            throw;
        } catch (const Error &e) {
            throw ScriptError(e.code(), s.line, e.what());
        }
    }

    ReferenceLookup lookup;
    if (const auto *ref = find_setting(script, "reference")) {
        ReferenceParams rp;
        if (const auto *n = find_setting(script, "reference_n"))
            rp.n = *parse_count(n->value);
        if (const auto *td = find_setting(script, "reference_td"))
            rp.lambda_t = params.lambda_disp *
                          resolve_time(*parse_time(td->value), Op::dispersive,
                                       params);
        lookup = make_reference_lookup(reference_name_from_string(ref->value),
                                       rp, params.lambda_disp);
    }
    return tb.finish(lookup);
}

} // namespace hyperqed::dsl
