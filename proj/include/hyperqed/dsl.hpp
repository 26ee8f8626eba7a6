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
 * Line-oriented protocol scripts (.qproto): parse, print, execute.
 *
 * See docs/dsl.md for the grammar.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hyperqed/interactions.hpp"
#include "hyperqed/protocols.hpp"

namespace hyperqed::dsl {

enum class DiagnosticCode {
    lex,        ///< E_LEX
    keyword,    ///< E_KEYWORD
    undeclared, ///< E_UNDECLARED
    arity,      ///< E_ARITY
    type,       ///< E_TYPE
    duplicate,  ///< E_DUPLICATE
    order,      ///< E_ORDER
    value,      ///< E_VALUE
};

const char *to_string(DiagnosticCode code);

struct Diagnostic {
    DiagnosticCode code;
    std::size_t line;   ///< 1-based
    std::size_t column; ///< 1-based
    std::string message;

    /// "line:column: E_CODE: message"
    [[nodiscard]] std::string format() const;
};

/// Symbolic or literal interaction time, resolved at execution.
struct TimeExpr {
    enum class Kind { endpoint, pi_lambda, pi_2lambda, pi_omega, pi_2mu, literal };
    Kind kind = Kind::endpoint;
    double value = 0.0; ///< literal only

    [[nodiscard]] std::string text() const;
    bool operator==(const TimeExpr &) const = default;
};

/// Phase written as [-][k]pi[/m] or a numeric literal (radians).
struct PhaseExpr {
    double value = 0.0;
    std::string text = "0";

    bool operator==(const PhaseExpr &o) const { return value == o.value; }
};

enum class DeclKind { cavity, atom, aux };

struct Declaration {
    DeclKind kind = DeclKind::cavity;
    std::string label;
    std::size_t fock = 2;  ///< cavities only
    std::string init;      ///< vac|one|plus, "b,P0", g|e
    std::size_t line = 0;

    bool operator==(const Declaration &o) const {
        return kind == o.kind && label == o.label && fock == o.fock &&
               init == o.init;
    }
};

enum class Op { bragg, pulse, jc, dispersive, ramsey, detect, remove };

const char *to_string(Op op);

struct Step {
    Op op = Op::ramsey;
    std::vector<std::string> labels;
    std::optional<TimeExpr> time;
    std::string selector = "P-2";          ///< pulse only
    std::optional<PhaseExpr> phi;          ///< pulse only
    std::optional<PhaseExpr> paper_phi;    ///< pulse only; paper convention
    std::size_t line = 0;

    bool operator==(const Step &o) const {
        return op == o.op && labels == o.labels && time == o.time &&
               selector == o.selector && phi == o.phi &&
               paper_phi == o.paper_phi;
    }
};

struct Setting {
    std::string key;
    std::string value;
    std::size_t line = 0;

    bool operator==(const Setting &o) const {
        return key == o.key && value == o.value;
    }
};

struct ProtocolScript {
    std::vector<Setting> settings;
    std::vector<Declaration> declarations;
    std::vector<Step> steps;

    /// Structural equality; source line numbers are ignored.
    bool operator==(const ProtocolScript &) const = default;
};

struct ParseResult {
    std::optional<ProtocolScript> script;
    std::vector<Diagnostic> diagnostics;

    [[nodiscard]] bool ok() const { return script.has_value(); }
};

ParseResult parse(const std::string &text);

/// Canonical text: settings, then declarations, then steps.
std::string print(const ProtocolScript &script);

struct ExecuteOptions {
    /// Overrides `set convention=`; default paper.
    std::optional<PhaseConvention> convention;
    /// Base parameters; `set` statements override individual fields.
    PhysicalParams params = PhysicalParams::natural();
    std::size_t snapshot_cap = kDefaultSnapshotCap;
};

/// Runtime failure inside a primitive, tagged with the script line.
class ScriptError : public Error {
  public:
    ScriptError(ErrorCode code, std::size_t line, const std::string &message)
        : Error(code, "line " + std::to_string(line) + ": " + message),
          line_(line) {}
    [[nodiscard]] std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

ProtocolTrace execute(const ProtocolScript &script,
                      const ExecuteOptions &options = {});

/// Parameters after applying the script's `set` statements.
PhysicalParams resolve_params(const ProtocolScript &script,
                              const PhysicalParams &base);

} // namespace hyperqed::dsl
