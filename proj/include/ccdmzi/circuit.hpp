// Copyright 2026 The ccdmzi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Interferometer circuit description (.icd) language.
//
//   circuit = { stmt } ;
//   stmt    = "bs" | "ps" arm "(" phase ")" | "loss" "(" float ")"
//           | "d" | "dprime" | "ccd" | "repeat" int "{" { stmt } "}" ;
//   arm     = "upper" | "lower" ;
//   phase   = [ float "*" ] "phi" | float [ "pi" ] ;
//
// Keywords are lowercase and case-sensitive; '#' comments run to end of line.
// Statements apply to the field in listed order.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ccdmzi/linalg.hpp"
#include "ccdmzi/program.hpp"

namespace ccdmzi::circuit {

enum class Arm : std::uint8_t { Upper, Lower };

struct SweepVar {
    double scale = 1.0;  // scale * phi
    friend bool operator==(const SweepVar&, const SweepVar&) = default;
};
struct Literal {
    double radians = 0.0;
    friend bool operator==(const Literal&, const Literal&) = default;
};
struct LiteralPi {
    double multiplier = 0.0;  // multiplier * pi
    friend bool operator==(const LiteralPi&, const LiteralPi&) = default;
};
using PhaseExpr = std::variant<SweepVar, Literal, LiteralPi>;

struct Bs {
    friend bool operator==(const Bs&, const Bs&) = default;
};
struct Ps {
    Arm arm = Arm::Lower;
    PhaseExpr phase;
    friend bool operator==(const Ps&, const Ps&) = default;
};
struct Loss {
    double t = 1.0;
    friend bool operator==(const Loss&, const Loss&) = default;
};
struct D {
    friend bool operator==(const D&, const D&) = default;
};
struct DPrime {
    friend bool operator==(const DPrime&, const DPrime&) = default;
};
struct Ccd {
    friend bool operator==(const Ccd&, const Ccd&) = default;
};

struct Stmt;

struct Repeat {
    std::uint64_t count = 1;
    std::vector<Stmt> body;
    friend bool operator==(const Repeat&, const Repeat&) = default;
};

struct Stmt {
    std::variant<Bs, Ps, Loss, D, DPrime, Ccd, Repeat> node;
    friend bool operator==(const Stmt&, const Stmt&) = default;
};

struct CircuitAst {
    std::vector<Stmt> statements;
    friend bool operator==(const CircuitAst&, const CircuitAst&) = default;
};

/// Upper bound on elements after macro and repeat expansion.
inline constexpr std::uint64_t kMaxExpandedElements = 10'000'000;

/// Throws ParseError with the 1-based location of the first bad token.
CircuitAst parse(std::string_view text);

/// Canonical text: one statement per line, repeat bodies indented by two spaces.
std::string pretty_print(const CircuitAst& ast);

/// Element count after expansion; throws ValidationError above kMaxExpandedElements.
std::uint64_t expanded_size(const CircuitAst& ast);

/// Flattens macros and repeats into an element program.
Program to_program(const CircuitAst& ast);

/// Transfer matrix of the whole circuit at sweep value phi.
TransferMatrix compile(const CircuitAst& ast, double phi);

}  // namespace ccdmzi::circuit
