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

#include "ccdmzi/circuit.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <system_error>

#include "ccdmzi/elements.hpp"
#include "ccdmzi/errors.hpp"

namespace ccdmzi::circuit {
namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
    enum class Kind { Word, Number, LParen, RParen, LBrace, RBrace, Star, End };
    Kind kind = Kind::End;
    std::string_view text;
    double value = 0.0;
    bool integral = false;  // digits only, no sign/point/exponent
    int line = 1;
    int column = 1;
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_word_char(char c) { return is_word_start(c) || is_digit(c); }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> tokenize() {
        std::vector<Token> out;
        for (;;) {
            skip_blank();
            Token t;
            t.line = line_;
            t.column = column_;
            if (pos_ >= text_.size()) {
                t.kind = Token::Kind::End;
                out.push_back(t);
                return out;
            }
            const char c = text_[pos_];
            if (is_word_start(c)) {
                const std::size_t begin = pos_;
                while (pos_ < text_.size() && is_word_char(text_[pos_])) {
                    advance();
                }
                t.kind = Token::Kind::Word;
                t.text = text_.substr(begin, pos_ - begin);
            } else if (starts_number()) {
                lex_number(t);
            } else {
                switch (c) {
                    case '(':
                        t.kind = Token::Kind::LParen;
                        break;
                    case ')':
                        t.kind = Token::Kind::RParen;
                        break;
                    case '{':
                        t.kind = Token::Kind::LBrace;
                        break;
                    case '}':
                        t.kind = Token::Kind::RBrace;
                        break;
                    case '*':
                        t.kind = Token::Kind::Star;
                        break;
                    default:
                        throw ParseError(line_, column_, "unexpected character '" + std::string(1, c) + "'");
                }
                t.text = text_.substr(pos_, 1);
                advance();
            }
            out.push_back(t);
        }
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

    void skip_blank() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    bool starts_number() const {
        std::size_t i = 0;
        if (peek() == '+' || peek() == '-') {
            i = 1;
        }
        return is_digit(peek(i)) || (peek(i) == '.' && is_digit(peek(i + 1)));
    }

    void lex_number(Token& t) {
        const std::size_t begin = pos_;
        bool integral = true;
        if (peek() == '+' || peek() == '-') {
            integral = false;
            advance();
        }
        while (is_digit(peek())) {
            advance();
        }
        if (peek() == '.') {
            integral = false;
            advance();
            while (is_digit(peek())) {
                advance();
            }
        }
        bool malformed = false;
        if (peek() == 'e' || peek() == 'E') {
            integral = false;
            const std::size_t sign = (peek(1) == '+' || peek(1) == '-') ? 1 : 0;
            if (is_digit(peek(1 + sign))) {
                advance();
                if (sign) {
                    advance();
                }
                while (is_digit(peek())) {
                    advance();
                }
            } else {
                malformed = true;
            }
        }
        if (malformed || peek() == '.' || is_digit(peek())) {
            throw ParseError(t.line, t.column, "malformed number");
        }
        t.kind = Token::Kind::Number;
        t.text = text_.substr(begin, pos_ - begin);
        t.integral = integral;

        std::string_view digits = t.text;
        if (!digits.empty() && digits.front() == '+') {
            digits.remove_prefix(1);
        }
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.value);
        if (ec == std::errc::result_out_of_range || (ec == std::errc() && !std::isfinite(t.value))) {
            throw ParseError(t.line, t.column, "number out of range: " + std::string(t.text));
        }
        if (ec != std::errc() || ptr != digits.data() + digits.size()) {
            throw ParseError(t.line, t.column, "malformed number: " + std::string(t.text));
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

std::string describe(const Token& t) {
    switch (t.kind) {
        case Token::Kind::End:
            return "end of input";
        case Token::Kind::Number:
            return "number '" + std::string(t.text) + "'";
        default:
            return "'" + std::string(t.text) + "'";
    }
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    CircuitAst parse_circuit() {
        CircuitAst ast;
        while (current().kind != Token::Kind::End) {
            ast.statements.push_back(parse_stmt());
        }
        return ast;
    }

private:
    const Token& current() const { return tokens_[pos_]; }
    const Token& take() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const Token& t, const std::string& what) const {
        throw ParseError(t.line, t.column, what + ", found " + describe(t));
    }

    void expect(Token::Kind kind, const char* what) {
        if (current().kind != kind) {
            fail(current(), std::string("expected ") + what);
        }
        take();
    }

    Stmt parse_stmt() {
        const Token& t = current();
        if (t.kind != Token::Kind::Word) {
            fail(t, "expected a statement");
        }
        const std::string_view w = t.text;
        if (w == "bs") {
            take();
            return {Bs{}};
        }
        if (w == "d") {
            take();
            return {D{}};
        }
        if (w == "dprime") {
            take();
            return {DPrime{}};
        }
        if (w == "ccd") {
            take();
            return {Ccd{}};
        }
        if (w == "ps") {
            take();
            Ps ps;
            const Token& arm = current();
            if (arm.kind == Token::Kind::Word && arm.text == "upper") {
                ps.arm = Arm::Upper;
            } else if (arm.kind == Token::Kind::Word && arm.text == "lower") {
                ps.arm = Arm::Lower;
            } else {
                fail(arm, "expected arm 'upper' or 'lower'");
            }
            take();
            expect(Token::Kind::LParen, "'('");
            ps.phase = parse_phase();
            expect(Token::Kind::RParen, "')'");
            return {ps};
        }
        if (w == "loss") {
            take();
            expect(Token::Kind::LParen, "'('");
            const Token& num = current();
            if (num.kind != Token::Kind::Number) {
                fail(num, "expected a transmission value");
            }
            if (!(num.value > 0.0 && num.value <= 1.0)) {
                throw ParseError(num.line, num.column, "loss transmission must lie in (0, 1]");
            }
            take();
            expect(Token::Kind::RParen, "')'");
            return {Loss{num.value}};
        }
        if (w == "repeat") {
            take();
            const Token& num = current();
            if (num.kind != Token::Kind::Number || !num.integral) {
                fail(num, "expected a positive integer repeat count");
            }
            std::uint64_t count = 0;
            const auto [ptr, ec] = std::from_chars(num.text.data(), num.text.data() + num.text.size(), count);
            if (ec == std::errc::result_out_of_range) {
                throw ParseError(num.line, num.column, "repeat count out of range");
            }
            if (ec != std::errc() || ptr != num.text.data() + num.text.size() || count < 1) {
                throw ParseError(num.line, num.column, "repeat count must be >= 1");
            }
            take();
            expect(Token::Kind::LBrace, "'{'");
            Repeat r;
            r.count = count;
            while (current().kind != Token::Kind::RBrace) {
                if (current().kind == Token::Kind::End) {
                    fail(current(), "expected '}'");
                }
                r.body.push_back(parse_stmt());
            }
            take();
            return {std::move(r)};
        }
        fail(t, "unknown statement");
    }

    PhaseExpr parse_phase() {
        const Token& t = current();
        if (t.kind == Token::Kind::Word && t.text == "phi") {
            take();
            return SweepVar{1.0};
        }
        if (t.kind != Token::Kind::Number) {
            fail(t, "expected 'phi' or a number");
        }
        const double value = take().value;
        if (current().kind == Token::Kind::Star) {
            take();
            if (current().kind != Token::Kind::Word || current().text != "phi") {
                fail(current(), "expected 'phi' after '*'");
            }
            take();
            return SweepVar{value};
        }
        if (current().kind == Token::Kind::Word && current().text == "pi") {
            take();
            return LiteralPi{value};
        }
        return Literal{value};
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

std::string format_number(double v) {
    if (!std::isfinite(v)) {
        throw ValidationError("circuit: non-finite number cannot be printed");
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_phase(const PhaseExpr& p) {
    if (const auto* s = std::get_if<SweepVar>(&p)) {
        return s->scale == 1.0 ? "phi" : format_number(s->scale) + "*phi";
    }
    if (const auto* l = std::get_if<Literal>(&p)) {
        return format_number(l->radians);
    }
    return format_number(std::get<LiteralPi>(p).multiplier) + " pi";
}

void print_block(const std::vector<Stmt>& stmts, int depth, std::string& out) {
    const std::string indent(static_cast<std::size_t>(2 * depth), ' ');
    for (const Stmt& s : stmts) {
        if (!out.empty()) {
            out += '\n';
        }
        out += indent;
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Bs>) {
                    out += "bs";
                } else if constexpr (std::is_same_v<T, Ps>) {
                    out += node.arm == Arm::Upper ? "ps upper(" : "ps lower(";
                    out += format_phase(node.phase);
                    out += ')';
                } else if constexpr (std::is_same_v<T, Loss>) {
                    out += "loss(" + format_number(node.t) + ")";
                } else if constexpr (std::is_same_v<T, D>) {
                    out += "d";
                } else if constexpr (std::is_same_v<T, DPrime>) {
                    out += "dprime";
                } else if constexpr (std::is_same_v<T, Ccd>) {
                    out += "ccd";
                } else {
                    out += "repeat " + std::to_string(node.count) + " {";
                    print_block(node.body, depth + 1, out);
                    out += '\n';
                    out += indent;
                    out += '}';
                }
            },
            s.node);
    }
}

// ---------------------------------------------------------------------------
// Expansion

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

std::uint64_t count_elements(const std::vector<Stmt>& stmts) {
    std::uint64_t total = 0;
    for (const Stmt& s : stmts) {
        std::uint64_t n = 0;
        if (std::holds_alternative<D>(s.node) || std::holds_alternative<DPrime>(s.node)) {
            n = 3;
        } else if (std::holds_alternative<Ccd>(s.node)) {
            n = 6;
        } else if (const auto* r = std::get_if<Repeat>(&s.node)) {
            n = saturating_mul(r->count, count_elements(r->body));
        } else {
            n = 1;
        }
        total = (n > std::numeric_limits<std::uint64_t>::max() - total) ? std::numeric_limits<std::uint64_t>::max()
                                                                          : total + n;
    }
    return total;
}

PhaseSetting to_setting(const PhaseExpr& p) {
    if (const auto* s = std::get_if<SweepVar>(&p)) {
        return {s->scale, 0.0};
    }
    if (const auto* l = std::get_if<Literal>(&p)) {
        return {0.0, l->radians};
    }
    return {0.0, std::get<LiteralPi>(p).multiplier * kPi};
}

void emit(const std::vector<Stmt>& stmts, Program& out) {
    const TransferMatrix bs = beam_splitter();
    const PhaseSetting sweep{1.0, 0.0};
    for (const Stmt& s : stmts) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Bs>) {
                    out.push(Element::fixed(bs));
                } else if constexpr (std::is_same_v<T, Ps>) {
                    const PhaseSetting setting = to_setting(node.phase);
                    out.push(node.arm == Arm::Upper ? Element::phase_upper(setting) : Element::phase_lower(setting));
                } else if constexpr (std::is_same_v<T, Loss>) {
                    if (!(node.t > 0.0 && node.t <= 1.0)) {
                        throw ValidationError("circuit: loss transmission must lie in (0, 1]");
                    }
                    out.push(Element::scale(node.t));
                } else if constexpr (std::is_same_v<T, D> || std::is_same_v<T, Ccd>) {
                    out.push(Element::fixed(bs));
                    out.push(Element::phase_lower(sweep));
                    out.push(Element::fixed(bs));
                    if constexpr (std::is_same_v<T, Ccd>) {
                        out.push(Element::fixed(bs));
                        out.push(Element::phase_upper(sweep));
                        out.push(Element::fixed(bs));
                    }
                } else if constexpr (std::is_same_v<T, DPrime>) {
                    out.push(Element::fixed(bs));
                    out.push(Element::phase_upper(sweep));
                    out.push(Element::fixed(bs));
                } else {
                    if (node.count < 1) {
                        throw ValidationError("circuit: repeat count must be >= 1");
                    }
                    Program body;
                    emit(node.body, body);
                    for (std::uint64_t i = 0; i < node.count; ++i) {
                        out.append(body);
                    }
                }
            },
            s.node);
    }
}

}  // namespace

CircuitAst parse(std::string_view text) { return Parser(Lexer(text).tokenize()).parse_circuit(); }

std::string pretty_print(const CircuitAst& ast) {
    std::string out;
    print_block(ast.statements, 0, out);
    return out;
}

std::uint64_t expanded_size(const CircuitAst& ast) {
    const std::uint64_t n = count_elements(ast.statements);
    if (n > kMaxExpandedElements) {
        throw ValidationError("circuit: expands to more than " + std::to_string(kMaxExpandedElements) + " elements");
    }
    return n;
}

Program to_program(const CircuitAst& ast) {
    expanded_size(ast);
    Program p;
    emit(ast.statements, p);
    return p;
}

TransferMatrix compile(const CircuitAst& ast, double phi) { return to_program(ast).evaluate(phi); }

}  // namespace ccdmzi::circuit
