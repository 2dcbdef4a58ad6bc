// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 pulsim developers

#pragma once

#include <cctype>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pulsim/circuit.hpp"
#include "pulsim/errors.hpp"

namespace pulsim::qasm {

/// Location of a token in the source text (1-based line/column).
struct SourceSpan {
    int line = 1;
    int column = 1;
    std::size_t offset = 0;
};

namespace detail {

enum class Tok { Ident, Number, String, Arrow, LBracket, RBracket, LParen, RParen,
                 Comma, Semi, Star, Slash, Plus, Minus, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double value = 0.0;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_ws_and_comments();
        Token t;
        t.span = {line_, col_, pos_};
        if (pos_ >= src_.size()) return t;
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                advance();
            t.kind = Tok::Ident;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E' ||
                                          ((src_[pos_] == '+' || src_[pos_] == '-') && pos_ > start &&
                                           (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E'))))
                advance();
            t.kind = Tok::Number;
            t.text = std::string(src_.substr(start, pos_ - start));
            try {
                t.value = std::stod(t.text);
            } catch (...) {
                throw ParseError("malformed number '" + t.text + "'", t.span.line, t.span.column);
            }
            return t;
        }
        if (c == '"') {
            advance();
            std::size_t start = pos_;
            while (pos_ < src_.size() && src_[pos_] != '"') advance();
            if (pos_ >= src_.size()) throw ParseError("unterminated string", t.span.line, t.span.column);
            t.kind = Tok::String;
            t.text = std::string(src_.substr(start, pos_ - start));
            advance();
            return t;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            advance(); advance();
            t.kind = Tok::Arrow;
            return t;
        }
        advance();
        switch (c) {
            case '[': t.kind = Tok::LBracket; return t;
            case ']': t.kind = Tok::RBracket; return t;
            case '(': t.kind = Tok::LParen; return t;
            case ')': t.kind = Tok::RParen; return t;
            case ',': t.kind = Tok::Comma; return t;
            case ';': t.kind = Tok::Semi; return t;
            case '*': t.kind = Tok::Star; return t;
            case '/': t.kind = Tok::Slash; return t;
            case '+': t.kind = Tok::Plus; return t;
            case '-': t.kind = Tok::Minus; return t;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", t.span.line, t.span.column);
        }
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct QasmGateInfo {
    GateKind kind;
    int params;
};

inline std::optional<QasmGateInfo> lookup_gate(const std::string& name) {
    static const std::map<std::string, QasmGateInfo> table = {
        {"id", {GateKind::I, 0}},   {"x", {GateKind::X, 0}},    {"y", {GateKind::Y, 0}},
        {"z", {GateKind::Z, 0}},    {"h", {GateKind::H, 0}},    {"s", {GateKind::S, 0}},
        {"t", {GateKind::T, 0}},    {"rx", {GateKind::RX, 1}},  {"ry", {GateKind::RY, 1}},
        {"rz", {GateKind::RZ, 1}},  {"u3", {GateKind::U3, 3}},  {"cx", {GateKind::CNOT, 0}},
        {"cz", {GateKind::CZ, 0}},  {"swap", {GateKind::SWAP, 0}},
        {"cu1", {GateKind::CP, 1}}, {"cp", {GateKind::CP, 1}},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { consume(); }

    Circuit parse() {
        expect_ident("OPENQASM");
        Token ver = expect(Tok::Number, "version number");
        if (ver.text != "2.0" && ver.value != 2.0)
            throw ParseError("unsupported OPENQASM version '" + ver.text + "'", ver.span.line, ver.span.column);
        expect(Tok::Semi, "';'");
        while (cur_.kind != Tok::End) statement();
        Circuit c(total_qubits_, total_clbits_);
        c.gates = std::move(gates_);
        c.validate();
        return c;
    }

private:
    struct Reg { int offset; int size; };

    void statement() {
        if (cur_.kind != Tok::Ident)
            throw ParseError("expected statement", cur_.span.line, cur_.span.column);
        const Token head = cur_;
        consume();
        if (head.text == "include") {
            expect(Tok::String, "include path");
            expect(Tok::Semi, "';'");
        } else if (head.text == "qreg" || head.text == "creg") {
            const Token name = expect(Tok::Ident, "register name");
            expect(Tok::LBracket, "'['");
            const Token size = expect(Tok::Number, "register size");
            expect(Tok::RBracket, "']'");
            expect(Tok::Semi, "';'");
            const int sz = static_cast<int>(size.value);
            if (sz <= 0 || size.value != sz)
                throw ParseError("register size must be a positive integer", size.span.line, size.span.column);
            auto& regs = head.text == "qreg" ? qregs_ : cregs_;
            auto& total = head.text == "qreg" ? total_qubits_ : total_clbits_;
            if (regs.count(name.text))
                throw ParseError("register '" + name.text + "' redeclared", name.span.line, name.span.column);
            regs[name.text] = {total, sz};
            total += sz;
        } else if (head.text == "barrier") {
            while (cur_.kind != Tok::Semi && cur_.kind != Tok::End) consume();
            expect(Tok::Semi, "';'");
        } else if (head.text == "measure") {
            parse_measure();
        } else {
            parse_gate(head);
        }
    }

    void parse_measure() {
        auto [qreg, qidx] = parse_argument(qregs_, "quantum");
        expect(Tok::Arrow, "'->'");
        auto [creg, cidx] = parse_argument(cregs_, "classical");
        expect(Tok::Semi, "';'");
        if (qidx && cidx) {
            gates_.push_back(Gate::measure(qreg.offset + *qidx, creg.offset + *cidx));
        } else if (!qidx && !cidx) {
            if (qreg.size != creg.size)
                throw ParseError("measure: register sizes differ", cur_.span.line, cur_.span.column);
            for (int i = 0; i < qreg.size; ++i)
                gates_.push_back(Gate::measure(qreg.offset + i, creg.offset + i));
        } else {
            throw ParseError("measure: mixed indexed/register operands", cur_.span.line, cur_.span.column);
        }
    }

    void parse_gate(const Token& head) {
        auto info = lookup_gate(head.text);
        if (!info)
            throw ParseError("unsupported gate '" + head.text + "'", head.span.line, head.span.column);
        std::vector<double> params;
        if (cur_.kind == Tok::LParen) {
            consume();
            while (true) {
                params.push_back(parse_angle());
                if (cur_.kind == Tok::Comma) {
                    consume();
                    continue;
                }
                break;
            }
            expect(Tok::RParen, "')'");
        }
        if (static_cast<int>(params.size()) != info->params)
            throw ParseError("gate '" + head.text + "' expects " + std::to_string(info->params) +
                                 " parameter(s)",
                             head.span.line, head.span.column);
        std::vector<std::pair<Reg, std::optional<int>>> args;
        while (true) {
            args.push_back(parse_argument(qregs_, "quantum"));
            if (cur_.kind == Tok::Comma) {
                consume();
                continue;
            }
            break;
        }
        expect(Tok::Semi, "';'");
        const int arity = gate_arity(info->kind);
        if (static_cast<int>(args.size()) != arity)
            throw ParseError("gate '" + head.text + "' expects " + std::to_string(arity) + " operand(s)",
                             head.span.line, head.span.column);
        if (arity == 1 && !args[0].second) {
            // whole-register broadcast, e.g. "h q;"
            for (int i = 0; i < args[0].first.size; ++i)
                gates_.push_back(Gate(info->kind, {args[0].first.offset + i}, params));
            return;
        }
        std::vector<int> qs;
        for (auto& [reg, idx] : args) {
            if (!idx)
                throw ParseError("gate '" + head.text + "': register operand not supported here",
                                 head.span.line, head.span.column);
            qs.push_back(reg.offset + *idx);
        }
        gates_.push_back(Gate(info->kind, qs, params));
    }

    std::pair<Reg, std::optional<int>> parse_argument(const std::map<std::string, Reg>& regs,
                                                      const char* what) {
        const Token name = expect(Tok::Ident, "register name");
        auto it = regs.find(name.text);
        if (it == regs.end())
            throw ParseError(std::string("unknown ") + what + " register '" + name.text + "'",
                             name.span.line, name.span.column);
        if (cur_.kind != Tok::LBracket) return {it->second, std::nullopt};
        consume();
        const Token idx = expect(Tok::Number, "index");
        expect(Tok::RBracket, "']'");
        const int i = static_cast<int>(idx.value);
        if (i < 0 || idx.value != i || i >= it->second.size)
            throw ParseError("index out of range for register '" + name.text + "'", idx.span.line,
                             idx.span.column);
        return {it->second, i};
    }

    // Angle grammar: [+-] (number ['*' pi] | pi) ['/' number]. Covers pi,
    // rationals of pi, and plain decimal literals.
    double parse_angle() {
        double sign = 1.0;
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            if (cur_.kind == Tok::Minus) sign = -sign;
            consume();
        }
        double value;
        if (cur_.kind == Tok::Number) {
            value = cur_.value;
            consume();
            if (cur_.kind == Tok::Star) {
                consume();
                expect_ident("pi");
                value *= kPi;
            }
        } else if (cur_.kind == Tok::Ident && cur_.text == "pi") {
            consume();
            value = kPi;
        } else {
            throw ParseError("expected angle expression", cur_.span.line, cur_.span.column);
        }
        if (cur_.kind == Tok::Slash) {
            consume();
            const Token den = expect(Tok::Number, "divisor");
            if (den.value == 0.0) throw ParseError("division by zero", den.span.line, den.span.column);
            value /= den.value;
        }
        return sign * value;
    }

    Token expect(Tok kind, const char* what) {
        if (cur_.kind != kind)
            throw ParseError(std::string("expected ") + what, cur_.span.line, cur_.span.column);
        Token t = cur_;
        consume();
        return t;
    }

    void expect_ident(const std::string& text) {
        if (cur_.kind != Tok::Ident || cur_.text != text)
            throw ParseError("expected '" + text + "'", cur_.span.line, cur_.span.column);
        consume();
    }

    void consume() { cur_ = lexer_.next(); }

    Lexer lexer_;
    Token cur_;
    std::map<std::string, Reg> qregs_;
    std::map<std::string, Reg> cregs_;
    int total_qubits_ = 0;
    int total_clbits_ = 0;
    std::vector<Gate> gates_;
};

inline std::string format_angle(double a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", a);
    return buf;
}

} // namespace detail

/// Parse the supported OpenQASM 2.0 subset into a Circuit. Multiple qregs
/// flatten in declaration order into one index space.
inline Circuit parse_qasm(std::string_view source) {
    detail::Parser p(source);
    return p.parse();
}

/// Emit a Circuit as OpenQASM 2.0 text; parse_qasm(emit_qasm(c)) == c.
/// Native-only kinds (GPI2) are not representable and raise ValidationError.
inline std::string emit_qasm(const Circuit& c) {
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(c.n_qubits) + "];\n";
    if (c.n_clbits > 0) out += "creg c[" + std::to_string(c.n_clbits) + "];\n";
    for (const auto& g : c.gates) {
        std::string name;
        switch (g.kind) {
            case GateKind::I: name = "id"; break;
            case GateKind::X: name = "x"; break;
            case GateKind::Y: name = "y"; break;
            case GateKind::Z: name = "z"; break;
            case GateKind::H: name = "h"; break;
            case GateKind::S: name = "s"; break;
            case GateKind::T: name = "t"; break;
            case GateKind::RX: name = "rx"; break;
            case GateKind::RY: name = "ry"; break;
            case GateKind::RZ: name = "rz"; break;
            case GateKind::U3: name = "u3"; break;
            case GateKind::CNOT: name = "cx"; break;
            case GateKind::CZ: name = "cz"; break;
            case GateKind::CP: name = "cu1"; break;
            case GateKind::SWAP: name = "swap"; break;
            case GateKind::GPI2:
                throw ValidationError(
                    "GPI2 is not an OpenQASM 2.0 gate; export native circuits as JSON instead");
            case GateKind::M: {
                out += "measure q[" + std::to_string(g.qubits[0]) + "] -> c[" +
                       std::to_string(*g.clbit) + "];\n";
                continue;
            }
        }
        out += name;
        if (!g.params.empty()) {
            out += "(";
            for (std::size_t i = 0; i < g.params.size(); ++i) {
                if (i) out += ",";
                out += detail::format_angle(g.params[i]);
            }
            out += ")";
        }
        out += " ";
        for (std::size_t i = 0; i < g.qubits.size(); ++i) {
            if (i) out += ",";
            out += "q[" + std::to_string(g.qubits[i]) + "]";
        }
        out += ";\n";
    }
    return out;
}

} // namespace pulsim::qasm
