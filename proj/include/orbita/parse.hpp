// Text format for maps and points. A map file declares its variables and
// then one component per coordinate:
//
//   vars x,y; f1 = -y; f2 = x + y
//
// Grammar (whitespace insignificant, UTF-8, integers unbounded):
//   file      := "vars" varlist ";" {component ";"}   (final ";" optional)
//   varlist   := ident {"," ident}
//   component := "f" INT "=" expr
//   expr      := term {("+"|"-") term}
//   term      := factor {"*" factor}
//   factor    := INT | ident ["^" INT] | "(" expr ")" | "-" factor
#pragma once

#include "poly.hpp"

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace orbita {

struct ParseError : DomainError {
    int line, col;
    ParseError(int line_, int col_, const std::string& msg)
        : DomainError("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

namespace detail {

struct Token {
    enum Kind { Ident, Integer, Plus, Minus, Star, Caret, LParen, RParen, Comma, Semi, Equals, End };
    Kind kind;
    std::string text;
    int line, col;
};

inline const char* token_name(Token::Kind k) {
    switch (k) {
        case Token::Ident: return "identifier";
        case Token::Integer: return "integer";
        case Token::Plus: return "'+'";
        case Token::Minus: return "'-'";
        case Token::Star: return "'*'";
        case Token::Caret: return "'^'";
        case Token::LParen: return "'('";
        case Token::RParen: return "')'";
        case Token::Comma: return "','";
        case Token::Semi: return "';'";
        case Token::Equals: return "'='";
        case Token::End: return "end of input";
    }
    return "?";
}

inline std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Token::Kind k, std::string s, int l, int c) { out.push_back({k, std::move(s), l, c}); };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++col;
            ++i;
            continue;
        }
        const int l = line, c = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string s;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                s += text[i++];
                ++col;
            }
            push(Token::Integer, std::move(s), l, c);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string s;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                s += text[i++];
                ++col;
            }
            push(Token::Ident, std::move(s), l, c);
            continue;
        }
        Token::Kind k;
        switch (ch) {
            case '+': k = Token::Plus; break;
            case '-': k = Token::Minus; break;
            case '*': k = Token::Star; break;
            case '^': k = Token::Caret; break;
            case '(': k = Token::LParen; break;
            case ')': k = Token::RParen; break;
            case ',': k = Token::Comma; break;
            case ';': k = Token::Semi; break;
            case '=': k = Token::Equals; break;
            default:
                throw ParseError(l, c, std::string("unexpected character '") + ch + "'");
        }
        push(k, std::string(1, ch), l, c);
        ++i;
        ++col;
    }
    out.push_back({Token::End, "", line, col});
    return out;
}

class MapParser {
public:
    explicit MapParser(const std::string& text) : toks_(lex(text)) {}

    PolyMap parse_file() {
        expect_keyword("vars");
        do {
            const Token& t = expect(Token::Ident, "variable name");
            if (is_component_name(t.text))
                throw ParseError(t.line, t.col,
                                 "variable name '" + t.text + "' is reserved for components");
            for (const auto& v : vars_)
                if (v == t.text) throw ParseError(t.line, t.col, "duplicate variable '" + t.text + "'");
            vars_.push_back(t.text);
        } while (accept(Token::Comma));
        expect(Token::Semi, "';' after variable list");

        std::vector<Polynomial> comps;
        while (peek().kind != Token::End) {
            const Token& name = expect(Token::Ident, "component name");
            const std::size_t want = comps.size() + 1;
            if (!is_component_name(name.text) || name.text != "f" + std::to_string(want))
                throw ParseError(name.line, name.col,
                                 "expected component 'f" + std::to_string(want) + "', got '" +
                                     name.text + "'");
            expect(Token::Equals, "'=' after component name");
            comps.push_back(parse_expr());
            if (!accept(Token::Semi)) {
                const Token& t = peek();
                if (t.kind != Token::End)
                    throw ParseError(t.line, t.col,
                                     std::string("expected ';' or end of input, got ") +
                                         token_name(t.kind));
            }
        }
        if (comps.empty()) {
            const Token& t = peek();
            throw ParseError(t.line, t.col, "map has no components");
        }
        if (comps.size() != vars_.size()) {
            const Token& t = peek();
            throw ParseError(t.line, t.col,
                             "declared " + std::to_string(vars_.size()) + " variables but found " +
                                 std::to_string(comps.size()) + " components");
        }
        return PolyMap(vars_.size(), std::move(comps));
    }

    const std::vector<std::string>& vars() const { return vars_; }

private:
    static bool is_component_name(const std::string& s) {
        if (s.size() < 2 || s[0] != 'f') return false;
        for (std::size_t i = 1; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    }

    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }

    bool accept(Token::Kind k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }

    const Token& expect(Token::Kind k, const std::string& what) {
        const Token& t = peek();
        if (t.kind != k)
            throw ParseError(t.line, t.col, "expected " + what + ", got " + token_name(t.kind));
        return advance();
    }

    void expect_keyword(const std::string& kw) {
        const Token& t = peek();
        if (t.kind != Token::Ident || t.text != kw)
            throw ParseError(t.line, t.col, "expected '" + kw + "'");
        advance();
    }

    std::size_t var_index(const Token& t) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == t.text) return i;
        throw ParseError(t.line, t.col, "undeclared variable '" + t.text + "'");
    }

    Polynomial parse_expr() {
        Polynomial acc = parse_term();
        while (true) {
            if (accept(Token::Plus)) {
                acc = add(acc, parse_term());
            } else if (accept(Token::Minus)) {
                acc = sub(acc, parse_term());
            } else {
                return acc;
            }
        }
    }

    Polynomial parse_term() {
        Polynomial acc = parse_factor();
        while (accept(Token::Star)) acc = mul(acc, parse_factor());
        return acc;
    }

    Polynomial parse_factor() {
        const std::size_t nv = vars_.size();
        const Token& t = peek();
        switch (t.kind) {
            case Token::Integer: {
                advance();
                return Polynomial::constant(nv, Int(t.text));
            }
            case Token::Ident: {
                advance();
                const std::size_t i = var_index(t);
                if (accept(Token::Caret)) {
                    const Token& e = peek();
                    if (e.kind == Token::Minus)
                        throw ParseError(e.line, e.col, "exponent must be a nonnegative integer");
                    const Token& lit = expect(Token::Integer, "integer exponent");
                    const Int big(lit.text);
                    if (big > Int(1u << 30))
                        throw ParseError(lit.line, lit.col, "exponent too large");
                    return pow(Polynomial::variable(nv, i), static_cast<std::uint64_t>(big));
                }
                return Polynomial::variable(nv, i);
            }
            case Token::LParen: {
                advance();
                Polynomial inner = parse_expr();
                expect(Token::RParen, "')'");
                return inner;
            }
            case Token::Minus: {
                advance();
                return neg(parse_factor());
            }
            default:
                throw ParseError(t.line, t.col,
                                 std::string("expected a factor, got ") + token_name(t.kind));
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<std::string> vars_;
};

}  // namespace detail

inline PolyMap parse_map(const std::string& text) { return detail::MapParser(text).parse_file(); }

/// Point syntax: "(c1, c2, ..., cN)" with optionally signed integer
/// literals of unbounded size.
inline Point parse_point(const std::string& text, std::optional<std::size_t> expected_dim = {}) {
    auto toks = detail::lex(text);
    std::size_t pos = 0;
    auto peek = [&]() -> const detail::Token& { return toks[pos]; };
    auto expect = [&](detail::Token::Kind k, const char* what) -> const detail::Token& {
        const auto& t = toks[pos];
        if (t.kind != k)
            throw ParseError(t.line, t.col,
                             std::string("expected ") + what + ", got " + detail::token_name(t.kind));
        ++pos;
        return t;
    };
    expect(detail::Token::LParen, "'('");
    std::vector<Int> coords;
    while (true) {
        bool negative = false;
        if (peek().kind == detail::Token::Minus) {
            negative = true;
            ++pos;
        } else if (peek().kind == detail::Token::Plus) {
            ++pos;
        }
        const auto& lit = expect(detail::Token::Integer, "integer coordinate");
        Int v(lit.text);
        coords.push_back(negative ? -v : v);
        if (peek().kind == detail::Token::Comma) {
            ++pos;
            continue;
        }
        break;
    }
    expect(detail::Token::RParen, "')'");
    expect(detail::Token::End, "end of input");
    if (expected_dim && coords.size() != *expected_dim) {
        throw ParseError(1, 1,
                         "expected " + std::to_string(*expected_dim) + " coordinates, got " +
                             std::to_string(coords.size()));
    }
    return Point(std::move(coords));
}

inline std::vector<std::string> default_var_names(std::size_t n) {
    if (n <= 3) {
        static const char* short_names[] = {"x", "y", "z"};
        std::vector<std::string> out;
        for (std::size_t i = 0; i < n; ++i) out.emplace_back(short_names[i]);
        return out;
    }
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

inline std::string print_poly(const Polynomial& q, const std::vector<std::string>& names) {
    if (names.size() != q.num_vars()) throw DomainError("variable name count mismatch");
    if (q.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : q.terms()) {
        const bool negative = c < 0;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        const Int mag = negative ? Int(-c) : c;
        std::string body;
        bool constant_term = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            constant_term = false;
            if (!body.empty()) body += "*";
            body += names[i];
            if (e[i] > 1) body += "^" + std::to_string(e[i]);
        }
        if (constant_term) {
            out += mag.str();
        } else if (mag == 1) {
            out += body;
        } else {
            out += mag.str() + "*" + body;
        }
    }
    return out;
}

/// Canonical form: default variable names, graded-lex term order, no
/// trailing semicolon. parse_map(print_map(f)) == f.
inline std::string print_map(const PolyMap& f, std::vector<std::string> names = {}) {
    if (names.empty()) names = default_var_names(f.dim);
    if (names.size() != f.dim) throw DomainError("variable name count mismatch");
    std::string out = "vars ";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ",";
        out += names[i];
    }
    out += ";";
    for (std::size_t i = 0; i < f.dim; ++i)
        out += " f" + std::to_string(i + 1) + " = " + print_poly(f.comps[i], names) +
               (i + 1 < f.dim ? ";" : "");
    return out;
}

inline std::string print_point(const Point& P) {
    std::string out = "(";
    for (std::size_t i = 0; i < P.coords.size(); ++i) {
        if (i) out += ", ";
        out += P.coords[i].str();
    }
    return out + ")";
}

}  // namespace orbita
