#pragma once

/**
 * @file parser.hpp
 * @brief Recursive-descent parser for equations F(x, y, y') and series literals.
 *
 * Grammar:
 *   equation := expr ('=' expr)?
 *   expr     := term (('+' | '-') term)*
 *   term     := unary (('*' | '/')? unary)*      implicit '*' between factors
 *   unary    := ('+' | '-') unary | power
 *   power    := primary ('^' exponent)?          '^' binds tighter than unary '-'
 *   exponent := uint | '(' '-'? uint ('/' uint)? ')'
 *   primary  := number | 'x' | 'xi' | 'y' | "y'" | '(' expr ')'
 *
 * Division is accepted only by nonzero constants, so "3/4" is a rational literal.
 */

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "puiseux/model/diff_poly.hpp"

namespace puiseux {

struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
};

inline std::string describe(const SourcePos& pos, const std::string& message) {
    return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + message;
}

/// Malformed input text.
class ParseError : public std::runtime_error {
public:
    ParseError(SourcePos pos, const std::string& message) : std::runtime_error(describe(pos, message)), pos(pos) {}
    SourcePos pos;
};

/// Well-formed input outside the supported equation class.
class UnsupportedError : public std::runtime_error {
public:
    UnsupportedError(SourcePos pos, const std::string& message)
        : std::runtime_error(describe(pos, message)), pos(pos) {}
    SourcePos pos;
};

namespace detail {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Equals, End };
    Kind kind;
    std::string text;
    SourcePos pos;
};

inline std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    SourcePos pos;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++pos.line;
                pos.column = 1;
            } else {
                ++pos.column;
            }
        }
    };
    while (i < src.size()) {
        const char ch = src[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            advance(1);
            continue;
        }
        const SourcePos start = pos;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::Number, std::string(src.substr(i, j - i)), start});
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::string name;
            if (src.substr(i, 2) == "xi") name = "xi";
            else if (ch == 'x' || ch == 'y') name = std::string(1, ch);
            else throw ParseError(start, std::string("unknown symbol '") + ch + "'");
            std::size_t j = i + name.size();
            if (name == "y")
                while (j < src.size() && src[j] == '\'') name += src[j++];
            out.push_back({Token::Ident, name, start});
            advance(j - i);
            continue;
        }
        Token::Kind kind;
        switch (ch) {
            case '+': kind = Token::Plus; break;
            case '-': kind = Token::Minus; break;
            case '*': kind = Token::Star; break;
            case '/': kind = Token::Slash; break;
            case '^': kind = Token::Caret; break;
            case '(': kind = Token::LParen; break;
            case ')': kind = Token::RParen; break;
            case '=': kind = Token::Equals; break;
            default: throw ParseError(start, std::string("unexpected character '") + ch + "'");
        }
        out.push_back({kind, std::string(1, ch), start});
        advance(1);
    }
    out.push_back({Token::End, "", pos});
    return out;
}

/// Generic recursive descent over an algebra A providing the value semantics.
template <class A>
class ExprParser {
public:
    using Value = typename A::Value;

    ExprParser(std::string_view src, A algebra) : tokens_(tokenize(src)), alg_(std::move(algebra)) {}

    Value parse_equation() {
        Value lhs = expr();
        if (peek().kind == Token::Equals) {
            next();
            Value rhs = expr();
            lhs = alg_.sub(lhs, rhs);
        }
        expect_end();
        return lhs;
    }

    Value parse_expression() {
        Value v = expr();
        expect_end();
        return v;
    }

private:
    const Token& peek() const { return tokens_[idx_]; }
    const Token& next() { return tokens_[idx_++]; }

    void expect_end() {
        if (peek().kind != Token::End) throw ParseError(peek().pos, "unexpected '" + peek().text + "'");
    }

    static bool starts_factor(const Token& t) {
        return t.kind == Token::Number || t.kind == Token::Ident || t.kind == Token::LParen;
    }

    Value expr() {
        Value acc = term();
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            const bool minus = next().kind == Token::Minus;
            Value rhs = term();
            acc = minus ? alg_.sub(acc, rhs) : alg_.add(acc, rhs);
        }
        return acc;
    }

    Value term() {
        Value acc = unary();
        while (true) {
            const Token& t = peek();
            if (t.kind == Token::Star) {
                next();
                acc = alg_.mul(acc, unary());
            } else if (t.kind == Token::Slash) {
                const SourcePos pos = next().pos;
                acc = alg_.div(acc, unary(), pos);
            } else if (starts_factor(t)) {
                acc = alg_.mul(acc, power());
            } else {
                return acc;
            }
        }
    }

    Value unary() {
        if (peek().kind == Token::Minus) {
            next();
            return alg_.neg(unary());
        }
        if (peek().kind == Token::Plus) {
            next();
            return unary();
        }
        return power();
    }

    Value power() {
        Value base = primary();
        if (peek().kind != Token::Caret) return base;
        const SourcePos pos = next().pos;
        Rational e = exponent();
        Value out = alg_.pow(base, e, pos);
        if (peek().kind == Token::Caret) throw ParseError(peek().pos, "chained '^' is ambiguous; use parentheses");
        return out;
    }

    Integer uint_token() {
        const Token& t = next();
        if (t.kind != Token::Number) throw ParseError(t.pos, "expected an unsigned integer");
        return Integer(t.text);
    }

    Rational exponent() {
        if (peek().kind == Token::Number) return Rational(uint_token());
        if (peek().kind != Token::LParen) throw ParseError(peek().pos, "expected an exponent");
        next();
        bool negative = false;
        if (peek().kind == Token::Minus) {
            next();
            negative = true;
        }
        Integer num = uint_token();
        Integer den = 1;
        if (peek().kind == Token::Slash) {
            next();
            const SourcePos pos = peek().pos;
            den = uint_token();
            if (den == 0) throw ParseError(pos, "zero denominator in exponent");
        }
        if (peek().kind != Token::RParen) throw ParseError(peek().pos, "expected ')'");
        next();
        Rational e = make_rational(num, den);
        return negative ? Rational(-e) : e;
    }

    Value primary() {
        const Token& t = next();
        switch (t.kind) {
            case Token::Number:
                return alg_.number(Rational(Integer(t.text)));
            case Token::Ident:
                return alg_.symbol(t.text, t.pos);
            case Token::LParen: {
                Value v = expr();
                if (peek().kind != Token::RParen) throw ParseError(peek().pos, "expected ')'");
                next();
                return v;
            }
            case Token::End:
                throw ParseError(t.pos, "unexpected end of input");
            default:
                throw ParseError(t.pos, "unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> tokens_;
    std::size_t idx_ = 0;
    A alg_;
};

struct EquationAlgebra {
    using Value = DiffPoly;

    Value number(const Rational& q) const { return DiffPoly::constant(UniPoly(q)); }
    Value symbol(const std::string& name, SourcePos pos) const {
        if (name == "x") return DiffPoly::x();
        if (name == "y") return DiffPoly::y();
        if (name == "y'") return DiffPoly::dy();
        if (name.rfind("y''", 0) == 0) throw UnsupportedError(pos, "order > 1 unsupported (found " + name + ")");
        throw ParseError(pos, "symbol '" + name + "' is not allowed in an equation");
    }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value neg(const Value& a) const { return -a; }
    Value div(const Value& a, const Value& b, SourcePos pos) const {
        if (!b.is_constant()) throw UnsupportedError(pos, "division by a non-constant is not polynomial");
        if (b.zero()) throw ParseError(pos, "division by zero");
        return a.scaled(Rational(1) / b.terms().begin()->second.lc());
    }
    Value pow(const Value& a, const Rational& e, SourcePos pos) const {
        if (!is_integer(e) || e < 0) throw UnsupportedError(pos, "non-polynomial exponent " + to_string(e));
        if (e > 4096) throw UnsupportedError(pos, "exponent too large");
        Value out = number(Rational(1));
        for (long i = 0; i < e.get_num().get_si(); ++i) out = out * a;
        return out;
    }
};

}  // namespace detail

/// Parses "lhs" or "lhs = rhs" into F = lhs - rhs; rejects F = 0 identically.
inline DiffPoly parse_equation(std::string_view text) {
    detail::ExprParser<detail::EquationAlgebra> parser(text, {});
    DiffPoly f = parser.parse_equation();
    if (f.zero()) throw ParseError(SourcePos{}, "equation is identically zero");
    return f;
}

/// Finite sum of rational multiples of xi^e (xi = x - x0), e rational.
using PuiseuxPoly = std::map<Rational, Rational>;

namespace detail {

inline void add_into(PuiseuxPoly& acc, const PuiseuxPoly& b, const Rational& scale) {
    for (const auto& [e, c] : b) {
        Rational v = acc[e] + c * scale;
        if (is_zero(v)) acc.erase(e);
        else acc[e] = v;
    }
}

struct SeriesAlgebra {
    using Value = PuiseuxPoly;
    Rational x0;

    Value number(const Rational& q) const {
        Value v;
        if (!is_zero(q)) v[Rational(0)] = q;
        return v;
    }
    Value symbol(const std::string& name, SourcePos pos) const {
        if (name == "xi") return Value{{Rational(1), Rational(1)}};
        if (name == "x") {
            Value v{{Rational(1), Rational(1)}};
            if (!is_zero(x0)) v[Rational(0)] = x0;
            return v;
        }
        throw ParseError(pos, "symbol '" + name + "' is not allowed in a series literal");
    }
    Value add(const Value& a, const Value& b) const {
        Value out = a;
        add_into(out, b, Rational(1));
        return out;
    }
    Value sub(const Value& a, const Value& b) const {
        Value out = a;
        add_into(out, b, Rational(-1));
        return out;
    }
    Value neg(const Value& a) const { return sub(Value{}, a); }
    Value mul(const Value& a, const Value& b) const {
        Value out;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) add_into(out, Value{{ea + eb, ca * cb}}, Rational(1));
        return out;
    }
    Value div(const Value& a, const Value& b, SourcePos pos) const {
        if (b.size() != 1 || !is_zero(b.begin()->first))
            throw UnsupportedError(pos, "division by a non-constant in a series literal");
        Value out;
        add_into(out, a, Rational(1) / b.begin()->second);
        return out;
    }
    Value pow(const Value& a, const Rational& e, SourcePos pos) const {
        if (is_integer(e) && e >= 0) {
            if (e > 4096) throw UnsupportedError(pos, "exponent too large");
            Value out = number(Rational(1));
            for (long i = 0; i < e.get_num().get_si(); ++i) out = mul(out, a);
            return out;
        }
        if (a.size() != 1)
            throw UnsupportedError(pos, x0 == 0 ? "fractional or negative power of a sum"
                                                : "fractional power of x requires x0 = 0; use xi");
        const auto& [ea, ca] = *a.begin();
        if (!is_integer(e)) {
            if (ca != 1) throw UnsupportedError(pos, "fractional power of a non-unit coefficient");
            return Value{{ea * e, Rational(1)}};
        }
        // Negative integer power of a monomial.
        const long n = -e.get_num().get_si();
        return Value{{ea * e, Rational(1) / pow(ca, static_cast<unsigned>(n))}};
    }
    static Rational pow(const Rational& base, unsigned n) { return puiseux::pow(base, n); }
};

}  // namespace detail

/// Parses a series literal in x (meaning x0 + xi) or xi into exponent -> coefficient.
inline PuiseuxPoly parse_series_literal(std::string_view text, const Rational& x0) {
    detail::ExprParser<detail::SeriesAlgebra> parser(text, detail::SeriesAlgebra{x0});
    return parser.parse_expression();
}

}  // namespace puiseux
