#pragma once

#include "qgal/freealg.hpp"
#include "qgal/opcalc.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace qgal {

struct parse_error : error {
    size_t offset;
    parse_error(const std::string& msg, size_t off)
        : error(msg + " at byte " + std::to_string(off)), offset(off) {}
};

namespace detail {

struct Token {
    enum Kind { Int, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } kind;
    std::string text;
    size_t offset;
};

inline std::vector<Token> lex(const std::string& s) {
    std::vector<Token> toks;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            toks.push_back({Token::Int, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            toks.push_back({Token::Ident, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        Token::Kind k;
        switch (c) {
            case '+': k = Token::Plus; break;
            case '-': k = Token::Minus; break;
            case '*': k = Token::Star; break;
            case '^': k = Token::Caret; break;
            case '/': k = Token::Slash; break;
            case '(': k = Token::LParen; break;
            case ')': k = Token::RParen; break;
            default: throw parse_error(std::string("unexpected character '") + c + "'", i);
        }
        toks.push_back({k, std::string(1, c), i});
        ++i;
    }
    toks.push_back({Token::End, "", s.size()});
    return toks;
}

/// Recursive-descent parser over a binding context Ctx:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := ['-'] (literal | symbol ['^' ['-'] int] | '(' expr ')')
/// Juxtaposition is not multiplication; '*' is required.
template <class Ctx>
class Parser {
public:
    Parser(const std::string& text, Ctx ctx) : toks_(lex(text)), ctx_(std::move(ctx)) {}

    typename Ctx::Value parse() {
        auto v = expr();
        if (peek().kind != Token::End)
            throw parse_error("trailing input '" + peek().text + "'", peek().offset);
        return v;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    bool accept(typename Token::Kind k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }

    typename Ctx::Value expr() {
        auto v = term();
        while (true) {
            if (accept(Token::Plus))
                v = ctx_.add(v, term());
            else if (accept(Token::Minus))
                v = ctx_.sub(v, term());
            else
                return v;
        }
    }

    typename Ctx::Value term() {
        auto v = factor();
        while (accept(Token::Star)) v = ctx_.mul(v, factor());
        return v;
    }

    typename Ctx::Value factor() {
        if (accept(Token::Minus)) return ctx_.neg(factor());
        const Token& t = peek();
        if (t.kind == Token::Int) {
            next();
            Rat num(t.text);
            if (accept(Token::Slash)) {
                const Token& d = peek();
                if (d.kind != Token::Int)
                    throw parse_error("expected denominator", d.offset);
                next();
                Rat den(d.text);
                if (den == 0) throw parse_error("zero denominator", d.offset);
                return ctx_.lit(num / den);
            }
            return ctx_.lit(num);
        }
        if (t.kind == Token::Ident) {
            next();
            Int e = 1;
            if (accept(Token::Caret)) {
                bool neg = accept(Token::Minus);
                const Token& x = peek();
                if (x.kind != Token::Int) throw parse_error("expected exponent", x.offset);
                next();
                e = std::stoll(x.text);
                if (neg) e = -e;
            }
            return ctx_.sym_pow(t.text, e, t.offset);
        }
        if (accept(Token::LParen)) {
            auto v = expr();
            if (!accept(Token::RParen))
                throw parse_error("expected ')'", peek().offset);
            return v;
        }
        throw parse_error("unexpected token '" + t.text + "'", t.offset);
    }

    std::vector<Token> toks_;
    Ctx ctx_;
    size_t pos_ = 0;
};

inline Scalar scalar_sym_pow(const std::string& name, Int e, size_t off, bool* handled) {
    *handled = true;
    if (name == "i") {
        if (e < 0) throw parse_error("negative power of i not supported", off);
        GaussRat v(Rat(1));
        for (Int k = 0; k < e; ++k) v *= GaussRat::i();
        return Scalar(v);
    }
    if (name == "a") return Scalar::sym(Sym::a, e);
    if (name == "beta") return Scalar::sym(Sym::beta, e);
    if (name == "alpha") {
        if (e < 0)
            throw parse_error("negative power only allowed for E, a, beta", off);
        return Scalar::sym(Sym::alpha, e);
    }
    *handled = false;
    return Scalar::zero();
}

} // namespace detail

struct AlgebraContext {
    using Value = NCPolynomial;
    const Presentation* pres;

    Value lit(const Rat& r) const { return NCPolynomial::scalar(pres, Scalar(GaussRat(r))); }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return multiply(a, b); }
    Value neg(const Value& a) const { return -a; }
    Value sym_pow(const std::string& name, Int e, size_t off) const {
        bool handled;
        Scalar s = detail::scalar_sym_pow(name, e, off, &handled);
        if (handled) return NCPolynomial::scalar(pres, s);
        int gi;
        try {
            gi = pres->gen_index(name);
        } catch (const error&) {
            throw parse_error("unbound symbol '" + name + "'", off);
        }
        if (e < 0 && gi != kEGen)
            throw parse_error("negative power only allowed for E, a, beta", off);
        return NCPolynomial::gen(pres, name, e);
    }
};

struct WaveFunctionContext {
    using Value = WaveFunction;

    Value lit(const Rat& r) const { return WaveFunction::constant(Scalar(GaussRat(r))); }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value neg(const Value& a) const { return -a; }
    Value sym_pow(const std::string& name, Int e, size_t off) const {
        bool handled;
        Scalar s = detail::scalar_sym_pow(name, e, off, &handled);
        if (handled) return WaveFunction::constant(s);
        for (int k = 0; k < 4; ++k)
            if (name == var_name(static_cast<Var>(k))) {
                if (e < 0)
                    throw parse_error("negative power only allowed for E, a, beta", off);
                return WaveFunction::var(static_cast<Var>(k), e);
            }
        throw parse_error("unbound symbol '" + name + "'", off);
    }
};

struct ScalarContext {
    using Value = Scalar;

    Value lit(const Rat& r) const { return Scalar(GaussRat(r)); }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value neg(const Value& a) const { return -a; }
    Value sym_pow(const std::string& name, Int e, size_t off) const {
        bool handled;
        Scalar s = detail::scalar_sym_pow(name, e, off, &handled);
        if (!handled) throw parse_error("unbound symbol '" + name + "'", off);
        return s;
    }
};

inline NCPolynomial parse_algebra(const std::string& text, const Presentation* p) {
    return detail::Parser<AlgebraContext>(text, AlgebraContext{p}).parse();
}

inline WaveFunction parse_wavefunction(const std::string& text) {
    return detail::Parser<WaveFunctionContext>(text, WaveFunctionContext{}).parse();
}

inline Scalar parse_scalar(const std::string& text) {
    return detail::Parser<ScalarContext>(text, ScalarContext{}).parse();
}

} // namespace qgal
