#pragma once

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nambu/filippov.hpp"
#include "nambu/multivector.hpp"
#include "nambu/polynomial.hpp"

namespace nambu {

/// Syntax error with 1-based position information.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line_(line),
          col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

namespace parser_detail {

/// Element of the full exterior algebra, graded by degree. Only the parser
/// works with mixed grades; a finished expression must be homogeneous.
struct Graded {
    int dim = 0;
    std::map<int, Multivector> parts;  // degree -> nonzero component

    static Graded scalar(const Polynomial& p, int dim) {
        Graded g;
        g.dim = dim;
        if (!p.is_zero()) g.parts.emplace(0, Multivector::scalar(p));
        return g;
    }

    void add(const Multivector& m) {
        if (m.is_zero()) return;
        auto [it, inserted] = parts.emplace(m.degree(), m);
        if (!inserted) {
            it->second = it->second + m;
            if (it->second.is_zero()) parts.erase(it);
        }
    }

    bool is_scalar() const { return parts.empty() || (parts.size() == 1 && parts.begin()->first == 0); }

    Polynomial as_scalar() const {
        if (parts.empty()) return Polynomial(dim);
        return parts.begin()->second.as_polynomial();
    }
};

struct Token {
    enum Kind { Number, Var, Basis, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
    Rational number;     // Number
    bool integral = false;
    unsigned long uint_value = 0;  // Number, when integral and non-negative
    int index = 0;       // Var / Basis
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, std::size_t pos) const {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < pos && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }
    [[noreturn]] void fail_here(const std::string& msg) const { fail(msg, tok_.pos); }

private:
    void advance() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
        tok_ = Token{};
        tok_.pos = i_;
        if (i_ >= text_.size()) {
            tok_.kind = Token::End;
            return;
        }
        char c = text_[i_];
        switch (c) {
            case '+': tok_.kind = Token::Plus; ++i_; return;
            case '-': tok_.kind = Token::Minus; ++i_; return;
            case '*': tok_.kind = Token::Star; ++i_; return;
            case '^': tok_.kind = Token::Caret; ++i_; return;
            case '(': tok_.kind = Token::LParen; ++i_; return;
            case ')': tok_.kind = Token::RParen; ++i_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
            std::string num = text_.substr(start, i_ - start);
            if (i_ < text_.size() && text_[i_] == '/') {
                std::size_t save = i_;
                ++i_;
                std::size_t dstart = i_;
                while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
                if (i_ == dstart) { i_ = save; }  // lone '/': not part of the literal
                else num += "/" + text_.substr(dstart, i_ - dstart);
            }
            tok_.kind = Token::Number;
            tok_.number = Rational::from_string(num);
            if (num.find('/') == std::string::npos) {
                tok_.integral = true;
                try {
                    tok_.uint_value = std::stoul(num);
                } catch (const std::out_of_range&) {
                    tok_.integral = false;  // exponent use would overflow anyway
                }
            }
            return;
        }
        if (c == 'x' || c == 'd') {
            std::size_t start = i_ + 1;
            std::size_t j = start;
            while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
            if (j == start) fail(std::string("expected index digits after '") + c + "'", i_);
            tok_.kind = c == 'x' ? Token::Var : Token::Basis;
            try {
                tok_.index = std::stoi(text_.substr(start, j - start));
            } catch (const std::out_of_range&) {
                fail("index is out of range", i_);
            }
            i_ = j;
            return;
        }
        fail(std::string("unexpected character '") + c + "'", i_);
    }

    const std::string& text_;
    std::size_t i_ = 0;
    Token tok_;
};

class ExpressionParser {
public:
    ExpressionParser(const std::string& text, int dim) : lex_(text), dim_(dim) {
        if (dim < 1) throw std::invalid_argument("parse: dimension must be >= 1");
    }

    Graded parse() {
        Graded g = expression();
        if (lex_.peek().kind != Token::End) lex_.fail_here("unexpected trailing input");
        return g;
    }

private:
    Graded expression() {
        bool negate = false;
        if (lex_.peek().kind == Token::Minus) {
            lex_.take();
            negate = true;
        }
        Graded acc = term();
        if (negate) acc = negated(acc);
        while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
            bool minus = lex_.take().kind == Token::Minus;
            Graded rhs = term();
            if (minus) rhs = negated(rhs);
            for (auto& [deg, part] : rhs.parts) acc.add(part);
        }
        return acc;
    }

    Graded term() {
        Graded acc = factor();
        while (lex_.peek().kind == Token::Star) {
            std::size_t pos = lex_.peek().pos;
            lex_.take();
            Graded rhs = factor();
            acc = multiply(acc, rhs, pos);
        }
        return acc;
    }

    struct Factor {
        Graded value;
        bool int_literal = false;
        unsigned long int_value = 0;
    };

    Graded factor() {
        Factor acc = primary();
        while (lex_.peek().kind == Token::Caret) {
            std::size_t pos = lex_.peek().pos;
            lex_.take();
            Factor rhs = primary();
            acc = apply_caret(std::move(acc), std::move(rhs), pos);
        }
        return acc.value;
    }

    /// '^' is exponentiation when the left side is scalar and the right side
    /// is an integer literal, and the exterior product when the right side
    /// has degree >= 1.
    Factor apply_caret(Factor lhs, Factor rhs, std::size_t pos) {
        const bool lhs_scalar = lhs.value.is_scalar();
        const bool rhs_scalar = rhs.value.is_scalar();
        if (lhs_scalar && rhs.int_literal) {
            if (rhs.int_value < 1)
                lex_.fail("exponent must be a positive integer", pos);
            if (rhs.int_value > 512) lex_.fail("exponent too large", pos);
            Polynomial p = lhs.value.as_scalar().pow(static_cast<unsigned>(rhs.int_value));
            return {Graded::scalar(p, dim_), false, 0};
        }
        if (!rhs_scalar) {
            Graded out;
            out.dim = dim_;
            for (auto& [da, ma] : lhs.value.parts)
                for (auto& [db, mb] : rhs.value.parts) out.add(wedge(ma, mb));
            return {out, false, 0};
        }
        if (!lhs_scalar)
            lex_.fail("cannot exponentiate a multivector; '^' needs a basis factor here", pos);
        lex_.fail("expected a positive integer exponent or a basis factor after '^'", pos);
    }

    Graded multiply(const Graded& a, const Graded& b, std::size_t pos) {
        if (a.is_scalar() || b.is_scalar()) {
            const Graded& scal = a.is_scalar() ? a : b;
            const Graded& other = a.is_scalar() ? b : a;
            Polynomial p = scal.as_scalar();
            Graded out;
            out.dim = dim_;
            for (auto& [deg, part] : other.parts) out.add(part.scaled(p));
            return out;
        }
        lex_.fail("'*' cannot join two multivectors; use '^' for the exterior product", pos);
    }

    Graded negated(const Graded& g) {
        Graded out;
        out.dim = dim_;
        for (auto& [deg, part] : g.parts) out.add(-part);
        return out;
    }

    Factor primary() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Token::Number: {
                Token tok = lex_.take();
                Factor f{Graded::scalar(Polynomial::constant(tok.number, dim_), dim_),
                         tok.integral, tok.uint_value};
                return f;
            }
            case Token::Var: {
                Token tok = lex_.take();
                if (tok.index < 1 || tok.index > dim_)
                    lex_.fail("variable index x" + std::to_string(tok.index) +
                                  " exceeds dimension " + std::to_string(dim_),
                              tok.pos);
                return {Graded::scalar(Polynomial::variable(tok.index, dim_), dim_), false, 0};
            }
            case Token::Basis: {
                Token tok = lex_.take();
                if (tok.index < 1 || tok.index > dim_)
                    lex_.fail("basis index d" + std::to_string(tok.index) +
                                  " exceeds dimension " + std::to_string(dim_),
                              tok.pos);
                Graded g;
                g.dim = dim_;
                g.add(Multivector::basis(dim_, {tok.index}));
                return {g, false, 0};
            }
            case Token::LParen: {
                lex_.take();
                Graded g = expression();
                if (lex_.peek().kind != Token::RParen) lex_.fail_here("expected ')'");
                lex_.take();
                return {g, false, 0};
            }
            default:
                lex_.fail_here("expected a number, variable, basis symbol or '('");
        }
    }

    Lexer lex_;
    int dim_;
};

}  // namespace parser_detail

using Parsed = std::variant<Polynomial, Multivector>;

/// Parses a polynomial/multivector expression on a declared dimension. The
/// result must be homogeneous; a degree-0 result comes back as a Polynomial.
inline Parsed parse_expression(const std::string& text, int dim) {
    parser_detail::ExpressionParser p(text, dim);
    parser_detail::Graded g = p.parse();
    if (g.parts.empty()) return Polynomial(dim);
    if (g.parts.size() > 1) {
        std::string degrees;
        for (auto& [deg, part] : g.parts) degrees += (degrees.empty() ? "" : ", ") + std::to_string(deg);
        throw ParseError("expression mixes degrees {" + degrees + "}; it must be homogeneous", 1, 1);
    }
    if (g.parts.begin()->first == 0) return g.as_scalar();
    return g.parts.begin()->second;
}

inline Polynomial parse_polynomial(const std::string& text, int dim) {
    Parsed p = parse_expression(text, dim);
    if (!std::holds_alternative<Polynomial>(p))
        throw ParseError("expected a polynomial (degree-0 expression)", 1, 1);
    return std::get<Polynomial>(p);
}

/// Parses a multivector; `expected_degree` >= 0 pins the degree (useful for
/// zero expressions, whose degree is otherwise ambiguous).
inline Multivector parse_multivector(const std::string& text, int dim, int expected_degree = -1) {
    Parsed p = parse_expression(text, dim);
    Multivector m = std::holds_alternative<Multivector>(p)
                        ? std::get<Multivector>(p)
                        : Multivector::scalar(std::get<Polynomial>(p));
    if (m.is_zero() && expected_degree >= 0 && m.degree() != expected_degree)
        m = Multivector(dim, expected_degree);
    if (expected_degree >= 0 && m.degree() != expected_degree)
        throw ParseError("expected a multivector of degree " + std::to_string(expected_degree) +
                             ", got degree " + std::to_string(m.degree()),
                         1, 1);
    return m;
}

/// Comma-separated list of polynomial expressions.
inline std::vector<Polynomial> parse_polynomial_list(const std::string& text, int dim) {
    std::vector<Polynomial> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string piece = comma == std::string::npos ? text.substr(start)
                                                       : text.substr(start, comma - start);
        out.push_back(parse_polynomial(piece, dim));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

/// Comma-separated rational coordinates.
inline filippov::Vec parse_vector(const std::string& text, int dim) {
    filippov::Vec v;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string piece = comma == std::string::npos ? text.substr(start)
                                                       : text.substr(start, comma - start);
        std::size_t a = piece.find_first_not_of(" \t");
        std::size_t b = piece.find_last_not_of(" \t");
        if (a == std::string::npos) throw ParseError("empty vector coordinate", 1, 1);
        v.push_back(Rational::from_string(piece.substr(a, b - a + 1)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (static_cast<int>(v.size()) != dim)
        throw ParseError("vector has " + std::to_string(v.size()) + " coordinates, expected " +
                             std::to_string(dim),
                         1, 1);
    return v;
}

/// Structure-constant entries, one per line: `c[k; i1,i2,...,in] = rational`.
/// Tuples must be strictly increasing (the skew copies are implied); blank
/// lines are skipped; duplicate entries are rejected.
inline filippov::StructureConstants parse_structure_constants(const std::string& text, int dim,
                                                              int arity) {
    filippov::StructureConstants s(dim, arity);
    int line_no = 0;
    std::size_t start = 0;
    auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, line_no, 1); };
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string line = nl == std::string::npos ? text.substr(start)
                                                   : text.substr(start, nl - start);
        ++line_no;
        std::size_t i = 0;
        auto skip_ws = [&] { while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i; };
        auto expect = [&](char c) {
            skip_ws();
            if (i >= line.size() || line[i] != c)
                fail(std::string("expected '") + c + "' in structure-constant entry");
            ++i;
        };
        auto read_int = [&]() -> int {
            skip_ws();
            std::size_t s0 = i;
            while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
            if (i == s0) fail("expected an index");
            return std::stoi(line.substr(s0, i - s0));
        };
        skip_ws();
        if (i >= line.size()) {  // blank line
            if (nl == std::string::npos) break;
            start = nl + 1;
            continue;
        }
        if (line[i] != 'c') fail("entries must start with 'c['");
        ++i;
        expect('[');
        int k = read_int();
        expect(';');
        std::vector<int> tuple;
        tuple.push_back(read_int());
        for (;;) {
            skip_ws();
            if (i < line.size() && line[i] == ',') {
                ++i;
                tuple.push_back(read_int());
            } else {
                break;
            }
        }
        expect(']');
        expect('=');
        skip_ws();
        std::size_t v0 = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (v0 == i) fail("expected a rational value");
        Rational value;
        try {
            value = Rational::from_string(line.substr(v0, i - v0));
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
        skip_ws();
        if (i < line.size()) fail("unexpected trailing input in entry");
        if (static_cast<int>(tuple.size()) != arity)
            fail("tuple length " + std::to_string(tuple.size()) + " does not match arity " +
                 std::to_string(arity));
        try {
            if (!s.get(tuple, k).is_zero()) fail("duplicate entry");
            s.set(tuple, k, value);
        } catch (const std::exception& e) {
            fail(e.what());
        }
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    return s;
}

}  // namespace nambu
