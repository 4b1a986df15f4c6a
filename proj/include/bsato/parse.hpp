// Recursive-descent parser for the polynomial expression grammar shared with
// the CLI: integers, rationals a/b, identifiers, + - * ^, parentheses.
// Juxtaposition is not multiplication; ^ takes a non-negative integer.
#ifndef BSATO_PARSE_HPP
#define BSATO_PARSE_HPP

#include <cctype>
#include <stdexcept>
#include <string>

#include "polynomial.hpp"

namespace bsato {

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::invalid_argument("parse error at " + std::to_string(line) + ":" +
                                std::to_string(col) + ": " + msg),
          line_(line), col_(col)
    {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

namespace detail {

class ExprParser {
public:
    ExprParser(const std::string& text, UniversePtr u) : text_(text), uni_(std::move(u)) {}

    Polynomial parse()
    {
        skip_ws();
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    Polynomial expr()
    {
        bool neg = false;
        skip_ws();
        if (peek('-')) { advance(); neg = true; }
        else if (peek('+')) { advance(); }
        Polynomial acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            if (peek('+')) { advance(); acc = acc + term(); }
            else if (peek('-')) { advance(); acc = acc - term(); }
            else break;
        }
        return acc;
    }

    Polynomial term()
    {
        Polynomial acc = factor();
        for (;;) {
            skip_ws();
            if (peek('*')) { advance(); acc = acc * factor(); }
            else break;
        }
        return acc;
    }

    Polynomial factor()
    {
        Polynomial base = atom();
        skip_ws();
        if (peek('^')) {
            advance();
            skip_ws();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("'^' expects a non-negative integer exponent");
            unsigned long e = uint_literal();
            if (e > 60000) fail("exponent too large");
            base = base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Polynomial atom()
    {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            advance();
            Polynomial p = expr();
            skip_ws();
            if (!peek(')')) fail("expected ')'");
            advance();
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return variable();
        fail(std::string("unexpected character '") + c + "'");
        return Polynomial();  // unreachable
    }

    Polynomial number()
    {
        Integer num(uint_literal_str());
        skip_ws();
        if (peek('/')) {
            std::size_t save = pos_;
            advance();
            skip_ws();
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                Integer den(uint_literal_str());
                if (den == 0) fail("zero denominator");
                return Polynomial::constant(uni_, make_rational(num, den));
            }
            pos_ = save;  // lone '/' is not part of the grammar
            fail("'/' expects an integer denominator");
        }
        return Polynomial::constant(uni_, Rational(num));
    }

    Polynomial variable()
    {
        int line = line_, col = col_;
        std::string name;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            name += take();
        int idx = uni_->index_of(name);
        if (idx < 0) throw ParseError("undeclared variable '" + name + "'", line, col);
        return Polynomial::variable(uni_, idx);
    }

    unsigned long uint_literal()
    {
        std::string digits = uint_literal_str();
        try {
            return std::stoul(digits);
        } catch (const std::out_of_range&) {
            fail("integer literal too large");
        }
        return 0;
    }

    std::string uint_literal_str()
    {
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            digits += take();
        if (digits.empty()) fail("expected an integer");
        return digits;
    }

    void skip_ws()
    {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
            take();
    }

    bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

    char take()
    {
        char c = text_[pos_++];
        if (c == '\n') { ++line_; col_ = 1; }
        else ++col_;
        return c;
    }

    void advance() { take(); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    const std::string& text_;
    UniversePtr uni_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

}  // namespace detail

inline Polynomial parse_polynomial(const std::string& text, const UniversePtr& u)
{
    return detail::ExprParser(text, u).parse();
}

}  // namespace bsato

#endif
