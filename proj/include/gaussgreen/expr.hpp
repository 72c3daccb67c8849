// Tiny arithmetic expression grammar for user-supplied fields (grammar v1).
//
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := unary ('^' factor)?
//   unary   := '-' unary | primary
//   primary := number | 'x'|'y'|'z'|'pi' | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | exp | log | sqrt | abs
#pragma once

#include <cctype>
#include <cmath>
#include <functional>
#include <memory>
#include <string>

#include "core.hpp"

namespace gg {

inline constexpr int kExprGrammarVersion = 1;

class ExprParser {
public:
    using Fn = std::function<double(const Vec&)>;

    static Fn parse(const std::string& src) {
        ExprParser p(src);
        Fn f = p.expr();
        p.skip_ws();
        if (p.pos_ != p.src_.size())
            throw GGError("expr: trailing input at position " + std::to_string(p.pos_));
        return f;
    }

private:
    explicit ExprParser(std::string src) : src_(std::move(src)) {}

    std::string src_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Fn expr() {
        Fn lhs = term();
        for (;;) {
            if (eat('+')) {
                Fn rhs = term();
                lhs = [lhs, rhs](const Vec& p) { return lhs(p) + rhs(p); };
            } else if (eat('-')) {
                Fn rhs = term();
                lhs = [lhs, rhs](const Vec& p) { return lhs(p) - rhs(p); };
            } else {
                return lhs;
            }
        }
    }

    Fn term() {
        Fn lhs = factor();
        for (;;) {
            if (eat('*')) {
                Fn rhs = factor();
                lhs = [lhs, rhs](const Vec& p) { return lhs(p) * rhs(p); };
            } else if (eat('/')) {
                Fn rhs = factor();
                lhs = [lhs, rhs](const Vec& p) { return lhs(p) / rhs(p); };
            } else {
                return lhs;
            }
        }
    }

    Fn factor() {
        Fn base = unary();
        if (eat('^')) {
            Fn e = factor();  // right associative
            return [base, e](const Vec& p) { return std::pow(base(p), e(p)); };
        }
        return base;
    }

    Fn unary() {
        if (eat('-')) {
            Fn u = unary();
            return [u](const Vec& p) { return -u(p); };
        }
        return primary();
    }

    Fn primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw GGError("expr: unexpected end of input");
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t used = 0;
            double v = std::stod(src_.substr(pos_), &used);
            pos_ += used;
            return [v](const Vec&) { return v; };
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            std::string id = src_.substr(start, pos_ - start);
            if (id == "x") return [](const Vec& p) { return p.x(); };
            if (id == "y") return [](const Vec& p) { return p.y(); };
            if (id == "z") return [](const Vec& p) { return p.z(); };
            if (id == "pi") return [](const Vec&) { return pi(); };
            if (!eat('(')) throw GGError("expr: expected '(' after function " + id);
            Fn a = expr();
            if (!eat(')')) throw GGError("expr: missing ')'");
            if (id == "sin") return [a](const Vec& p) { return std::sin(a(p)); };
            if (id == "cos") return [a](const Vec& p) { return std::cos(a(p)); };
            if (id == "exp") return [a](const Vec& p) { return std::exp(a(p)); };
            if (id == "log") return [a](const Vec& p) { return std::log(a(p)); };
            if (id == "sqrt") return [a](const Vec& p) { return std::sqrt(a(p)); };
            if (id == "abs") return [a](const Vec& p) { return std::abs(a(p)); };
            throw GGError("expr: unknown function " + id);
        }
        if (eat('(')) {
            Fn a = expr();
            if (!eat(')')) throw GGError("expr: missing ')'");
            return a;
        }
        throw GGError(std::string("expr: unexpected character '") + c + "'");
    }
};

inline std::function<double(const Vec&)> parse_expr(const std::string& s) {
    return ExprParser::parse(s);
}

}  // namespace gg
