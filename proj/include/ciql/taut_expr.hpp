#ifndef CIQL_TAUT_EXPR_HPP
#define CIQL_TAUT_EXPR_HPP

#include <cctype>
#include <string>

#include "tautcalc.hpp"

// Text expression format for the CLI: generators as psi1, lambda2,
// kappa3, c1, ...; integer/rational literals; operators + - * / ^ with
// standard precedence. Division is supported by constants only.

namespace ciql {

class ExprParser {
public:
    ExprParser(std::string src, int truncation) : s_(std::move(src)), n_(truncation) {}

    GradedPoly parse() {
        GradedPoly p = expr();
        skip_ws();
        if (pos_ != s_.size()) throw math_error("expression: trailing input at position " +
                                                std::to_string(pos_));
        return p;
    }

private:
    GradedPoly expr() {
        GradedPoly p = term();
        for (;;) {
            skip_ws();
            if (accept('+')) p = p + term();
            else if (accept('-')) p = p - term();
            else return p;
        }
    }

    GradedPoly term() {
        GradedPoly p = factor();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                p = p * factor();
            } else if (accept('/')) {
                GradedPoly d = factor();
                if (!d.is_homogeneous(0))
                    throw math_error("expression: division only by rational constants");
                Rat c = d.constant_term();
                if (c.is_zero()) throw math_error("expression: division by zero");
                p = c.inv() * p;
            } else {
                return p;
            }
        }
    }

    GradedPoly factor() {
        skip_ws();
        if (accept('-')) return -factor();
        GradedPoly base = atom();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) throw math_error("expression: exponent must be a non-negative integer");
            int e = std::stoi(s_.substr(start, pos_ - start));
            return base.pow(e);
        }
        return base;
    }

    GradedPoly atom() {
        skip_ws();
        if (accept('(')) {
            GradedPoly p = expr();
            skip_ws();
            if (!accept(')')) throw math_error("expression: expected ')'");
            return p;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return GradedPoly::constant(Rat(BigInt(s_.substr(start, pos_ - start))), n_);
        }
        if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return GradedPoly::generator(resolve(s_.substr(start, pos_ - start)), n_);
        }
        throw math_error("expression: unexpected character at position " + std::to_string(pos_));
    }

    static Gen resolve(const std::string& name) {
        auto suffix_int = [&](std::size_t prefix_len) {
            return std::stoi(name.substr(prefix_len));
        };
        auto has_int_suffix = [&](const std::string& prefix) {
            if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0)
                return false;
            for (std::size_t i = prefix.size(); i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
            return true;
        };
        if (has_int_suffix("psi")) return psi_gen(suffix_int(3));
        if (has_int_suffix("lambda")) return lambda_gen(suffix_int(6));
        if (has_int_suffix("kappa")) return kappa_gen(suffix_int(5));
        if (has_int_suffix("c")) return chern_gen(name, suffix_int(1));
        // formal degree-1 generators (relation table and ad hoc symbols)
        return chern_gen(name, 1);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    std::string s_;
    int n_;
    std::size_t pos_ = 0;
};

inline GradedPoly parse_expression(const std::string& src, int truncation) {
    return ExprParser(src, truncation).parse();
}

}  // namespace ciql

#endif  // CIQL_TAUT_EXPR_HPP
