#pragma once

// Parenthesized prefix syntax:
//   term    := 0 | ident | (S t) | (+ t u) | (* t u) | (f t ...)
//   formula := (= t u) | (<= t u) | (R t ...) | (not F) | (and F G) | (or F G)
//            | (imp F G) | (exists x F) | (forall x F)
//            | (existsle x t F) | (foralle x t F)
// print() is the exact inverse of parse() on printed text.

#include "metaprop/logic/syntax.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace metaprop::logic {

class ParseError : public Error {
public:
    explicit ParseError(const std::string& m) : Error("parse error: " + m) {}
};

inline void print_term(const TermPtr& t, std::string& out) {
    const Term* cur = t.get();
    std::size_t close = 0;
    while (cur->kind == Term::Kind::App && cur->args.size() == 1) {
        out += '(';
        out += cur->name;
        out += ' ';
        ++close;
        cur = cur->args[0].get();
    }
    if (cur->kind == Term::Kind::Var || cur->args.empty()) {
        out += cur->name;
    } else {
        out += '(';
        out += cur->name;
        for (const auto& a : cur->args) {
            out += ' ';
            print_term(a, out);
        }
        out += ')';
    }
    out.append(close, ')');
}

inline std::string print(const TermPtr& t) {
    std::string s;
    print_term(t, s);
    return s;
}

inline const char* keyword(Formula::Kind k) {
    switch (k) {
    case Formula::Kind::Not: return "not";
    case Formula::Kind::And: return "and";
    case Formula::Kind::Or: return "or";
    case Formula::Kind::Imp: return "imp";
    case Formula::Kind::Exists: return "exists";
    case Formula::Kind::Forall: return "forall";
    case Formula::Kind::ExistsLe: return "existsle";
    case Formula::Kind::ForallLe: return "foralle";
    default: return "";
    }
}

inline void print_formula(const FormulaPtr& f, std::string& out) {
    out += '(';
    if (is_atom(f->kind)) {
        out += f->name;
        for (const auto& t : f->terms) {
            out += ' ';
            print_term(t, out);
        }
    } else {
        out += keyword(f->kind);
        if (is_quantifier(f->kind)) {
            out += ' ';
            out += f->name;
            if (!f->terms.empty()) {
                out += ' ';
                print_term(f->terms[0], out);
            }
        }
        for (const auto& s : f->subs) {
            out += ' ';
            print_formula(s, out);
        }
    }
    out += ')';
}

inline std::string print(const FormulaPtr& f) {
    std::string s;
    print_formula(f, s);
    return s;
}

namespace detail {

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }
    bool at_end() {
        skip();
        return i_ >= s_.size();
    }
    char peek() {
        skip();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    void expect(char c) {
        if (peek() != c)
            throw ParseError(std::string("expected '") + c + "' at offset " + std::to_string(i_));
        ++i_;
    }
    std::string word() {
        skip();
        std::size_t b = i_;
        while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')')
            ++i_;
        if (b == i_)
            throw ParseError("expected a symbol at offset " + std::to_string(b));
        return std::string(s_.substr(b, i_ - b));
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

inline bool is_ident(const std::string& w) {
    if (w.empty() || !(std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_'))
        return false;
    for (char c : w)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''))
            return false;
    return true;
}

inline TermPtr parse_term(Lexer& lx, const Signature& sig) {
    if (lx.peek() != '(') {
        std::string w = lx.word();
        if (auto a = sig.function_arity(w)) {
            if (*a != 0)
                throw ParseError("function symbol used as constant: " + w);
            return app(w);
        }
        if (!is_ident(w))
            throw ParseError("bad term token: " + w);
        return var(w);
    }
    // Unary chains such as long numerals are parsed without recursion.
    std::vector<std::string> chain;
    while (true) {
        lx.expect('(');
        std::string f = lx.word();
        auto a = sig.function_arity(f);
        if (!a)
            throw ParseError("unknown function symbol: " + f);
        if (*a == 1 && lx.peek() == '(') {
            chain.push_back(f);
            continue;
        }
        std::vector<TermPtr> args;
        for (int k = 0; k < *a; ++k)
            args.push_back(parse_term(lx, sig));
        lx.expect(')');
        TermPtr t = app(f, std::move(args));
        for (std::size_t i = chain.size(); i-- > 0;) {
            lx.expect(')');
            t = app(chain[i], {t});
        }
        return t;
    }
}

inline FormulaPtr parse_formula(Lexer& lx, const Signature& sig) {
    lx.expect('(');
    std::string h = lx.word();
    FormulaPtr out;
    auto bound_var = [&] {
        std::string x = lx.word();
        if (!is_ident(x) || sig.function_arity(x))
            throw ParseError("bad bound variable: " + x);
        return x;
    };
    if (h == "not") {
        out = neg(parse_formula(lx, sig));
    } else if (h == "and" || h == "or" || h == "imp") {
        auto a = parse_formula(lx, sig);
        auto b = parse_formula(lx, sig);
        out = h == "and" ? conj(a, b) : h == "or" ? disj(a, b) : imp(a, b);
    } else if (h == "exists" || h == "forall") {
        std::string x = bound_var();
        auto body = parse_formula(lx, sig);
        out = h == "exists" ? exists(x, body) : forall(x, body);
    } else if (h == "existsle" || h == "foralle") {
        std::string x = bound_var();
        TermPtr t = parse_term(lx, sig);
        if (detail::mentions(t, x))
            throw ParseError("bound term mentions its own variable: " + x);
        auto body = parse_formula(lx, sig);
        out = h == "existsle" ? exists_le(x, t, body) : forall_le(x, t, body);
    } else {
        auto a = sig.relation_arity(h);
        if (!a)
            throw ParseError("unknown relation symbol: " + h);
        std::vector<TermPtr> args;
        for (int k = 0; k < *a; ++k)
            args.push_back(parse_term(lx, sig));
        if (h == "=")
            out = eq(args[0], args[1]);
        else if (h == "<=")
            out = le(args[0], args[1]);
        else
            out = rel(h, std::move(args));
    }
    lx.expect(')');
    return out;
}

}  // namespace detail

inline FormulaPtr parse(std::string_view text, const Signature& sig = Signature::arithmetic()) {
    detail::Lexer lx(text);
    auto f = detail::parse_formula(lx, sig);
    if (!lx.at_end())
        throw ParseError("trailing input");
    return f;
}

inline TermPtr parse_term(std::string_view text, const Signature& sig = Signature::arithmetic()) {
    detail::Lexer lx(text);
    auto t = detail::parse_term(lx, sig);
    if (!lx.at_end())
        throw ParseError("trailing input");
    return t;
}

}  // namespace metaprop::logic
