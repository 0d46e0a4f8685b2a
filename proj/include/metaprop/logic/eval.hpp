#pragma once

// Truth in the standard model <N, 0, S, +, *, <=>.

#include "metaprop/logic/classify.hpp"

#include <map>
#include <optional>

namespace metaprop::logic {

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(const std::string& v) : Error("unbound variable: " + v) {}
};
class UnsupportedSymbol : public Error {
public:
    explicit UnsupportedSymbol(const std::string& s) : Error("unsupported symbol: " + s) {}
};
class NotDelta0 : public Error {
public:
    NotDelta0() : Error("formula is not delta0") {}
    explicit NotDelta0(const std::string& what) : Error(what) {}
};

using Env = std::map<std::string, Natural>;

inline Natural eval_term(const TermPtr& t, const Env& env) {
    const Term* cur = t.get();
    Natural offset = 0;
    while (cur->kind == Term::Kind::App && cur->name == "S" && cur->args.size() == 1) {
        ++offset;
        cur = cur->args[0].get();
    }
    Natural base;
    if (cur->kind == Term::Kind::Var) {
        auto it = env.find(cur->name);
        if (it == env.end())
            throw UnboundVariable(cur->name);
        base = it->second;
    } else if (cur->name == "0" && cur->args.empty()) {
        base = 0;
    } else if (cur->name == "+" && cur->args.size() == 2) {
        base = eval_term(cur->args[0], env) + eval_term(cur->args[1], env);
    } else if (cur->name == "*" && cur->args.size() == 2) {
        base = eval_term(cur->args[0], env) * eval_term(cur->args[1], env);
    } else {
        throw UnsupportedSymbol(cur->name);
    }
    return base + offset;
}

inline Natural eval_ground(const TermPtr& t) { return eval_term(t, {}); }

namespace detail {

inline bool eval_d0(const FormulaPtr& f, Env& env) {
    using K = Formula::Kind;
    switch (f->kind) {
    case K::Eq:
        return eval_term(f->terms[0], env) == eval_term(f->terms[1], env);
    case K::Le:
        return eval_term(f->terms[0], env) <= eval_term(f->terms[1], env);
    case K::Rel:
        throw UnsupportedSymbol(f->name);
    case K::Not:
        return !eval_d0(f->subs[0], env);
    case K::And:
        return eval_d0(f->subs[0], env) && eval_d0(f->subs[1], env);
    case K::Or:
        return eval_d0(f->subs[0], env) || eval_d0(f->subs[1], env);
    case K::Imp:
        return !eval_d0(f->subs[0], env) || eval_d0(f->subs[1], env);
    case K::ExistsLe:
    case K::ForallLe: {
        Natural bound = eval_term(f->terms[0], env);
        bool want = f->kind == K::ExistsLe;
        std::optional<Natural> saved;
        if (auto it = env.find(f->name); it != env.end())
            saved = it->second;
        bool result = !want;
        for (Natural k = 0; k <= bound; ++k) {
            env[f->name] = k;
            if (eval_d0(f->subs[0], env) == want) {
                result = want;
                break;
            }
        }
        if (saved)
            env[f->name] = *saved;
        else
            env.erase(f->name);
        return result;
    }
    case K::Exists:
    case K::Forall:
        throw NotDelta0();
    }
    return false;
}

}  // namespace detail

inline bool eval_delta0(const FormulaPtr& f, const Env& env = {}) {
    Env e = env;
    return detail::eval_d0(f, e);
}

struct Sigma1Result {
    bool found = false;
    std::vector<Natural> witness;  // one value per leading existential, outermost first
};

// Searches witness tuples by increasing maximum component, lexicographically
// within a maximum, so the first hit is stable as the bound grows.
inline Sigma1Result eval_sigma1(const FormulaPtr& f, const Natural& bound, const Env& env = {}) {
    auto shape = sigma1_shape(f);
    if (!is_delta0(shape.matrix))
        throw NotDelta0();
    std::size_t k = shape.vars.size();
    Env e = env;
    if (k == 0) {
        Sigma1Result r;
        r.found = detail::eval_d0(shape.matrix, e);
        return r;
    }
    std::vector<Natural> tup(k);
    auto test = [&] {
        for (std::size_t i = 0; i < k; ++i)
            e[shape.vars[i]] = tup[i];
        return detail::eval_d0(shape.matrix, e);
    };
    for (Natural m = 0; m <= bound; ++m) {
        if (k == 1) {
            tup[0] = m;
            if (test())
                return Sigma1Result{true, tup};
            continue;
        }
        // odometer over [0,m]^k, testing only tuples that reach m
        std::fill(tup.begin(), tup.end(), Natural(0));
        while (true) {
            if (std::find(tup.begin(), tup.end(), m) != tup.end() && test())
                return Sigma1Result{true, tup};
            std::size_t i = k;
            while (i > 0 && tup[i - 1] == m)
                tup[--i] = 0;
            if (i == 0)
                break;
            ++tup[i - 1];
        }
    }
    return {};
}

}  // namespace metaprop::logic
