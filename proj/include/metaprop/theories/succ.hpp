#pragma once

// The successor theories Succ and Succ-minus over {0, S}. Succ is the
// complete theory of (N, 0, S), so succ_decide evaluates by quantifier
// elimination in N.

#include "metaprop/logic/text.hpp"

namespace metaprop::theories {

using namespace logic;

class WrongSignature : public Error {
public:
    using Error::Error;
};

struct Axiom {
    std::string label;
    FormulaPtr sentence;
};

// S4.n = forall x (S^n x != x), n >= 1
inline FormulaPtr succ_s4(std::size_t n) {
    if (n == 0)
        throw Error("S4.n needs n >= 1");
    return forall("x", neq(succ_n(var("x"), n), var("x")));
}

inline std::vector<Axiom> succ_minus_axioms() {
    auto x = var("x"), y = var("y");
    return {
        {"S1", forall("x", forall("y", imp(eq(succ(x), succ(y)), eq(x, y))))},
        {"S2", forall("x", neq(succ(x), zero()))},
        {"S3", forall("x", imp(neq(x, zero()), exists("y", eq(x, succ(y)))))},
    };
}

// S1-S3 and S4.1 .. S4.upto
inline std::vector<Axiom> succ_axioms(std::size_t upto) {
    auto out = succ_minus_axioms();
    for (std::size_t n = 1; n <= upto; ++n)
        out.push_back({"S4." + std::to_string(n), succ_s4(n)});
    return out;
}

// ---- quantifier elimination -----------------------------------------------------

namespace qe {

// S^off(base), base a variable or 0
struct STerm {
    std::optional<std::string> base;
    std::uint64_t off = 0;
    bool operator<(const STerm& o) const { return std::tie(base, off) < std::tie(o.base, o.off); }
    bool operator==(const STerm& o) const { return base == o.base && off == o.off; }
};

// lhs = rhs when pos, lhs != rhs otherwise
struct Lit {
    STerm lhs, rhs;
    bool pos = true;
    bool operator<(const Lit& o) const { return std::tie(lhs, rhs, pos) < std::tie(o.lhs, o.rhs, o.pos); }
    bool operator==(const Lit& o) const { return lhs == o.lhs && rhs == o.rhs && pos == o.pos; }
};

using Conj = std::set<Lit>;
using Dnf = std::vector<Conj>;  // empty: false; an empty conjunct: true

inline STerm to_sterm(const TermPtr& t) {
    STerm s;
    const Term* cur = t.get();
    while (cur->kind == Term::Kind::App && cur->name == "S" && cur->args.size() == 1) {
        ++s.off;
        cur = cur->args[0].get();
    }
    if (cur->kind == Term::Kind::Var)
        s.base = cur->name;
    else if (cur->name != "0" || !cur->args.empty())
        throw WrongSignature("symbol outside {0, S}: " + cur->name);
    return s;
}

// Cancels common successors and orders the sides; nullopt when the literal is decided.
inline std::optional<Lit> normalize(Lit l, bool& value) {
    auto c = std::min(l.lhs.off, l.rhs.off);
    l.lhs.off -= c;
    l.rhs.off -= c;
    if (l.lhs.base == l.rhs.base) {
        value = (l.lhs.off == l.rhs.off) == l.pos;
        return std::nullopt;
    }
    if (l.rhs < l.lhs)
        std::swap(l.lhs, l.rhs);
    return l;
}

// nullopt when the conjunct is false
inline std::optional<Conj> simplify(const Conj& c) {
    Conj out;
    for (const auto& l : c) {
        bool v = true;
        auto n = normalize(l, v);
        if (!n) {
            if (!v)
                return std::nullopt;
            continue;
        }
        Lit neg = *n;
        neg.pos = !neg.pos;
        if (out.count(neg))
            return std::nullopt;
        out.insert(*n);
    }
    return out;
}

inline Dnf clean(const Dnf& d) {
    std::set<Conj> seen;
    Dnf out;
    for (const auto& c : d) {
        auto s = simplify(c);
        if (!s)
            continue;
        if (s->empty())
            return Dnf{Conj{}};
        if (seen.insert(*s).second)
            out.push_back(*s);
    }
    return out;
}

inline Dnf dnf_and(const Dnf& a, const Dnf& b) {
    Dnf out;
    for (const auto& x : a)
        for (const auto& y : b) {
            Conj c = x;
            c.insert(y.begin(), y.end());
            out.push_back(std::move(c));
        }
    return clean(out);
}

inline Dnf dnf_or(Dnf a, const Dnf& b) {
    a.insert(a.end(), b.begin(), b.end());
    return clean(a);
}

inline Dnf dnf_not(const Dnf& d) {
    Dnf acc{Conj{}};
    for (const auto& c : d) {
        Dnf alt;
        for (auto l : c) {
            l.pos = !l.pos;
            alt.push_back(Conj{l});
        }
        acc = dnf_and(acc, alt);
        if (acc.empty())
            break;
    }
    return acc;
}

inline STerm shift(STerm t, std::uint64_t k) {
    t.off += k;
    return t;
}

// exists x of one conjunct
inline Dnf eliminate(const Conj& c, const std::string& x) {
    std::vector<Lit> with, without;
    for (const auto& l : c)
        ((l.lhs.base == x || l.rhs.base == x) ? with : without).push_back(l);
    // orient x-literals as S^a x (=|!=) S^b u
    for (auto& l : with)
        if (l.lhs.base != x)
            std::swap(l.lhs, l.rhs);
    auto pivot = std::find_if(with.begin(), with.end(), [](const Lit& l) { return l.pos; });
    Conj out(without.begin(), without.end());
    if (pivot == with.end())
        return clean(Dnf{out});  // finitely many exclusions: N has room
    std::uint64_t a = pivot->lhs.off;
    STerm u = pivot->rhs;
    if (a <= u.off) {
        // x = S^(b-a) u'
        STerm val{u.base, u.off - a};
        for (const auto& l : with)
            if (&l != &*pivot)
                out.insert(Lit{shift(val, l.lhs.off), l.rhs, l.pos});
    } else {
        // S^a x = u with u = S^b v and b < a: v = S^(a-b) x, so v >= a-b
        std::uint64_t k = a - u.off;
        STerm v{u.base, 0};
        if (!v.base)
            return {};
        for (std::uint64_t i = 0; i < k; ++i)
            out.insert(Lit{v, STerm{std::nullopt, i}, false});
        // S^c x (.) w  <=>  S^(c+k) x (.) S^k w  <=>  S^c v (.) S^k w
        for (const auto& l : with)
            if (&l != &*pivot)
                out.insert(Lit{STerm{v.base, l.lhs.off}, shift(l.rhs, k), l.pos});
    }
    return clean(Dnf{out});
}

inline Dnf to_dnf(const FormulaPtr& f) {
    using K = Formula::Kind;
    switch (f->kind) {
    case K::Eq: return clean(Dnf{Conj{Lit{to_sterm(f->terms[0]), to_sterm(f->terms[1]), true}}});
    case K::Not: return dnf_not(to_dnf(f->subs[0]));
    case K::And: return dnf_and(to_dnf(f->subs[0]), to_dnf(f->subs[1]));
    case K::Or: return dnf_or(to_dnf(f->subs[0]), to_dnf(f->subs[1]));
    case K::Imp: return dnf_or(dnf_not(to_dnf(f->subs[0])), to_dnf(f->subs[1]));
    case K::Exists:
    case K::Forall: {
        bool ex = f->kind == K::Exists;
        Dnf body = to_dnf(f->subs[0]);
        if (!ex)
            body = dnf_not(body);
        Dnf out;
        for (const auto& c : body)
            out = dnf_or(out, eliminate(c, f->name));
        return ex ? out : dnf_not(out);
    }
    case K::Rel:
        throw WrongSignature("relation symbol outside {0, S}: " + f->name);
    default: throw WrongSignature("only = over {0, S} is allowed");
    }
}

}  // namespace qe

enum class Decision { provable, refutable };

inline const char* to_string(Decision d) { return d == Decision::provable ? "provable" : "refutable"; }

inline Decision succ_decide(const FormulaPtr& phi) {
    if (!is_sentence(phi))
        throw Error("succ_decide needs a sentence");
    auto d = qe::to_dnf(phi);
    return !d.empty() && d[0].empty() ? Decision::provable : Decision::refutable;
}

// ---- bounded-domain evaluation ------------------------------------------------
//
// Let d be the largest successor depth in the sentence. By an
// Ehrenfeucht-Fraisse argument for (N, 0, S): if 0 and the values assigned
// so far have maximum m, and exists x psi holds with psi of quantifier rank
// r - 1, a witness exists in 0 .. m + (d+1) * 2^(r-1). (Tuples whose pairwise
// differences agree up to D_r = (d+1) 2^r - 1 satisfy the same rank-r
// formulas; a witness farther than D_(r-1) from every point can be moved to
// m + D_(r-1) + 1.) Universal quantifiers are the dual case.

namespace detail {

inline std::uint64_t succ_depth(const TermPtr& t) {
    std::uint64_t k = 0;
    const Term* cur = t.get();
    while (cur->kind == Term::Kind::App && cur->name == "S") {
        ++k;
        cur = cur->args[0].get();
    }
    return k;
}

inline std::uint64_t max_depth(const FormulaPtr& f) {
    std::uint64_t d = 0;
    for (const auto& t : f->terms)
        d = std::max(d, succ_depth(t));
    for (const auto& s : f->subs)
        d = std::max(d, max_depth(s));
    return d;
}

inline std::uint64_t sterm_value(const TermPtr& t, const std::map<std::string, std::uint64_t>& env) {
    auto s = qe::to_sterm(t);
    return (s.base ? env.at(*s.base) : 0) + s.off;
}

inline bool eval_bounded(const FormulaPtr& f, std::map<std::string, std::uint64_t>& env, std::uint64_t m,
                         std::uint64_t d) {
    using K = Formula::Kind;
    switch (f->kind) {
    case K::Eq: return sterm_value(f->terms[0], env) == sterm_value(f->terms[1], env);
    case K::Not: return !eval_bounded(f->subs[0], env, m, d);
    case K::And: return eval_bounded(f->subs[0], env, m, d) && eval_bounded(f->subs[1], env, m, d);
    case K::Or: return eval_bounded(f->subs[0], env, m, d) || eval_bounded(f->subs[1], env, m, d);
    case K::Imp: return !eval_bounded(f->subs[0], env, m, d) || eval_bounded(f->subs[1], env, m, d);
    case K::Exists:
    case K::Forall: {
        bool ex = f->kind == K::Exists;
        std::size_t r = quantifier_rank(f);
        std::uint64_t limit = m + (d + 1) * (std::uint64_t(1) << (r - 1));
        auto saved = env.find(f->name) == env.end() ? std::nullopt : std::optional(env[f->name]);
        bool result = !ex;
        for (std::uint64_t v = 0; v <= limit; ++v) {
            env[f->name] = v;
            if (eval_bounded(f->subs[0], env, std::max(m, v), d) == ex) {
                result = ex;
                break;
            }
        }
        if (saved)
            env[f->name] = *saved;
        else
            env.erase(f->name);
        return result;
    }
    default: throw WrongSignature("only = over {0, S} is allowed");
    }
}

}  // namespace detail

// Truth in N by the bounded search above; an oracle independent of the QE.
inline bool succ_eval_bounded(const FormulaPtr& phi) {
    if (!is_sentence(phi))
        throw Error("succ_eval_bounded needs a sentence");
    std::map<std::string, std::uint64_t> env;
    return detail::eval_bounded(phi, env, 0, detail::max_depth(phi));
}

}  // namespace metaprop::theories
