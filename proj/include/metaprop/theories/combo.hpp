#pragma once

// Propositional combinations of the atoms p_n, read as A_n (Janiczak) or as
// the exact-cycle sentences chi_{n+1} (successor with cycles).

#include "metaprop/logic/templates.hpp"
#include "metaprop/logic/text.hpp"

#include <functional>
#include <memory>

namespace metaprop::theories {

using logic::FormulaPtr;

struct Combo;
using ComboPtr = std::shared_ptr<const Combo>;

struct Combo {
    enum class Kind { Top, Bot, Atom, Not, And, Or };
    Kind kind;
    std::size_t atom = 0;
    std::vector<ComboPtr> subs;
};

inline ComboPtr top() { return std::make_shared<Combo>(Combo{Combo::Kind::Top, 0, {}}); }
inline ComboPtr bot() { return std::make_shared<Combo>(Combo{Combo::Kind::Bot, 0, {}}); }
inline ComboPtr atom(std::size_t n) { return std::make_shared<Combo>(Combo{Combo::Kind::Atom, n, {}}); }
inline ComboPtr cnot(ComboPtr a) { return std::make_shared<Combo>(Combo{Combo::Kind::Not, 0, {std::move(a)}}); }
inline ComboPtr cand(ComboPtr a, ComboPtr b) {
    return std::make_shared<Combo>(Combo{Combo::Kind::And, 0, {std::move(a), std::move(b)}});
}
inline ComboPtr cor(ComboPtr a, ComboPtr b) {
    return std::make_shared<Combo>(Combo{Combo::Kind::Or, 0, {std::move(a), std::move(b)}});
}

inline void support(const ComboPtr& c, std::set<std::size_t>& out) {
    if (c->kind == Combo::Kind::Atom)
        out.insert(c->atom);
    for (const auto& s : c->subs)
        support(s, out);
}
inline std::set<std::size_t> support(const ComboPtr& c) {
    std::set<std::size_t> out;
    support(c, out);
    return out;
}

// Atoms missing from the assignment count as false.
inline bool eval(const ComboPtr& c, const std::map<std::size_t, bool>& v) {
    switch (c->kind) {
    case Combo::Kind::Top: return true;
    case Combo::Kind::Bot: return false;
    case Combo::Kind::Atom: {
        auto it = v.find(c->atom);
        return it != v.end() && it->second;
    }
    case Combo::Kind::Not: return !eval(c->subs[0], v);
    case Combo::Kind::And: return eval(c->subs[0], v) && eval(c->subs[1], v);
    case Combo::Kind::Or: return eval(c->subs[0], v) || eval(c->subs[1], v);
    }
    return false;
}

inline bool equal(const ComboPtr& a, const ComboPtr& b) {
    if (a->kind != b->kind || a->atom != b->atom || a->subs.size() != b->subs.size())
        return false;
    for (std::size_t i = 0; i < a->subs.size(); ++i)
        if (!equal(a->subs[i], b->subs[i]))
            return false;
    return true;
}

// Calls f on every assignment to `atoms` that agrees with `fixed`.
inline bool all_assignments(const std::vector<std::size_t>& atoms, const std::map<std::size_t, bool>& fixed,
                            const std::function<bool(const std::map<std::size_t, bool>&)>& f) {
    std::vector<std::size_t> open;
    std::map<std::size_t, bool> v;
    for (auto a : atoms) {
        if (auto it = fixed.find(a); it != fixed.end())
            v[a] = it->second;
        else
            open.push_back(a);
    }
    if (open.size() > 24)
        throw Error("too many free atoms for a truth table");
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << open.size()); ++bits) {
        for (std::size_t k = 0; k < open.size(); ++k)
            v[open[k]] = (bits >> k) & 1;
        if (!f(v))
            return false;
    }
    return true;
}

// literals |= c, for literals over mutually independent atoms
inline bool entails(const std::map<std::size_t, bool>& literals, const ComboPtr& c) {
    auto s = support(c);
    std::vector<std::size_t> atoms(s.begin(), s.end());
    return all_assignments(atoms, literals, [&](const auto& v) { return eval(c, v); });
}

inline bool tautology(const ComboPtr& c) { return entails({}, c); }
inline bool satisfiable(const ComboPtr& c) { return !entails({}, cnot(c)); }

// ---- text -----------------------------------------------------------------------

inline std::string print(const ComboPtr& c) {
    switch (c->kind) {
    case Combo::Kind::Top: return "top";
    case Combo::Kind::Bot: return "bot";
    case Combo::Kind::Atom: return "p" + std::to_string(c->atom);
    case Combo::Kind::Not: return "(not " + print(c->subs[0]) + ")";
    case Combo::Kind::And: return "(and " + print(c->subs[0]) + " " + print(c->subs[1]) + ")";
    case Combo::Kind::Or: return "(or " + print(c->subs[0]) + " " + print(c->subs[1]) + ")";
    }
    return "?";
}

namespace detail {

inline std::vector<std::string> combo_tokens(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
        } else if (ch == '(' || ch == ')') {
            out.emplace_back(1, ch);
            ++i;
        } else {
            std::size_t j = i;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' && s[j] != ')')
                ++j;
            out.emplace_back(s.substr(i, j - i));
            i = j;
        }
    }
    return out;
}

inline ComboPtr parse_combo(const std::vector<std::string>& t, std::size_t& i) {
    using logic::ParseError;
    if (i >= t.size())
        throw ParseError("unexpected end of combination");
    const std::string& w = t[i++];
    if (w == "top")
        return top();
    if (w == "bot")
        return bot();
    if (w.size() > 1 && w[0] == 'p' && std::all_of(w.begin() + 1, w.end(), ::isdigit))
        return atom(std::stoull(w.substr(1)));
    if (w != "(")
        throw ParseError("unexpected token " + w);
    if (i >= t.size())
        throw ParseError("unexpected end of combination");
    std::string op = t[i++];
    ComboPtr r;
    if (op == "not") {
        r = cnot(parse_combo(t, i));
    } else if (op == "and" || op == "or" || op == "imp") {
        auto a = parse_combo(t, i);
        auto b = parse_combo(t, i);
        r = op == "and" ? cand(a, b) : op == "or" ? cor(a, b) : cor(cnot(a), b);
    } else {
        throw ParseError("unknown connective " + op);
    }
    if (i >= t.size() || t[i++] != ")")
        throw ParseError("expected )");
    return r;
}

}  // namespace detail

// Grammar: top | bot | p<n> | (not c) | (and c c) | (or c c) | (imp c c)
inline ComboPtr parse_combo(std::string_view s) {
    auto t = detail::combo_tokens(s);
    std::size_t i = 0;
    auto c = detail::parse_combo(t, i);
    if (i != t.size())
        throw logic::ParseError("trailing tokens in combination");
    return c;
}

// ---- atom families --------------------------------------------------------------

enum class Family { janiczak_A, succ_cycle_chi };

inline const char* to_string(Family f) { return f == Family::janiczak_A ? "janiczak_A" : "succ_cycle_chi"; }

inline FormulaPtr family_atom(Family f, std::size_t n) {
    return f == Family::janiczak_A ? logic::janiczak_atom(n) : logic::exact_cycle_atom(n + 1);
}

inline FormulaPtr truth_sentence() { return logic::forall("x", logic::eq(logic::var("x"), logic::var("x"))); }

inline FormulaPtr to_sentence(const ComboPtr& c, Family f) {
    using namespace logic;
    switch (c->kind) {
    case Combo::Kind::Top: return truth_sentence();
    case Combo::Kind::Bot: return neg(truth_sentence());
    case Combo::Kind::Atom: return family_atom(f, c->atom);
    case Combo::Kind::Not: return neg(to_sentence(c->subs[0], f));
    case Combo::Kind::And: return conj(to_sentence(c->subs[0], f), to_sentence(c->subs[1], f));
    case Combo::Kind::Or: return disj(to_sentence(c->subs[0], f), to_sentence(c->subs[1], f));
    }
    throw Error("bad combination");
}

namespace detail {

inline std::optional<std::size_t> atom_of(const FormulaPtr& g, Family fam) {
    using K = logic::Formula::Kind;
    if (fam == Family::janiczak_A) {
        std::size_t depth = 0;
        const logic::Formula* h = g.get();
        while (h->kind == K::Exists) {
            ++depth;
            h = h->subs[0].get();
        }
        if (depth == 0 || !logic::equal(g, logic::janiczak_atom(depth - 1)))
            return std::nullopt;
        return depth - 1;
    }
    // exists x (S^n x = x and ...)
    if (g->kind != K::Exists)
        return std::nullopt;
    const logic::Formula* body = g->subs[0].get();
    while (body->kind == K::And)
        body = body->subs[0].get();
    if (body->kind != K::Eq)
        return std::nullopt;
    std::size_t n = 0;
    const logic::Term* t = body->terms[0].get();
    while (t->kind == logic::Term::Kind::App && t->name == "S") {
        ++n;
        t = t->args[0].get();
    }
    if (n == 0 || !logic::equal(g, logic::exact_cycle_atom(n)))
        return std::nullopt;
    return n - 1;
}

}  // namespace detail

// Reads a sentence built from family atoms with not/and/or/imp; nullopt for
// anything else.
inline std::optional<ComboPtr> from_sentence(const FormulaPtr& g, Family f) {
    using K = logic::Formula::Kind;
    if (logic::equal(g, truth_sentence()))
        return top();
    if (auto n = detail::atom_of(g, f))
        return atom(*n);
    switch (g->kind) {
    case K::Not: {
        auto a = from_sentence(g->subs[0], f);
        if (!a)
            return std::nullopt;
        return (*a)->kind == Combo::Kind::Top ? bot() : cnot(*a);
    }
    case K::And:
    case K::Or:
    case K::Imp: {
        auto a = from_sentence(g->subs[0], f), b = from_sentence(g->subs[1], f);
        if (!a || !b)
            return std::nullopt;
        if (g->kind == K::And)
            return cand(*a, *b);
        if (g->kind == K::Or)
            return cor(*a, *b);
        return cor(cnot(*a), *b);
    }
    default: return std::nullopt;
    }
}

// Minterm form over the atoms the table actually depends on.
inline ComboPtr from_table(std::vector<std::size_t> atoms, const std::function<bool(const std::map<std::size_t, bool>&)>& f) {
    // drop atoms the table ignores
    for (std::size_t k = atoms.size(); k-- > 0;) {
        std::vector<std::size_t> rest = atoms;
        rest.erase(rest.begin() + k);
        bool irrelevant = all_assignments(rest, {}, [&](const auto& v) {
            auto a = v, b = v;
            a[atoms[k]] = false;
            b[atoms[k]] = true;
            return f(a) == f(b);
        });
        if (irrelevant)
            atoms = rest;
    }
    std::vector<ComboPtr> terms;
    all_assignments(atoms, {}, [&](const auto& v) {
        if (!f(v))
            return true;
        ComboPtr t;
        for (auto a : atoms) {
            ComboPtr l = v.at(a) ? atom(a) : cnot(atom(a));
            t = t ? cand(t, l) : l;
        }
        terms.push_back(t ? t : top());
        return true;
    });
    if (terms.empty())
        return bot();
    if (atoms.empty())
        return top();
    ComboPtr r = terms.back();
    for (std::size_t i = terms.size() - 1; i-- > 0;)
        r = cor(terms[i], r);
    return r;
}

}  // namespace metaprop::theories
