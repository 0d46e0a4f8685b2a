#pragma once

#include "metaprop/natural.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace metaprop::logic {

struct Term;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Term {
    enum class Kind { Var, App };
    Kind kind;
    std::string name;  // variable name or function/constant symbol
    std::vector<TermPtr> args;
};

struct Formula {
    enum class Kind { Eq, Le, Rel, Not, And, Or, Imp, Exists, Forall, ExistsLe, ForallLe };
    Kind kind;
    std::string name;            // relation symbol, or bound variable for quantifiers
    std::vector<TermPtr> terms;  // atom arguments; bound term for bounded quantifiers
    std::vector<FormulaPtr> subs;
};

class MissingSymbol : public Error {
public:
    explicit MissingSymbol(const std::string& s) : Error("missing symbol: " + s) {}
};

// Symbols of a first-order language. A family "P" admits every name P<digits>.
struct Signature {
    std::map<std::string, int> functions;  // constants have arity 0
    std::map<std::string, int> relations;  // "=" is always present
    std::map<std::string, int> constant_families;
    std::map<std::string, int> relation_families;

    static bool family_member(const std::string& name, const std::string& prefix) {
        if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0)
            return false;
        for (std::size_t i = prefix.size(); i < name.size(); ++i)
            if (name[i] < '0' || name[i] > '9')
                return false;
        return true;
    }

    std::optional<int> function_arity(const std::string& f) const {
        if (auto it = functions.find(f); it != functions.end())
            return it->second;
        for (const auto& [p, a] : constant_families)
            if (family_member(f, p))
                return a;
        return std::nullopt;
    }
    std::optional<int> relation_arity(const std::string& r) const {
        if (r == "=")
            return 2;
        if (auto it = relations.find(r); it != relations.end())
            return it->second;
        for (const auto& [p, a] : relation_families)
            if (family_member(r, p))
                return a;
        return std::nullopt;
    }

    static Signature arithmetic() {
        Signature s;
        s.functions = {{"0", 0}, {"S", 1}, {"+", 2}, {"*", 2}};
        s.relations = {{"<=", 2}};
        return s;
    }
    static Signature successor() {
        Signature s;
        s.functions = {{"0", 0}, {"S", 1}};
        return s;
    }
    static Signature janiczak() {
        Signature s;
        s.relations = {{"E", 2}};
        return s;
    }
    // Succ plus a binary predicate P.
    static Signature successor_with_p() {
        Signature s = successor();
        s.relations = {{"P", 2}};
        return s;
    }
    // Monadic predicates P<i> and individual constants c<n>.
    static Signature putnam() {
        Signature s;
        s.constant_families = {{"c", 0}};
        s.relation_families = {{"P", 1}};
        return s;
    }
};

// ---- construction -------------------------------------------------------

inline TermPtr var(std::string name) {
    return std::make_shared<const Term>(Term{Term::Kind::Var, std::move(name), {}});
}
inline TermPtr app(std::string f, std::vector<TermPtr> args = {}) {
    return std::make_shared<const Term>(Term{Term::Kind::App, std::move(f), std::move(args)});
}
inline TermPtr zero() { return app("0"); }
inline TermPtr succ(TermPtr t) { return app("S", {std::move(t)}); }
inline TermPtr plus(TermPtr a, TermPtr b) { return app("+", {std::move(a), std::move(b)}); }
inline TermPtr times(TermPtr a, TermPtr b) { return app("*", {std::move(a), std::move(b)}); }

inline TermPtr succ_n(TermPtr t, const Natural& n) {
    for (Natural k = 0; k < n; ++k)
        t = succ(t);
    return t;
}

inline TermPtr numeral(const Natural& n) { return succ_n(zero(), n); }

inline TermPtr numeral(const Natural& n, const Signature& sig) {
    if (sig.function_arity("0") != 0)
        throw MissingSymbol("0");
    if (sig.function_arity("S") != 1)
        throw MissingSymbol("S");
    return numeral(n);
}

namespace detail {
inline FormulaPtr mk(Formula::Kind k, std::string name, std::vector<TermPtr> ts, std::vector<FormulaPtr> fs) {
    return std::make_shared<const Formula>(Formula{k, std::move(name), std::move(ts), std::move(fs)});
}
}  // namespace detail

inline FormulaPtr eq(TermPtr a, TermPtr b) { return detail::mk(Formula::Kind::Eq, "=", {std::move(a), std::move(b)}, {}); }
inline FormulaPtr le(TermPtr a, TermPtr b) { return detail::mk(Formula::Kind::Le, "<=", {std::move(a), std::move(b)}, {}); }
inline FormulaPtr rel(std::string r, std::vector<TermPtr> args) {
    return detail::mk(Formula::Kind::Rel, std::move(r), std::move(args), {});
}
inline FormulaPtr neg(FormulaPtr f) { return detail::mk(Formula::Kind::Not, "", {}, {std::move(f)}); }
inline FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return detail::mk(Formula::Kind::And, "", {}, {std::move(a), std::move(b)}); }
inline FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return detail::mk(Formula::Kind::Or, "", {}, {std::move(a), std::move(b)}); }
inline FormulaPtr imp(FormulaPtr a, FormulaPtr b) { return detail::mk(Formula::Kind::Imp, "", {}, {std::move(a), std::move(b)}); }
inline FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return conj(imp(a, b), imp(b, a)); }
inline FormulaPtr exists(std::string x, FormulaPtr f) { return detail::mk(Formula::Kind::Exists, std::move(x), {}, {std::move(f)}); }
inline FormulaPtr forall(std::string x, FormulaPtr f) { return detail::mk(Formula::Kind::Forall, std::move(x), {}, {std::move(f)}); }
namespace detail {
inline bool mentions(const TermPtr& t, const std::string& x) {
    if (t->kind == Term::Kind::Var)
        return t->name == x;
    for (const auto& a : t->args)
        if (mentions(a, x))
            return true;
    return false;
}
inline void check_bound(const std::string& x, const TermPtr& t) {
    if (mentions(t, x))
        throw Error("bound term mentions its own variable: " + x);
}
}  // namespace detail

inline FormulaPtr exists_le(std::string x, TermPtr t, FormulaPtr f) {
    detail::check_bound(x, t);
    return detail::mk(Formula::Kind::ExistsLe, std::move(x), {std::move(t)}, {std::move(f)});
}
inline FormulaPtr forall_le(std::string x, TermPtr t, FormulaPtr f) {
    detail::check_bound(x, t);
    return detail::mk(Formula::Kind::ForallLe, std::move(x), {std::move(t)}, {std::move(f)});
}
inline FormulaPtr neq(TermPtr a, TermPtr b) { return neg(eq(std::move(a), std::move(b))); }

// Right-nested; a list must be non-empty.
inline FormulaPtr conj_all(const std::vector<FormulaPtr>& fs) {
    if (fs.empty())
        throw Error("conj_all of empty list");
    FormulaPtr r = fs.back();
    for (std::size_t i = fs.size() - 1; i-- > 0;)
        r = conj(fs[i], r);
    return r;
}
inline FormulaPtr disj_all(const std::vector<FormulaPtr>& fs) {
    if (fs.empty())
        throw Error("disj_all of empty list");
    FormulaPtr r = fs.back();
    for (std::size_t i = fs.size() - 1; i-- > 0;)
        r = disj(fs[i], r);
    return r;
}

// forall z < y. phi  is written  forall z <= y (z = y or phi)
inline FormulaPtr forall_lt(const std::string& z, TermPtr y, FormulaPtr phi) {
    return forall_le(z, y, disj(eq(var(z), y), std::move(phi)));
}

inline bool is_quantifier(Formula::Kind k) {
    return k == Formula::Kind::Exists || k == Formula::Kind::Forall || k == Formula::Kind::ExistsLe ||
           k == Formula::Kind::ForallLe;
}
inline bool is_atom(Formula::Kind k) { return k == Formula::Kind::Eq || k == Formula::Kind::Le || k == Formula::Kind::Rel; }

// ---- structural equality --------------------------------------------------

inline bool equal(const TermPtr& a, const TermPtr& b) {
    const Term* x = a.get();
    const Term* y = b.get();
    // walk unary chains without recursion
    while (x != y) {
        if (x->kind != y->kind || x->name != y->name || x->args.size() != y->args.size())
            return false;
        if (x->args.size() == 1) {
            x = x->args[0].get();
            y = y->args[0].get();
            continue;
        }
        for (std::size_t i = 0; i < x->args.size(); ++i)
            if (!equal(x->args[i], y->args[i]))
                return false;
        return true;
    }
    return true;
}

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get())
        return true;
    if (a->kind != b->kind || a->name != b->name || a->terms.size() != b->terms.size() || a->subs.size() != b->subs.size())
        return false;
    for (std::size_t i = 0; i < a->terms.size(); ++i)
        if (!equal(a->terms[i], b->terms[i]))
            return false;
    for (std::size_t i = 0; i < a->subs.size(); ++i)
        if (!equal(a->subs[i], b->subs[i]))
            return false;
    return true;
}

// ---- variables --------------------------------------------------------------

inline void collect_vars(const TermPtr& t, std::set<std::string>& out) {
    const Term* x = t.get();
    while (true) {
        if (x->kind == Term::Kind::Var) {
            out.insert(x->name);
            return;
        }
        if (x->args.size() == 1) {
            x = x->args[0].get();
            continue;
        }
        for (const auto& a : x->args)
            collect_vars(a, out);
        return;
    }
}

inline void collect_free(const FormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
    if (is_atom(f->kind)) {
        std::set<std::string> vs;
        for (const auto& t : f->terms)
            collect_vars(t, vs);
        for (const auto& v : vs)
            if (!bound.count(v))
                out.insert(v);
        return;
    }
    if (is_quantifier(f->kind)) {
        if (!f->terms.empty()) {
            std::set<std::string> vs;
            collect_vars(f->terms[0], vs);
            for (const auto& v : vs)
                if (!bound.count(v))
                    out.insert(v);
        }
        bool fresh = bound.insert(f->name).second;
        collect_free(f->subs[0], bound, out);
        if (fresh)
            bound.erase(f->name);
        return;
    }
    for (const auto& s : f->subs)
        collect_free(s, bound, out);
}

inline std::set<std::string> free_vars(const FormulaPtr& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

inline bool is_sentence(const FormulaPtr& f) { return free_vars(f).empty(); }

inline void collect_all_vars(const FormulaPtr& f, std::set<std::string>& out) {
    for (const auto& t : f->terms)
        collect_vars(t, out);
    if (is_quantifier(f->kind))
        out.insert(f->name);
    for (const auto& s : f->subs)
        collect_all_vars(s, out);
}

// ---- substitution -------------------------------------------------------------

inline TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& by) {
    if (t->kind == Term::Kind::Var)
        return t->name == x ? by : t;
    if (t->args.empty())
        return t;
    // unary chains (numerals, S^k x) iteratively
    if (t->args.size() == 1) {
        std::vector<const Term*> chain;
        const Term* cur = t.get();
        while (cur->kind == Term::Kind::App && cur->args.size() == 1) {
            chain.push_back(cur);
            cur = cur->args[0].get();
        }
        TermPtr base = chain.back()->args[0];
        TermPtr nb = substitute(base, x, by);
        if (nb == base)
            return t;
        for (std::size_t i = chain.size(); i-- > 0;)
            nb = app(chain[i]->name, {nb});
        return nb;
    }
    std::vector<TermPtr> args;
    bool changed = false;
    for (const auto& a : t->args) {
        args.push_back(substitute(a, x, by));
        changed = changed || args.back() != a;
    }
    return changed ? app(t->name, std::move(args)) : t;
}

inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    for (int i = 0;; ++i) {
        std::string c = base + "_" + std::to_string(i);
        if (!avoid.count(c))
            return c;
    }
}

// Capture-avoiding: bound variables occurring in `by` are renamed.
inline FormulaPtr substitute(const FormulaPtr& f, const std::string& x, const TermPtr& by) {
    if (is_atom(f->kind)) {
        std::vector<TermPtr> ts;
        for (const auto& t : f->terms)
            ts.push_back(substitute(t, x, by));
        return detail::mk(f->kind, f->name, std::move(ts), {});
    }
    if (is_quantifier(f->kind)) {
        std::vector<TermPtr> ts;
        for (const auto& t : f->terms)
            ts.push_back(substitute(t, x, by));
        std::set<std::string> by_vars;
        collect_vars(by, by_vars);
        bool x_in_body = f->name != x && free_vars(f->subs[0]).count(x);
        bool clash = by_vars.count(f->name) && (x_in_body || (!ts.empty() && detail::mentions(ts[0], f->name)));
        if (clash) {
            std::set<std::string> avoid = by_vars;
            collect_all_vars(f, avoid);
            avoid.insert(x);
            std::string y = fresh_name(f->name, avoid);
            FormulaPtr body = substitute(f->subs[0], f->name, var(y));
            if (x_in_body)
                body = substitute(body, x, by);
            return detail::mk(f->kind, y, std::move(ts), {body});
        }
        if (!x_in_body)
            return detail::mk(f->kind, f->name, std::move(ts), f->subs);
        return detail::mk(f->kind, f->name, std::move(ts), {substitute(f->subs[0], x, by)});
    }
    std::vector<FormulaPtr> subs;
    for (const auto& s : f->subs)
        subs.push_back(substitute(s, x, by));
    return detail::mk(f->kind, f->name, {}, std::move(subs));
}

// Number of nested quantifiers on the deepest branch.
inline std::size_t quantifier_rank(const FormulaPtr& f) {
    std::size_t r = 0;
    for (const auto& s : f->subs)
        r = std::max(r, quantifier_rank(s));
    return r + (is_quantifier(f->kind) ? 1 : 0);
}

inline std::set<std::string> symbols_used(const FormulaPtr& f) {
    std::set<std::string> out;
    std::vector<const Term*> stack;
    std::vector<const Formula*> fstack{f.get()};
    while (!fstack.empty()) {
        const Formula* g = fstack.back();
        fstack.pop_back();
        if (is_atom(g->kind))
            out.insert(g->name);
        for (const auto& t : g->terms)
            stack.push_back(t.get());
        for (const auto& s : g->subs)
            fstack.push_back(s.get());
    }
    while (!stack.empty()) {
        const Term* t = stack.back();
        stack.pop_back();
        if (t->kind == Term::Kind::App)
            out.insert(t->name);
        for (const auto& a : t->args)
            stack.push_back(a.get());
    }
    return out;
}

}  // namespace metaprop::logic
