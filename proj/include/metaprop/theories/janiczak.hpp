#pragma once

// Janiczak's theory J over one binary relation E, and the reduction of
// sentences to Boolean combinations of the A_n.
//
// A sentence of quantifier rank q cannot tell apart J-models that agree on
// which class sizes 1 .. q-1 occur: classes of size >= q look alike to q
// pebbles, and J3 supplies at least q of them. So its truth is a function of
// A_0 .. A_(q-2), read off on one finite census model per bit-vector.

#include "metaprop/theories/combo.hpp"
#include "metaprop/theories/succ.hpp"

#include <variant>

namespace metaprop::theories {

namespace detail {

// "x's class has exactly n elements", n >= 1, members named prefix0.. .
inline FormulaPtr class_of_size(const std::string& x, std::size_t n, const std::string& prefix) {
    auto m = [&](std::size_t i) { return var(prefix + std::to_string(i)); };
    std::vector<FormulaPtr> parts;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            parts.push_back(neq(m(a), m(b)));
    std::vector<FormulaPtr> alts;
    for (std::size_t a = 0; a < n; ++a) {
        parts.push_back(rel("E", {var(x), m(a)}));
        alts.push_back(eq(var("z"), m(a)));
    }
    parts.push_back(forall("z", imp(rel("E", {var(x), var("z")}), disj_all(alts))));
    FormulaPtr f = conj_all(parts);
    for (std::size_t a = n; a-- > 0;)
        f = exists(prefix + std::to_string(a), f);
    return f;
}

}  // namespace detail

// J1 (three sentences), J2.n and J3.n for 1 <= n <= upto
inline std::vector<Axiom> j_axioms(std::size_t upto) {
    auto x = var("x"), y = var("y"), z = var("z");
    auto E = [](TermPtr a, TermPtr b) { return rel("E", {std::move(a), std::move(b)}); };
    std::vector<Axiom> out{
        {"J1.refl", forall("x", E(x, x))},
        {"J1.sym", forall("x", forall("y", imp(E(x, y), E(y, x))))},
        {"J1.trans", forall("x", forall("y", forall("z", imp(conj(E(x, y), E(y, z)), E(x, z)))))},
    };
    for (std::size_t n = 1; n <= upto; ++n) {
        auto two = conj_all({neg(E(x, y)), detail::class_of_size("x", n, "u"), detail::class_of_size("y", n, "v")});
        out.push_back({"J2." + std::to_string(n), neg(exists("x", exists("y", two)))});
    }
    for (std::size_t n = 1; n <= upto; ++n) {
        // heads a_i in distinct classes, each with n distinct members b_i_k
        auto a = [](std::size_t i) { return var("a" + std::to_string(i)); };
        auto b = [](std::size_t i, std::size_t k) { return var("b" + std::to_string(i) + "_" + std::to_string(k)); };
        std::vector<FormulaPtr> parts;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                parts.push_back(neg(E(a(i), a(j))));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                parts.push_back(E(a(i), b(i, k)));
                for (std::size_t l = k + 1; l < n; ++l)
                    parts.push_back(neq(b(i, k), b(i, l)));
            }
        FormulaPtr f = conj_all(parts);
        for (std::size_t i = n; i-- > 0;)
            for (std::size_t k = n; k-- > 0;)
                f = exists("b" + std::to_string(i) + "_" + std::to_string(k), f);
        for (std::size_t i = n; i-- > 0;)
            f = exists("a" + std::to_string(i), f);
        out.push_back({"J3." + std::to_string(n), f});
    }
    return out;
}

// A_n: there is a class of size exactly n + 1.
inline FormulaPtr a_n(std::size_t n) { return janiczak_atom(n); }

// ---- finite models ----------------------------------------------------------------

// An equivalence relation on 0..size-1 given by its class sizes.
struct Census {
    std::vector<std::size_t> classes;  // sizes
    std::vector<std::size_t> owner;    // element -> class
    std::size_t size() const { return owner.size(); }

    explicit Census(std::vector<std::size_t> sizes) : classes(std::move(sizes)) {
        for (std::size_t c = 0; c < classes.size(); ++c)
            owner.insert(owner.end(), classes[c], c);
    }
};

// Classes of the sizes k+1 with bits[k] set, plus q surplus classes of sizes q .. 2q-1.
inline Census census_model(const std::vector<bool>& bits, std::size_t q, std::size_t surplus_from = 0) {
    std::vector<std::size_t> sizes;
    for (std::size_t k = 0; k < bits.size(); ++k)
        if (bits[k])
            sizes.push_back(k + 1);
    std::size_t from = std::max(surplus_from, q);
    for (std::size_t i = 0; i < std::max<std::size_t>(q, 1); ++i)
        sizes.push_back(from + i);
    return Census(std::move(sizes));
}

namespace detail {

inline void check_j_signature(const FormulaPtr& f) {
    using K = Formula::Kind;
    if (f->kind == K::Le)
        throw WrongSignature("<= is not in the language of J");
    if (f->kind == K::Rel && (f->name != "E" || f->terms.size() != 2))
        throw WrongSignature("relation outside {E}: " + f->name);
    for (const auto& t : f->terms)
        if (t->kind != Term::Kind::Var)
            throw WrongSignature("J has no function symbols");
    for (const auto& s : f->subs)
        check_j_signature(s);
}

// Evaluation on a census model. With `prune`, an existential only tries the
// elements already named plus one unnamed element per class, and one class
// among untouched classes of equal size; any other witness is the image of
// one of these under an automorphism fixing the named elements.
inline bool eval_census(const FormulaPtr& f, const Census& m, std::map<std::string, std::size_t>& env, bool prune) {
    using K = Formula::Kind;
    switch (f->kind) {
    case K::Eq: return env.at(f->terms[0]->name) == env.at(f->terms[1]->name);
    case K::Rel: return m.owner[env.at(f->terms[0]->name)] == m.owner[env.at(f->terms[1]->name)];
    case K::Not: return !eval_census(f->subs[0], m, env, prune);
    case K::And: return eval_census(f->subs[0], m, env, prune) && eval_census(f->subs[1], m, env, prune);
    case K::Or: return eval_census(f->subs[0], m, env, prune) || eval_census(f->subs[1], m, env, prune);
    case K::Imp: return !eval_census(f->subs[0], m, env, prune) || eval_census(f->subs[1], m, env, prune);
    case K::Exists:
    case K::Forall: {
        bool ex = f->kind == K::Exists;
        std::vector<std::size_t> cands;
        if (prune) {
            std::set<std::size_t> named;
            for (const auto& [v, e] : env)
                if (v != f->name)
                    named.insert(e);
            cands.assign(named.begin(), named.end());
            std::set<std::size_t> untouched_sizes;
            std::size_t start = 0;
            for (std::size_t c = 0; c < m.classes.size(); ++c) {
                std::size_t used = 0;
                std::optional<std::size_t> fresh;
                for (std::size_t e = start; e < start + m.classes[c]; ++e) {
                    if (named.count(e))
                        ++used;
                    else if (!fresh)
                        fresh = e;
                }
                bool take = fresh.has_value();
                if (take && used == 0)
                    take = untouched_sizes.insert(m.classes[c]).second;
                if (take)
                    cands.push_back(*fresh);
                start += m.classes[c];
            }
        } else {
            for (std::size_t e = 0; e < m.size(); ++e)
                cands.push_back(e);
        }
        auto saved = env.find(f->name) == env.end() ? std::nullopt : std::optional(env[f->name]);
        bool result = !ex;
        for (auto e : cands) {
            env[f->name] = e;
            if (eval_census(f->subs[0], m, env, prune) == ex) {
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
    default: throw WrongSignature("unsupported connective for J");
    }
}

}  // namespace detail

inline bool holds_in(const FormulaPtr& phi, const Census& m, bool prune = true) {
    detail::check_j_signature(phi);
    if (!is_sentence(phi))
        throw Error("needs a sentence");
    std::map<std::string, std::size_t> env;
    return detail::eval_census(phi, m, env, prune);
}

struct Exhausted {
    std::size_t rank;
};

// Equivalent Boolean combination over J, or Exhausted when the quantifier
// rank exceeds max_rank.
inline std::variant<ComboPtr, Exhausted> j_normal_form(const FormulaPtr& phi, std::size_t max_rank = 6) {
    detail::check_j_signature(phi);
    if (!is_sentence(phi))
        throw Error("j_normal_form needs a sentence");
    if (auto c = from_sentence(phi, Family::janiczak_A))
        return *c;
    std::size_t q = quantifier_rank(phi);
    if (q > max_rank)
        return Exhausted{q};
    std::size_t width = q >= 2 ? q - 1 : 0;  // sizes 1 .. q-1, atoms A_0 .. A_(q-2)
    std::vector<std::size_t> atoms;
    for (std::size_t k = 0; k < width; ++k)
        atoms.push_back(k);
    return from_table(atoms, [&](const std::map<std::size_t, bool>& v) {
        std::vector<bool> bits(width);
        for (std::size_t k = 0; k < width; ++k) {
            auto it = v.find(k);  // atoms already found irrelevant are absent
            bits[k] = it != v.end() && it->second;
        }
        return holds_in(phi, census_model(bits, q));
    });
}

}  // namespace metaprop::theories
