#pragma once

// Goedel numbers of formulas: the preorder token stream of the syntax tree,
// written with the sequence coding of coding.hpp. Names are spelled as
// length followed by byte values.

#include "metaprop/coding.hpp"
#include "metaprop/logic/syntax.hpp"

#include <optional>

namespace metaprop::logic {

namespace detail {

enum : unsigned { tag_var = 0, tag_app = 1, tag_formula_base = 2 };

inline void put_name(SeqWriter& w, const std::string& s) {
    w.put(std::uint64_t(s.size()));
    for (unsigned char c : s)
        w.put(std::uint64_t(c));
}

inline void put_term(SeqWriter& w, const TermPtr& t) {
    const Term* cur = t.get();
    while (true) {
        w.put(std::uint64_t(cur->kind == Term::Kind::Var ? tag_var : tag_app));
        put_name(w, cur->name);
        if (cur->kind == Term::Kind::Var)
            return;
        w.put(std::uint64_t(cur->args.size()));
        if (cur->args.size() == 1) {
            cur = cur->args[0].get();
            continue;
        }
        for (const auto& a : cur->args)
            put_term(w, a);
        return;
    }
}

inline void put_formula(SeqWriter& w, const FormulaPtr& f) {
    w.put(std::uint64_t(tag_formula_base + static_cast<unsigned>(f->kind)));
    if (is_atom(f->kind) || is_quantifier(f->kind))
        put_name(w, f->name);
    if (f->kind == Formula::Kind::Rel)
        w.put(std::uint64_t(f->terms.size()));
    for (const auto& t : f->terms)
        put_term(w, t);
    for (const auto& s : f->subs)
        put_formula(w, s);
}

struct Decoder {
    SeqReader r;

    std::optional<std::uint64_t> small(std::uint64_t limit) {
        auto v = r.next();
        if (!v || *v > limit)
            return std::nullopt;
        return v->convert_to<std::uint64_t>();
    }
    std::optional<std::string> name() {
        auto n = small(1 << 16);
        if (!n)
            return std::nullopt;
        std::string s;
        for (std::uint64_t i = 0; i < *n; ++i) {
            auto c = small(255);
            if (!c)
                return std::nullopt;
            s.push_back(static_cast<char>(*c));
        }
        return s;
    }
    TermPtr term() {
        std::vector<std::string> chain;
        while (true) {
            auto tag = small(1);
            if (!tag)
                return nullptr;
            auto nm = name();
            if (!nm)
                return nullptr;
            TermPtr t;
            if (*tag == tag_var) {
                t = var(*nm);
            } else {
                auto n = small(1 << 16);
                if (!n)
                    return nullptr;
                if (*n == 1) {
                    chain.push_back(*nm);
                    continue;
                }
                std::vector<TermPtr> args;
                for (std::uint64_t i = 0; i < *n; ++i) {
                    auto a = term();
                    if (!a)
                        return nullptr;
                    args.push_back(a);
                }
                t = app(*nm, std::move(args));
            }
            for (std::size_t i = chain.size(); i-- > 0;)
                t = app(chain[i], {t});
            return t;
        }
    }
    FormulaPtr formula() {
        using K = Formula::Kind;
        auto tag = small(tag_formula_base + static_cast<unsigned>(K::ForallLe));
        if (!tag || *tag < tag_formula_base)
            return nullptr;
        K k = static_cast<K>(*tag - tag_formula_base);
        std::string nm;
        if (is_atom(k) || is_quantifier(k)) {
            auto n = name();
            if (!n)
                return nullptr;
            nm = *n;
        }
        std::vector<TermPtr> ts;
        std::size_t nterms = 0;
        if (k == K::Eq || k == K::Le)
            nterms = 2;
        else if (k == K::Rel) {
            auto n = small(1 << 16);
            if (!n)
                return nullptr;
            nterms = *n;
        } else if (k == K::ExistsLe || k == K::ForallLe)
            nterms = 1;
        for (std::size_t i = 0; i < nterms; ++i) {
            auto t = term();
            if (!t)
                return nullptr;
            ts.push_back(t);
        }
        std::size_t nsubs = 0;
        if (k == K::Not || is_quantifier(k))
            nsubs = 1;
        else if (k == K::And || k == K::Or || k == K::Imp)
            nsubs = 2;
        std::vector<FormulaPtr> fs;
        for (std::size_t i = 0; i < nsubs; ++i) {
            auto s = formula();
            if (!s)
                return nullptr;
            fs.push_back(s);
        }
        if ((k == K::Eq && nm != "=") || (k == K::Le && nm != "<="))
            return nullptr;
        return mk(k, nm, std::move(ts), std::move(fs));
    }
};

}  // namespace detail

inline Natural goedel(const FormulaPtr& f) {
    SeqWriter w;
    detail::put_formula(w, f);
    return w.finish();
}

inline Natural goedel(const TermPtr& t) {
    SeqWriter w;
    detail::put_term(w, t);
    return w.finish();
}

// Any well-formed formula, free variables allowed.
inline std::optional<FormulaPtr> ungoedel_formula(const Natural& code) {
    detail::Decoder d{SeqReader(code)};
    if (!d.r.ok())
        return std::nullopt;
    auto f = d.formula();
    if (!f || !d.r.ok() || !d.r.at_end())
        return std::nullopt;
    return f;
}

inline std::optional<FormulaPtr> ungoedel(const Natural& code) {
    auto f = ungoedel_formula(code);
    if (!f || !is_sentence(*f))
        return std::nullopt;
    return f;
}

}  // namespace metaprop::logic
