#pragma once

// Sentence families used as propositional atoms by the derived theories.

#include "metaprop/logic/goedel.hpp"

namespace metaprop::logic {

inline std::string xv(std::size_t i) { return "x" + std::to_string(i); }

// "x belongs to a class with exactly the listed members" is spelled with
// the members x0..xn bound by an existential block.
inline FormulaPtr janiczak_atom(std::size_t n) {
    std::vector<FormulaPtr> parts;
    for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t b = a + 1; b <= n; ++b)
            parts.push_back(neq(var(xv(a)), var(xv(b))));
    for (std::size_t a = 0; a <= n; ++a)
        parts.push_back(rel("E", {var(xv(0)), var(xv(a))}));
    std::vector<FormulaPtr> alts;
    for (std::size_t a = 0; a <= n; ++a)
        alts.push_back(eq(var("y"), var(xv(a))));
    parts.push_back(forall("y", imp(rel("E", {var(xv(0)), var("y")}), disj_all(alts))));
    FormulaPtr f = conj_all(parts);
    for (std::size_t a = n + 1; a-- > 0;)
        f = exists(xv(a), f);
    return f;
}

// A_n when code is its Goedel number.
inline std::optional<std::size_t> janiczak_atom_index(const Natural& code) {
    auto f = ungoedel(code);
    if (!f)
        return std::nullopt;
    std::size_t depth = 0;
    const Formula* g = f->get();
    while (g->kind == Formula::Kind::Exists) {
        ++depth;
        g = g->subs[0].get();
    }
    if (depth == 0 || depth > 4096)
        return std::nullopt;
    if (!equal(*f, janiczak_atom(depth - 1)))
        return std::nullopt;
    return depth - 1;
}

inline std::vector<std::uint64_t> proper_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> ds;
    for (std::uint64_t d = 1; d < n; ++d)
        if (n % d == 0)
            ds.push_back(d);
    return ds;
}

// There is a cycle of length exactly n (n >= 1).
inline FormulaPtr exact_cycle_atom(std::uint64_t n) {
    if (n == 0)
        throw Error("cycle length must be positive");
    std::vector<FormulaPtr> parts{eq(succ_n(var("x"), n), var("x"))};
    for (auto d : proper_divisors(n))
        parts.push_back(neq(succ_n(var("x"), d), var("x")));
    return exists("x", conj_all(parts));
}

// The plain cycle sentence exists x (S^n x = x).
inline FormulaPtr cycle_sentence(std::uint64_t n) { return exists("x", eq(succ_n(var("x"), n), var("x"))); }

}  // namespace metaprop::logic
