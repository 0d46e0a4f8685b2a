#pragma once

// Theory handles with stage-bounded provability oracles.

#include "metaprop/arith/certificate.hpp"
#include "metaprop/resets/resets.hpp"
#include "metaprop/theories/janiczak.hpp"

namespace metaprop::theories {

using machine::Budget;

class UnsupportedShape : public Error {
public:
    using Error::Error;
};

enum class OracleKind { qe_succ, j_boolean, derived_literals, putnam_e, succ_pred, r_fragment };

inline const char* to_string(OracleKind k) {
    static const char* names[] = {"qe_succ", "j_boolean", "derived_literals", "putnam_e", "succ_pred", "r_fragment"};
    return names[static_cast<int>(k)];
}

struct TheoryHandle {
    std::string name;
    Signature signature;
    OracleKind kind = OracleKind::qe_succ;
    std::optional<resets::DisjointPair> pair;          // derived theories
    Family family = Family::janiczak_A;                // derived theories
    std::vector<std::pair<Natural, Natural>> hints;    // putnam_e: complement hints (i, j)
};

enum class Verdict { provable, refutable, undecided };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::provable: return "provable";
    case Verdict::refutable: return "refutable";
    case Verdict::undecided: return "undecided";
    }
    return "?";
}

// ---- constructors ---------------------------------------------------------------

inline TheoryHandle succ_theory() { return {"Succ", Signature::successor(), OracleKind::qe_succ, {}, {}, {}}; }

inline TheoryHandle j_theory() { return {"J", Signature::janiczak(), OracleKind::j_boolean, {}, {}, {}}; }

// J + {A_n : n in B} + {not A_n : n in C}, or the same over Succ-minus with chi_(n+1).
inline TheoryHandle derived_theory(const resets::ReSet& b, const resets::ReSet& c, Family f) {
    std::string base = f == Family::janiczak_A ? "J" : "Succ-";
    Signature sig = f == Family::janiczak_A ? Signature::janiczak() : Signature::successor();
    return {base + "+B+notC", sig, OracleKind::derived_literals, resets::DisjointPair{b, c}, f, {}};
}

inline TheoryHandle putnam_e(std::vector<std::pair<Natural, Natural>> hints) {
    return {"E", Signature::putnam(), OracleKind::putnam_e, {}, {}, std::move(hints)};
}

inline TheoryHandle succ_pred_theory() {
    return {"Succ+P", Signature::successor_with_p(), OracleKind::succ_pred, {}, {}, {}};
}

inline TheoryHandle r_theory() { return {"R", Signature::arithmetic(), OracleKind::r_fragment, {}, {}, {}}; }

// ---- derived theories -------------------------------------------------------------

// The stage-s literal set, restricted to the atoms of interest.
inline std::map<std::size_t, bool> stage_literals(const resets::DisjointPair& p, const std::set<std::size_t>& atoms,
                                                  Budget s) {
    std::map<std::size_t, bool> lits;
    for (auto n : atoms) {
        bool in_b = resets::halts_within(p.left, n, s);
        bool in_c = resets::halts_within(p.right, n, s);
        if (in_b && in_c)
            throw Error("B and C meet at " + std::to_string(n) + ": the theory is inconsistent");
        if (in_b)
            lits[n] = true;
        else if (in_c)
            lits[n] = false;
    }
    return lits;
}

inline Verdict derived_decide(const TheoryHandle& t, const ComboPtr& c, Budget s) {
    if (!t.pair)
        throw Error("not a derived theory");
    auto lits = stage_literals(*t.pair, support(c), s);
    if (entails(lits, c))
        return Verdict::provable;
    if (entails(lits, cnot(c)))
        return Verdict::refutable;
    return Verdict::undecided;
}

// ---- literal queries --------------------------------------------------------------

namespace detail {

inline std::optional<Natural> family_index(const std::string& name, const std::string& prefix) {
    if (!Signature::family_member(name, prefix))
        return std::nullopt;
    return Natural(name.substr(prefix.size()));
}

// P<i>(c<n>) or its negation
inline std::pair<std::pair<Natural, Natural>, bool> putnam_literal(const FormulaPtr& f) {
    bool pos = f->kind != Formula::Kind::Not;
    const auto& a = pos ? f : f->subs[0];
    if (a->kind != Formula::Kind::Rel || a->terms.size() != 1 || a->terms[0]->kind != Term::Kind::App)
        throw UnsupportedShape("only literals P_i(c_n) are decided in E");
    auto i = family_index(a->name, "P");
    auto n = family_index(a->terms[0]->name, "c");
    if (!i || !n)
        throw UnsupportedShape("only literals P_i(c_n) are decided in E");
    return {{*i, *n}, pos};
}

// P(i, n) with numerals, or its negation
inline std::optional<std::pair<std::pair<Natural, Natural>, bool>> p_literal(const FormulaPtr& f) {
    bool pos = f->kind != Formula::Kind::Not;
    const auto& a = pos ? f : f->subs[0];
    if (a->kind != Formula::Kind::Rel || a->name != "P")
        return std::nullopt;
    auto i = arith::detail::numeral_value(a->terms[0]);
    auto n = arith::detail::numeral_value(a->terms[1]);
    if (!i || !n)
        throw UnsupportedShape("P needs numeral arguments");
    return std::pair{std::pair{*i, *n}, pos};
}

inline bool mentions_relation(const FormulaPtr& f) {
    if (f->kind == Formula::Kind::Rel)
        return true;
    return std::any_of(f->subs.begin(), f->subs.end(), mentions_relation);
}

}  // namespace detail

// E proves P_k(n) iff n in W_k; it refutes P_k(n) through the A2 instance
// for a hinted pair (a, b) with e(b, a) = k once n is in W_e(a,b).
inline Verdict putnam_decide(const TheoryHandle& t, const FormulaPtr& f, Budget s) {
    auto [in, pos] = detail::putnam_literal(f);
    const auto& [k, n] = in;
    auto holds = [&] {
        if (machine::run(k, {n}, s).halted)
            return true;
        return false;
    };
    auto refuted = [&] {
        for (const auto& [i, j] : t.hints)
            for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}})
                if (resets::dominance_index(b, a) == k && machine::run(resets::dominance_index(a, b), {n}, s).halted)
                    return true;
        return false;
    };
    bool p = holds(), r = refuted();
    if (p == r)
        return Verdict::undecided;
    return (p == pos) ? Verdict::provable : Verdict::refutable;
}

inline Verdict succ_pred_decide(const FormulaPtr& f, Budget s) {
    if (auto lit = detail::p_literal(f)) {
        const auto& [in, pos] = *lit;
        bool p = machine::run(in.first, {in.second}, s).halted;
        if (!p)
            return Verdict::undecided;
        return pos ? Verdict::provable : Verdict::refutable;
    }
    if (detail::mentions_relation(f))
        throw UnsupportedShape("only literals P(i, n) and Succ sentences are decided");
    return succ_decide(f) == Decision::provable ? Verdict::provable : Verdict::refutable;
}

// R proves true Sigma1 sentences (certified) and refutes those whose negation
// is a true Sigma1 sentence.
inline Verdict r_decide(const FormulaPtr& f, Budget s) {
    auto proves = [&](const FormulaPtr& g) {
        if (logic::classify(g) == FormulaClass::other)
            return false;
        auto c = arith::sigma1_prove(g, s);
        return c && arith::check_certificate(*c);
    };
    if (proves(f))
        return Verdict::provable;
    if (proves(neg(f)))
        return Verdict::refutable;
    return Verdict::undecided;
}

// ---- the common entry point ---------------------------------------------------------

inline Verdict decide(const TheoryHandle& t, const FormulaPtr& f, Budget s) {
    if (!is_sentence(f))
        throw Error("decide needs a sentence");
    switch (t.kind) {
    case OracleKind::qe_succ: return succ_decide(f) == Decision::provable ? Verdict::provable : Verdict::refutable;
    case OracleKind::j_boolean: {
        auto nf = j_normal_form(f);
        if (std::holds_alternative<Exhausted>(nf))
            return Verdict::undecided;
        auto c = std::get<ComboPtr>(nf);
        // the A_n are independent over J: only tautologies are provable
        if (tautology(c))
            return Verdict::provable;
        if (!satisfiable(c))
            return Verdict::refutable;
        return Verdict::undecided;
    }
    case OracleKind::derived_literals: {
        std::optional<ComboPtr> c = from_sentence(f, t.family);
        if (!c && t.family == Family::janiczak_A) {
            auto nf = j_normal_form(f);
            if (std::holds_alternative<ComboPtr>(nf))
                c = std::get<ComboPtr>(nf);
        }
        if (!c)
            throw UnsupportedShape("not a Boolean combination of the theory's atoms");
        return derived_decide(t, *c, s);
    }
    case OracleKind::putnam_e: return putnam_decide(t, f, s);
    case OracleKind::succ_pred: return succ_pred_decide(f, s);
    case OracleKind::r_fragment: return r_decide(f, s);
    }
    return Verdict::undecided;
}

inline bool provable(const TheoryHandle& t, const FormulaPtr& f, Budget s) { return decide(t, f, s) == Verdict::provable; }
inline bool refutable(const TheoryHandle& t, const FormulaPtr& f, Budget s) {
    return decide(t, f, s) == Verdict::refutable;
}

// ---- weak representability -----------------------------------------------------------

inline std::vector<Natural> weak_rep_scan(const TheoryHandle& t, const FormulaPtr& phi, const Natural& n, Budget s) {
    auto fv = free_vars(phi);
    if (fv.size() != 1)
        throw UnsupportedShape("weak_rep_scan needs exactly one free variable");
    const std::string x = *fv.begin();
    std::vector<Natural> out;
    for (Natural k = 0; k <= n; ++k)
        if (provable(t, substitute(phi, x, numeral(k)), s))
            out.push_back(k);
    return out;
}

struct TailPattern {
    bool cofinite = false;     // the tail is inside the set
    Natural from = 0;          // constant on from .. n
};

// Where a scan over 0..n becomes constant; nullopt when it still changes in
// the upper half of the range.
inline std::optional<TailPattern> eventual_pattern(const std::vector<Natural>& scan, const Natural& n) {
    std::set<Natural> in(scan.begin(), scan.end());
    bool last = in.count(n) > 0;
    Natural from = n;
    while (from > 0 && (in.count(from - 1) > 0) == last)
        --from;
    if (from > n / 2)
        return std::nullopt;
    return TailPattern{last, from};
}

// ---- EI transfer for derived J theories -------------------------------------------

namespace progs {

// g-body: (i, x) -> phi_i(code of A_x)
inline machine::Program preimage_body() {
    using namespace machine;
    return Program{2, {prim(PrimOp::AtomCode, 2, 1), call(0, 0, 2), halt()}};
}

}  // namespace progs

// W_g(i) = { n : code(A_n) in W_i }, exact for n up to the atom-code cap.
inline Natural preimage_index(const Natural& i) {
    static const Natural body = machine::encode(progs::preimage_body());
    return machine::smn(1, 1, body, {i});
}

struct EiTransfer {
    Natural atom;                 // t(g(i), g(j)); h(i, j) is the code of A_atom
    std::optional<Natural> code;  // materialized only up to the atom-code cap
};

// h(i, j) = f(t(g(i), g(j))) for T = J + {A_n : n in K0} + {not A_n : n in K1},
// with t the EI function of the canonical pair.
inline EiTransfer ei_transfer(const Natural& i, const Natural& j, const TheoryHandle& t) {
    if (t.kind != OracleKind::derived_literals || t.family != Family::janiczak_A || !t.pair ||
        t.pair->left.index != resets::k0_index() || t.pair->right.index != resets::k1_index())
        throw Error("ei_transfer needs the derived J theory over the canonical pair");
    EiTransfer r{resets::ei_witness(preimage_index(i), preimage_index(j)), std::nullopt};
    if (r.atom <= machine::detail::atom_code_cap)
        r.code = machine::detail::atom_code(r.atom);
    return r;
}

}  // namespace metaprop::theories
