#pragma once

#include "metaprop/logic/syntax.hpp"

namespace metaprop::logic {

enum class FormulaClass { delta0, sigma1, other };

inline const char* to_string(FormulaClass c) {
    switch (c) {
    case FormulaClass::delta0: return "delta0";
    case FormulaClass::sigma1: return "sigma1";
    default: return "other";
    }
}

inline bool is_delta0(const FormulaPtr& f) {
    if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall)
        return false;
    for (const auto& s : f->subs)
        if (!is_delta0(s))
            return false;
    return true;
}

inline FormulaClass classify(const FormulaPtr& f) {
    if (is_delta0(f))
        return FormulaClass::delta0;
    FormulaPtr g = f;
    while (g->kind == Formula::Kind::Exists)
        g = g->subs[0];
    return is_delta0(g) ? FormulaClass::sigma1 : FormulaClass::other;
}

// Split a Sigma1 formula into its existential block and Delta0 matrix.
struct Sigma1Shape {
    std::vector<std::string> vars;
    FormulaPtr matrix;
};

inline Sigma1Shape sigma1_shape(const FormulaPtr& f) {
    Sigma1Shape s;
    FormulaPtr g = f;
    while (g->kind == Formula::Kind::Exists) {
        s.vars.push_back(g->name);
        g = g->subs[0];
    }
    s.matrix = g;
    return s;
}

// Negation normal form: implications removed, negations pushed onto atoms.
inline FormulaPtr nnf(const FormulaPtr& f, bool negate = false) {
    using K = Formula::Kind;
    switch (f->kind) {
    case K::Eq:
    case K::Le:
    case K::Rel:
        return negate ? neg(f) : f;
    case K::Not:
        return nnf(f->subs[0], !negate);
    case K::And:
        return negate ? disj(nnf(f->subs[0], true), nnf(f->subs[1], true))
                      : conj(nnf(f->subs[0], false), nnf(f->subs[1], false));
    case K::Or:
        return negate ? conj(nnf(f->subs[0], true), nnf(f->subs[1], true))
                      : disj(nnf(f->subs[0], false), nnf(f->subs[1], false));
    case K::Imp:
        return negate ? conj(nnf(f->subs[0], false), nnf(f->subs[1], true))
                      : disj(nnf(f->subs[0], true), nnf(f->subs[1], false));
    case K::Exists:
        return negate ? forall(f->name, nnf(f->subs[0], true)) : exists(f->name, nnf(f->subs[0], false));
    case K::Forall:
        return negate ? exists(f->name, nnf(f->subs[0], true)) : forall(f->name, nnf(f->subs[0], false));
    case K::ExistsLe:
        return negate ? forall_le(f->name, f->terms[0], nnf(f->subs[0], true))
                      : exists_le(f->name, f->terms[0], nnf(f->subs[0], false));
    case K::ForallLe:
        return negate ? exists_le(f->name, f->terms[0], nnf(f->subs[0], true))
                      : forall_le(f->name, f->terms[0], nnf(f->subs[0], false));
    }
    return f;
}

inline bool is_nnf(const FormulaPtr& f) {
    if (f->kind == Formula::Kind::Imp)
        return false;
    if (f->kind == Formula::Kind::Not)
        return is_atom(f->subs[0]->kind);
    for (const auto& s : f->subs)
        if (!is_nnf(s))
            return false;
    return true;
}

}  // namespace metaprop::logic
