#pragma once

// Axiom schemes of R and the axioms of Q. In R, x <= y abbreviates
// exists z (z + x = y), so Ax4 and Ax5 are written with that expansion.

#include "metaprop/logic/text.hpp"

namespace metaprop::arith {

using namespace logic;

enum class Scheme { Ax1, Ax2, Ax3, Ax4, Ax5, Q1, Q2, Q3, Q4, Q5, Q6, Q7 };

inline const char* to_string(Scheme s) {
    static const char* names[] = {"Ax1", "Ax2", "Ax3", "Ax4", "Ax5", "Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7"};
    return names[static_cast<int>(s)];
}

inline std::optional<Scheme> scheme_from_string(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(Scheme::Q7); ++k)
        if (s == to_string(static_cast<Scheme>(k)))
            return static_cast<Scheme>(k);
    return std::nullopt;
}

inline std::size_t param_count(Scheme s) {
    switch (s) {
    case Scheme::Ax1:
    case Scheme::Ax2:
    case Scheme::Ax3: return 2;
    case Scheme::Ax4:
    case Scheme::Ax5: return 1;
    default: return 0;
    }
}

class BadParams : public Error {
public:
    using Error::Error;
};

struct AxiomInstance {
    Scheme scheme;
    std::vector<Natural> params;
    FormulaPtr sentence;
};

// exists z (z + t = u), the R reading of t <= u
inline FormulaPtr r_le(const TermPtr& t, const TermPtr& u, const std::string& z = "z") {
    return exists(z, eq(plus(var(z), t), u));
}

inline FormulaPtr axiom_sentence(Scheme s, const std::vector<Natural>& p) {
    if (p.size() != param_count(s))
        throw BadParams(std::string(to_string(s)) + " takes " + std::to_string(param_count(s)) + " parameters");
    auto x = var("x"), y = var("y");
    switch (s) {
    case Scheme::Ax1: return eq(plus(numeral(p[0]), numeral(p[1])), numeral(p[0] + p[1]));
    case Scheme::Ax2: return eq(times(numeral(p[0]), numeral(p[1])), numeral(p[0] * p[1]));
    case Scheme::Ax3:
        if (p[0] == p[1])
            throw BadParams("Ax3 needs m != n");
        return neq(numeral(p[0]), numeral(p[1]));
    case Scheme::Ax4: {
        std::vector<FormulaPtr> cases;
        for (Natural i = 0; i <= p[0]; ++i)
            cases.push_back(eq(x, numeral(i)));
        return forall("x", imp(r_le(x, numeral(p[0])), disj_all(cases)));
    }
    case Scheme::Ax5: return forall("x", disj(r_le(x, numeral(p[0])), r_le(numeral(p[0]), x)));
    case Scheme::Q1: return forall("x", forall("y", imp(eq(succ(x), succ(y)), eq(x, y))));
    case Scheme::Q2: return forall("x", neq(succ(x), zero()));
    case Scheme::Q3: return forall("x", imp(neq(x, zero()), exists("y", eq(x, succ(y)))));
    case Scheme::Q4: return forall("x", forall("y", eq(plus(x, zero()), x)));
    case Scheme::Q5: return forall("x", forall("y", eq(plus(x, succ(y)), succ(plus(x, y)))));
    case Scheme::Q6: return forall("x", eq(times(x, zero()), zero()));
    case Scheme::Q7: return forall("x", forall("y", eq(times(x, succ(y)), plus(times(x, y), x))));
    }
    throw BadParams("unknown scheme");
}

inline AxiomInstance axiom(Scheme s, std::vector<Natural> params = {}) {
    auto f = axiom_sentence(s, params);
    return AxiomInstance{s, std::move(params), std::move(f)};
}

inline std::vector<AxiomInstance> q_axioms() {
    std::vector<AxiomInstance> out;
    for (int k = static_cast<int>(Scheme::Q1); k <= static_cast<int>(Scheme::Q7); ++k)
        out.push_back(axiom(static_cast<Scheme>(k)));
    return out;
}

// A cited instance is well formed when its sentence is exactly the template.
inline bool well_formed(const AxiomInstance& a) {
    try {
        return a.sentence && equal(a.sentence, axiom_sentence(a.scheme, a.params));
    } catch (const BadParams&) {
        return false;
    }
}

using AxiomKey = std::pair<Scheme, std::vector<Natural>>;

inline AxiomKey key(const AxiomInstance& a) { return {a.scheme, a.params}; }

}  // namespace metaprop::arith
