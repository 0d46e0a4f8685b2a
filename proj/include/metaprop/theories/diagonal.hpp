#pragma once

// The diagonal argument against decidable theories that weakly represent
// every recursive set, run on stub theories.
//
// P(n, m): n codes a formula phi(x) with one free variable and T |- phi(m).
// D = { n : not P(n, n) }. If psi weakly represents D and n = code(psi),
// then n in D iff T does not prove psi(n) iff n not in D.
//
// Goedel codes are far too large for unary numerals, so stubs decide an
// instance phi(m) from the pair (phi, m).

#include "metaprop/logic/classify.hpp"
#include "metaprop/logic/eval.hpp"
#include "metaprop/logic/goedel.hpp"
#include "metaprop/theories/succ.hpp"

#include <functional>

namespace metaprop::theories {

using InstanceOracle = std::function<bool(const FormulaPtr& phi, const Natural& m)>;

// A decidable theory together with a formula it claims weakly represents D.
struct DiagonalStub {
    std::string name;
    InstanceOracle decide;  // T |- phi(m), phi with one free variable
    FormulaPtr psi;
};

namespace detail {

inline std::optional<FormulaPtr> one_var_formula(const Natural& n) {
    auto f = logic::ungoedel_formula(n);
    if (!f || free_vars(*f).size() != 1)
        return std::nullopt;
    return f;
}

}  // namespace detail

// Base theory of the stubs: true Delta0 instances.
inline bool delta0_instance(const FormulaPtr& phi, const Natural& m) {
    try {
        return is_delta0(phi) && eval_delta0(phi, Env{{*free_vars(phi).begin(), m}});
    } catch (const Error&) {
        return false;
    }
}

inline bool diagonal_p(const InstanceOracle& decide, const Natural& n, const Natural& m) {
    auto f = detail::one_var_formula(n);
    return f && decide(*f, m);
}

inline FormulaPtr diagonal_psi() { return parse("(existsle w x (= w w))"); }

// Proves Delta0 truths and psi(m) exactly for m in D, m != code(psi). At
// code(psi) no answer is consistent; the stub says "not provable".
inline DiagonalStub honest_stub() {
    auto psi = diagonal_psi();
    Natural n = goedel(psi);
    DiagonalStub t{"honest", nullptr, psi};
    t.decide = [psi, n](const FormulaPtr& phi, const Natural& m) {
        if (!equal(phi, psi))
            return delta0_instance(phi, m);
        if (m == n)
            return false;
        // P(m, m) only consults psi when m = n
        return !diagonal_p(delta0_instance, m, m);
    };
    return t;
}

// Same psi, decided by Delta0 truth: psi(m) is provable for every m, so it
// over-approximates D.
inline DiagonalStub dishonest_stub() { return DiagonalStub{"dishonest", delta0_instance, diagonal_psi()}; }

struct DiagonalReport {
    enum class Outcome { contradiction, representation_failure };
    Outcome outcome;
    Natural at;                    // the diagonal code, or the first failing sample
    bool member_if_proved = false; // n in D when T |- psi(n)
    bool member_if_not = false;    // n in D when T does not prove psi(n)
    std::string detail;
};

inline const char* to_string(DiagonalReport::Outcome o) {
    return o == DiagonalReport::Outcome::contradiction ? "contradiction" : "representation-failure";
}

// Checks the claimed representation on the samples, then evaluates both
// possible answers at n = code(psi).
inline DiagonalReport diagonal_demo(const DiagonalStub& t, const std::vector<Natural>& samples) {
    if (free_vars(t.psi).size() != 1)
        throw Error("psi needs exactly one free variable");
    Natural n = goedel(t.psi);
    for (const auto& m : samples) {
        if (m == n)
            continue;
        bool in_d = !diagonal_p(t.decide, m, m);
        bool proved = t.decide(t.psi, m);
        if (in_d != proved)
            return {DiagonalReport::Outcome::representation_failure, m, false, false,
                    "psi(" + metaprop::to_string(m) + ") is " + (proved ? "" : "not ") + "provable but " +
                        metaprop::to_string(m) + (in_d ? " is" : " is not") + " in D"};
    }
    auto assume = [&](bool answer) {
        return [&, answer](const FormulaPtr& phi, const Natural& m) {
            return m == n && equal(phi, t.psi) ? answer : t.decide(phi, m);
        };
    };
    DiagonalReport r{DiagonalReport::Outcome::contradiction, n, false, false, ""};
    r.member_if_proved = !diagonal_p(assume(true), n, n);
    r.member_if_not = !diagonal_p(assume(false), n, n);
    // weak representation demands: n in D iff T |- psi(n)
    bool clash_if_proved = r.member_if_proved != true;
    bool clash_if_not = r.member_if_not != false;
    if (!clash_if_proved || !clash_if_not) {
        r.outcome = DiagonalReport::Outcome::representation_failure;
        r.detail = "no clash at the diagonal code";
        return r;
    }
    r.detail = "n = code(psi): T |- psi(n) puts n outside D; T not |- psi(n) puts n in D";
    return r;
}

// 0..k plus the codes of a few one-variable formulas.
inline std::vector<Natural> diagonal_samples(std::size_t k = 40) {
    std::vector<Natural> out;
    for (std::size_t m = 0; m <= k; ++m)
        out.push_back(m);
    for (const char* s : {"(= x x)", "(= x (S 0))", "(not (= x x))", "(existsle w x (= w (S 0)))"})
        out.push_back(goedel(parse(s)));
    return out;
}

}  // namespace metaprop::theories
