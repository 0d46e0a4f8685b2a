#pragma once

// Truth-table conditions and the two reductions between a derived theory
// T_X = J + {A_n : n in X} + {not A_n : n not in X} and its parameter set X.
//
// Bit order: alpha[idx] is the value on the assignment whose binary digits,
// most significant first, are c(x_1) .. c(x_k). Printed tables list idx = 0
// .. 2^k - 1, so "0010" for k = 2 is true exactly on (1, 0).

#include "metaprop/theories/handles.hpp"

#include <functional>

namespace metaprop::reductions {

using theories::ComboPtr;

struct TtCondition {
    std::vector<Natural> queries;
    std::vector<bool> alpha;  // size 2^k

    std::size_t norm() const { return queries.size(); }
};

using MembershipOracle = std::function<bool(const Natural&)>;

inline void check_condition(const TtCondition& c) {
    if (c.queries.empty())
        throw Error("a tt-condition needs at least one query");
    if (c.queries.size() >= 8 * sizeof(std::size_t) || c.alpha.size() != (std::size_t(1) << c.queries.size()))
        throw Error("truth table size does not match the norm");
}

inline std::size_t assignment_index(const std::vector<bool>& bits) {
    std::size_t idx = 0;
    for (bool b : bits)
        idx = (idx << 1) | (b ? 1 : 0);
    return idx;
}

inline bool tt_satisfied(const TtCondition& c, const MembershipOracle& in_a) {
    check_condition(c);
    std::vector<bool> bits;
    for (const auto& x : c.queries)
        bits.push_back(in_a(x));
    return c.alpha[assignment_index(bits)];
}

inline std::string alpha_bits(const TtCondition& c) {
    std::string s;
    for (bool b : c.alpha)
        s += b ? '1' : '0';
    return s;
}

// Queries are the support of phi in increasing order; alpha is its truth
// table. Constants become norm-1 conditions on 0 with a constant table.
inline TtCondition theory_to_set_tt(const ComboPtr& phi) {
    auto support = theories::support(phi);
    if (support.empty()) {
        bool v = theories::eval(phi, {});
        return {{0}, {v, v}};
    }
    std::vector<std::size_t> atoms(support.begin(), support.end());
    TtCondition c;
    for (auto a : atoms)
        c.queries.push_back(a);
    c.alpha.resize(std::size_t(1) << atoms.size());
    for (std::size_t idx = 0; idx < c.alpha.size(); ++idx) {
        std::map<std::size_t, bool> v;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            v[atoms[i]] = (idx >> (atoms.size() - 1 - i)) & 1;
        c.alpha[idx] = theories::eval(phi, v);
    }
    return c;
}

struct TtReduction {
    std::function<TtCondition(const Natural&)> f;
    std::optional<Natural> query_index;  // program computing the single query, for norm-1 reductions
};

namespace progs {

// x -> code of A_x
inline machine::Program atom_code_program() {
    using namespace machine;
    return Program{1, {prim(PrimOp::AtomCode, 0, 0), halt()}};
}

}  // namespace progs

// n -> "code(A_n) is a theorem": X is tt-reducible (indeed 1-reducible) to T_X.
inline TtReduction set_to_theory_reduction() {
    TtReduction r;
    r.f = [](const Natural& n) { return TtCondition{{machine::detail::atom_code(n)}, {false, true}}; };
    r.query_index = machine::encode(progs::atom_code_program());
    return r;
}

// Membership in T_P at stage s, for Goedel codes of J sentences.
inline MembershipOracle theorem_oracle(const theories::TheoryHandle& t, machine::Budget s) {
    return [t, s](const Natural& code) {
        auto f = logic::ungoedel(code);
        if (!f)
            return false;
        try {
            return theories::provable(t, *f, s);
        } catch (const theories::UnsupportedShape&) {
            return false;
        }
    };
}

// T_X for finite X: B = X, C = its complement.
inline theories::TheoryHandle derived_from_finite(const std::vector<Natural>& xs) {
    namespace mp = machine::programs;
    return theories::derived_theory({machine::encode(mp::finite_set(xs))}, {machine::encode(mp::cofinite_set(xs))},
                                    theories::Family::janiczak_A);
}

// Both enumerating programs of derived_from_finite settle within this many steps.
inline machine::Budget stabilized_stage(const std::vector<Natural>& xs) { return 4 * xs.size() + 8; }

inline MembershipOracle finite_oracle(std::set<Natural> xs) {
    return [xs = std::move(xs)](const Natural& n) { return xs.count(n) > 0; };
}

}  // namespace metaprop::reductions
