#pragma once

// Executable evidence attached to atlas edges by witness_hint.

#include "metaprop/arith/comparison.hpp"
#include "metaprop/atlas/atlas.hpp"
#include "metaprop/reductions/tt.hpp"
#include "metaprop/theories/diagonal.hpp"

#include <functional>
#include <random>

namespace metaprop::atlas {

class UnknownDemo : public Error {
public:
    using Error::Error;
};

struct DemoReport {
    std::string name;
    bool passed = true;
    std::vector<std::string> lines;  // findings and artifacts, one per line

    void check(bool ok, const std::string& what) {
        passed = passed && ok;
        lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
};

inline constexpr machine::Budget default_demo_budget = 100000;

namespace demos {

using namespace logic;

using machine::Budget;
namespace mp = machine::programs;

inline DemoReport rosser_separator(Budget b) {
    DemoReport r{"rosser-separator", true, {}};
    auto sep = arith::rosser_separator(parse("(exists y (= (+ y y) x))"), parse("(exists y (= (S (+ y y)) x))"));
    r.lines.push_back("psi(x) = " + print(sep.psi));
    for (int n = 0; n <= 20; ++n) {
        auto p = arith::rosser_prove(sep, n, b);
        auto q = arith::rosser_refute(sep, n, b);
        bool pok = p && arith::check_certificate(*p);
        bool qok = q && arith::check_certificate(*q);
        r.check(n % 2 == 0 ? (pok && !qok) : (qok && !pok),
                "n = " + std::to_string(n) + (n % 2 == 0 ? ": psi(n) certified" : ": not psi(n) certified"));
        if (n == 3 && q)
            r.lines.push_back("certificate for n = 3: " + print(q->conclusion) + " citing " +
                              std::to_string(q->cited_axioms.size()) + " axiom instances");
    }
    return r;
}

inline Natural atoms_through(const Natural& k) {
    using namespace machine;
    return encode(Program{1, {prim(PrimOp::AtomIndex, 1, 0), decjz(1, 1), set(2, k), call(0, 2, 1), halt()}});
}

inline DemoReport ei_transfer(Budget s) {
    DemoReport r{"ei-transfer", true, {}};
    using resets::k0_index, resets::k1_index;
    for (auto [i, j] : {std::pair{k0_index(), k1_index()}, std::pair{k1_index(), k0_index()}}) {
        auto rep = resets::check_ei_witness(i, j, s);
        r.check(rep.valid(), std::string("EI witness for the canonical pair") + (i == k0_index() ? "" : ", swapped") +
                                 " escapes both sets at stage " + std::to_string(s));
    }
    auto t = theories::derived_theory(resets::ReSet{k0_index()}, resets::ReSet{k1_index()}, theories::Family::janiczak_A);
    Natural i = atoms_through(k0_index()), j = atoms_through(k1_index());
    auto h = theories::ei_transfer(i, j, t);
    auto gi = theories::preimage_index(i), gj = theories::preimage_index(j);
    r.check(!machine::run(gi, {h.atom}, s).halted && !machine::run(gj, {h.atom}, s).halted,
            "A_n with n = t(g(i), g(j)) is claimed by neither cover");
    return r;
}

inline DemoReport putnam_e(Budget s) {
    DemoReport r{"putnam-e", true, {}};
    Natural ev = machine::encode(mp::evens_recognizer()), od = machine::encode(mp::odds_recognizer());
    auto e = theories::putnam_e({{ev, od}});
    auto lit = [](const Natural& k, int n) {
        return parse("(P" + metaprop::to_string(k) + " c" + std::to_string(n) + ")", Signature::putnam());
    };
    Natural d = resets::dominance_index(ev, od);
    r.check(theories::decide(e, lit(ev, 4), s) == theories::Verdict::provable, "E proves P_evens(c4)");
    r.check(theories::decide(e, neg(lit(d, 3)), s) == theories::Verdict::provable, "E refutes P_e(evens,odds)(c3)");
    r.check(theories::decide(e, lit(d, 4), s) == theories::Verdict::provable, "E proves P_e(evens,odds)(c4)");
    r.check(theories::decide(theories::putnam_e({}), lit(d, 3), s) == theories::Verdict::undecided,
            "without the hint the literal stays open");
    return r;
}

inline DemoReport creative_diagonal(Budget s) {
    DemoReport r{"creative-diagonal", true, {}};
    std::vector<Natural> outside;
    for (Natural x = 0; x <= 60; ++x)
        if (!resets::halts_within(resets::creative_K(), x, s))
            outside.push_back(x);
    for (std::size_t k = 0; k < 5 && 3 * k + 1 <= outside.size(); ++k) {
        std::vector<Natural> members(outside.begin() + k, outside.begin() + 3 * k + 1);
        Natural i = machine::encode(mp::finite_set(members));
        Natural p = resets::productive(i);
        r.check(!resets::halts_within(resets::ReSet{i}, p, s) && !resets::halts_within(resets::creative_K(), p, s),
                "W_i of " + std::to_string(members.size()) + " elements outside K: f(i) escapes K and W_i");
    }
    return r;
}

inline DemoReport succ_weakrep(Budget s) {
    DemoReport r{"succ-weakrep", true, {}};
    auto t = theories::succ_theory();
    for (const char* text : {"(= x (S (S 0)))", "(not (= x (S 0)))", "(exists y (= x (S (S y))))",
                             "(and (not (= x 0)) (not (= x (S (S (S 0))))))", "(exists y (= (S x) y))"}) {
        auto phi = parse(text, Signature::successor());
        auto scan = theories::weak_rep_scan(t, phi, 60, s);
        auto pat = theories::eventual_pattern(scan, 60);
        r.check(pat.has_value(), std::string(text) + ": " +
                                     (pat ? (pat->cofinite ? "cofinite" : "finite") + std::string(" from ") +
                                                metaprop::to_string(pat->from)
                                          : std::string("no pattern")));
    }
    return r;
}

inline DemoReport tt_roundtrip(Budget) {
    DemoReport r{"tt-roundtrip", true, {}};
    std::mt19937_64 rng(5);
    std::function<theories::ComboPtr(int)> gen = [&](int d) -> theories::ComboPtr {
        if (d == 0 || rng() % 4 == 0)
            return theories::atom(rng() % 8);
        switch (rng() % 3) {
        case 0: return theories::cnot(gen(d - 1));
        case 1: return theories::cand(gen(d - 1), gen(d - 1));
        default: return theories::cor(gen(d - 1), gen(d - 1));
        }
    };
    for (const std::vector<Natural>& xs : {std::vector<Natural>{}, {2}, {0, 3, 5, 7}}) {
        auto t = reductions::derived_from_finite(xs);
        auto in = reductions::finite_oracle({xs.begin(), xs.end()});
        std::size_t agree = 0, total = 30;
        for (std::size_t k = 0; k < total; ++k) {
            auto phi = gen(4);
            bool want = reductions::tt_satisfied(reductions::theory_to_set_tt(phi), in);
            auto v = theories::derived_decide(t, phi, reductions::stabilized_stage(xs));
            agree += v == (want ? theories::Verdict::provable : theories::Verdict::refutable);
        }
        r.check(agree == total, "|X| = " + std::to_string(xs.size()) + ": " + std::to_string(agree) + "/" +
                                    std::to_string(total) + " combinations agree");
    }
    return r;
}

inline DemoReport diagonal(Budget) {
    DemoReport r{"diagonal", true, {}};
    auto h = theories::diagonal_demo(theories::honest_stub(), theories::diagonal_samples());
    r.check(h.outcome == theories::DiagonalReport::Outcome::contradiction && h.at == goedel(theories::diagonal_psi()),
            std::string("honest stub: ") + theories::to_string(h.outcome) + " at the code of psi");
    auto d = theories::diagonal_demo(theories::dishonest_stub(), theories::diagonal_samples());
    r.check(d.outcome == theories::DiagonalReport::Outcome::representation_failure,
            std::string("dishonest stub: ") + theories::to_string(d.outcome) + " (" + d.detail + ")");
    return r;
}

}  // namespace demos

struct DemoEntry {
    std::string name;
    std::string description;
    std::function<DemoReport(machine::Budget)> run;
};

inline const std::vector<DemoEntry>& demo_registry() {
    static const std::vector<DemoEntry> r{
        {"creative-diagonal", "the identity is productive for the complement of K", demos::creative_diagonal},
        {"diagonal", "diagonal argument on decidable stub theories", demos::diagonal},
        {"ei-transfer", "EI witnesses for the canonical pair and for the derived J theory", demos::ei_transfer},
        {"putnam-e", "literal provability in Putnam's theory E", demos::putnam_e},
        {"rosser-separator", "certified Rosser separation of evens and odds in R", demos::rosser_separator},
        {"succ-weakrep", "weakly representable sets in Succ are finite or cofinite", demos::succ_weakrep},
        {"tt-roundtrip", "T_X and X agree through truth-table conditions", demos::tt_roundtrip},
    };
    return r;
}

inline DemoReport run_demo(const std::string& name, machine::Budget budget = default_demo_budget) {
    for (const auto& d : demo_registry())
        if (d.name == name)
            return d.run(budget);
    throw UnknownDemo("unknown demo: " + name);
}

}  // namespace metaprop::atlas
