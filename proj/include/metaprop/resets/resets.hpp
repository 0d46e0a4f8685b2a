#pragma once

// RE sets as program indices, approximated by stages.

#include "metaprop/machine/smn.hpp"

#include <variant>

namespace metaprop::resets {

using machine::Budget;
using machine::Program;
using namespace machine;

struct ReSet {
    Natural index;
};

enum class Membership { in, out_so_far, unknown };

inline const char* to_string(Membership m) {
    switch (m) {
    case Membership::in: return "in";
    case Membership::out_so_far: return "out-so-far";
    case Membership::unknown: return "unknown";
    }
    return "?";
}

// x is in W_{i,s} when phi_i(x) halts within s steps.
inline bool halts_within(const ReSet& a, const Natural& x, Budget s) { return run(a.index, {x}, s).halted; }

// The stage-s view used by dom_enum: only x <= s are ever listed at stage s,
// so larger x are unknown rather than out.
inline Membership member(const ReSet& a, const Natural& x, Budget s) {
    if (halts_within(a, x, s))
        return Membership::in;
    return x <= Natural(s) ? Membership::out_so_far : Membership::unknown;
}

struct Assumed {};
struct VerifiedUpTo {
    Natural bound;
    Budget stage;
};

struct DisjointPair {
    ReSet left, right;
    std::variant<Assumed, VerifiedUpTo> witness = Assumed{};
};

// Checks that no n <= bound is in both sides at stage s; nullopt on a clash.
inline std::optional<DisjointPair> verify_disjoint(DisjointPair p, const Natural& bound, Budget s) {
    for (Natural n = 0; n <= bound; ++n)
        if (halts_within(p.left, n, s) && halts_within(p.right, n, s))
            return std::nullopt;
    p.witness = VerifiedUpTo{bound, s};
    return p;
}

// ---- programs -----------------------------------------------------------------

namespace progs {

// K = { x : phi_x(x) halts }
inline Program k_program() { return Program{1, {call(0, 0, 0), halt()}}; }

// Halts (output 0) iff phi_x(x) halts with value v.
inline Program value_filter(const Natural& v) {
    return Program{1,
                   {call(1, 0, 0), set(3, v), prim(PrimOp::Eq, 2, 1, 3), decjz(2, 6), set(0, 0), halt(),
                    decjz(4, 6)}};
}

// Shared race loop over registers r0=i, r1=j, r2=x. At stage s it asks
// whether phi_i(x) and phi_j(x) halt within s steps; the first stage where
// one of them does decides, and a tie goes to the smaller index. Control
// reaches `win_i` or `win_j`.
inline std::vector<Instr> race_loop(std::size_t win_i, std::size_t win_j) {
    return {
        runb(4, 0, 2, 3),           // 0: a := runb(i, x, s)
        runb(5, 1, 2, 3),           // 1: b := runb(j, x, s)
        decjz(4, 7),                // 2: i still running
        decjz(5, win_i),            // 3: only i halted
        prim(PrimOp::Lt, 6, 0, 1),  // 4: both halted at s
        decjz(6, win_j),            // 5
        decjz(7, win_i),            // 6
        decjz(5, 9),                // 7: neither halted
        decjz(7, win_j),            // 8: only j halted
        inc(3),                     // 9
        decjz(7, 0),                // 10
    };
}

// race(i, j, x) = 1 if x enters W_i first, 0 if it enters W_j first.
inline Program race() {
    Program p{3, race_loop(11, 13)};
    p.code.insert(p.code.end(), {set(0, 1), halt(), set(0, 0), halt()});
    return p;
}

// Halts iff x enters W_i strictly before W_j. Never halts when i = j.
inline Program dominance() {
    Program p{3, race_loop(11, 13)};
    p.code.insert(p.code.end(), {set(0, 0), halt(), decjz(7, 13)});
    return p;
}

}  // namespace progs

inline const Natural& k_index() {
    static const Natural i = encode(progs::k_program());
    return i;
}
inline const Natural& k0_index() {
    static const Natural i = encode(progs::value_filter(0));
    return i;
}
inline const Natural& k1_index() {
    static const Natural i = encode(progs::value_filter(1));
    return i;
}
inline const Natural& race_index() {
    static const Natural i = encode(progs::race());
    return i;
}
inline const Natural& dominance_program_index() {
    static const Natural i = encode(progs::dominance());
    return i;
}

inline ReSet creative_K() { return ReSet{k_index()}; }

// The productive function of the complement of K.
inline Natural productive(const Natural& i) { return i; }

inline DisjointPair canonical_ei_pair() { return DisjointPair{ReSet{k0_index()}, ReSet{k1_index()}}; }

// e(i,j): W_{e(i,j)} = { x : x enters W_i before it enters W_j }.
inline Natural dominance_index(const Natural& i, const Natural& j) {
    return smn(2, 1, dominance_program_index(), {i, j});
}

// d(i,j): the index n of x -> race(i, j, x). Under K0 <= W_i, K1 <= W_j and
// disjointness, n lies in neither set.
inline Natural ei_witness(const Natural& i, const Natural& j) { return smn(2, 1, race_index(), {i, j}); }

// ---- checking the EI exclusion --------------------------------------------------

struct EiReport {
    Natural witness;
    bool index_matches = false;   // witness re-derived from (i, j)
    bool absent_left = false;     // not in W_{i,s}
    bool absent_right = false;    // not in W_{j,s}
    bool race_pending = false;    // phi_n(n) has not halted by stage s
    bool case_split = false;      // i, j are K0, K1: n in W_i forces n in K1, and symmetrically
    bool descent = false;         // every halting run of phi_n(n) contains a shorter one
    bool valid() const { return index_matches && absent_left && absent_right && race_pending && (case_split || descent); }
};

namespace detail {

// Every halting run of program p on input x first completes phi_x(x) via a call.
inline bool starts_with_self_call(const Natural& idx) {
    Program p = decode(idx);
    return p.arity >= 1 && !p.code.empty() && p.code[0] == call(1, 0, 0);
}

}  // namespace detail

// The diagonal argument, replayed. The case split is the textbook one: if
// n were in W_i then race(i,j,n) = 1, so n in K1, which is inside W_j,
// contradicting disjointness; symmetrically for W_j. The descent argument
// applies when both programs start by computing phi_x(x): a halting run of
// phi_n(n) waits on W_i or W_j at n, each of which contains a complete,
// strictly shorter halting run of phi_n(n).
inline EiReport check_ei_witness(const Natural& i, const Natural& j, Budget s) {
    EiReport r;
    r.witness = ei_witness(i, j);
    r.index_matches = r.witness == smn(2, 1, encode(progs::race()), {i, j}) &&
                      decode(r.witness) == smn_program(2, 1, progs::race(), {i, j});
    r.absent_left = !run(i, {r.witness}, s).halted;
    r.absent_right = !run(j, {r.witness}, s).halted;
    r.race_pending = !run(r.witness, {r.witness}, s).halted;
    r.case_split = i == k0_index() && j == k1_index();
    r.descent = detail::starts_with_self_call(i) && detail::starts_with_self_call(j);
    return r;
}

// ---- semi-reductions --------------------------------------------------------------

struct SemiReduction {
    Natural f;
};

class NonTotal : public Error {
public:
    explicit NonTotal(const Natural& n) : Error("reduction does not halt on " + metaprop::to_string(n)), n(n) {}
    Natural n;
};

struct Violation {
    Natural n;
    Natural image;
    bool left = true;  // n in from.left but f(n) not in to.left; else the right-hand version
};

struct SemiReductionReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

inline SemiReductionReport check_semi_reduction(const SemiReduction& f, const DisjointPair& from,
                                                const DisjointPair& to, const Natural& bound, Budget s) {
    SemiReductionReport rep;
    for (Natural n = 0; n <= bound; ++n) {
        auto r = run(f.f, {n}, s);
        if (!r.halted)
            throw NonTotal(n);
        if (halts_within(from.left, n, s) && !halts_within(to.left, r.value, s))
            rep.violations.push_back({n, r.value, true});
        if (halts_within(from.right, n, s) && !halts_within(to.right, r.value, s))
            rep.violations.push_back({n, r.value, false});
    }
    return rep;
}

}  // namespace metaprop::resets
