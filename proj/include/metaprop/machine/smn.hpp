#pragma once

#include "metaprop/machine/trace.hpp"

namespace metaprop::machine {

// Extra steps an smn-built program spends before reaching the body.
inline Budget smn_overhead(std::size_t m, std::size_t n) { return m + n; }

// g(b) such that run(smn(m,n,i,ys), zs, g(b)) matches run(i, ys++zs, b).
inline Budget smn_inflate(Budget b, std::size_t m, std::size_t n) { return detail::sat_add(b, smn_overhead(m, n)); }

// The prefix moves z_k to r(m+k), loads the y constants into r0..r(m-1), and
// jumps into the relocated body. Positions at or past the body's arity are
// zeroed rather than loaded, so the body starts in exactly the configuration
// run(i, ys++zs) gives it. The ys are literal constants of the result, which
// makes smn injective in ys.
inline Program smn_program(std::size_t m, std::size_t n, const Program& body, const std::vector<Natural>& ys) {
    if (m < 1 || n < 1)
        throw ProgramError("smn needs m, n >= 1");
    if (ys.size() != m)
        throw ProgramError("smn needs exactly m fixed arguments");
    std::size_t a = body.arity;
    Program out;
    out.arity = n;
    for (std::size_t k = n; k-- > 0;) {
        std::size_t pos = m + k;
        out.code.push_back(pos < a ? prim(PrimOp::Copy, pos, k, 0) : set(pos, 0));
    }
    for (std::size_t j = 0; j < m; ++j)
        out.code.push_back(set(j, j < a ? ys[j] : Natural(0)));
    std::size_t shift = out.code.size();
    for (Instr in : body.code) {
        if (in.op == Op::DecJz)
            in.b += shift;
        out.code.push_back(in);
    }
    if (!out.valid())
        throw ProgramError("smn result exceeds register limits");
    return out;
}

inline Natural smn(std::size_t m, std::size_t n, const Natural& i, const std::vector<Natural>& ys) {
    return encode(smn_program(m, n, decode(i), ys));
}

// ---- a small program library ----------------------------------------------------

namespace programs {

inline Program halt_only() { return Program{0, {halt()}}; }
inline Program self_loop() { return canonical_program(); }
inline Program identity() { return Program{1, {}}; }
inline Program successor() { return Program{1, {inc(0), halt()}}; }
inline Program constant(const Natural& k) { return Program{1, {set(0, k), halt()}}; }

// r0 := r0 + r1 by unary transfer
inline Program addition() { return Program{2, {decjz(1, 3), inc(0), decjz(2, 0), halt()}}; }

// Halts iff x is even (output 0); loops on odd x.
inline Program evens_recognizer() {
    return Program{1, {decjz(0, 3), decjz(0, 4), decjz(1, 0), halt(), decjz(1, 4)}};
}
// Halts iff x is odd.
inline Program odds_recognizer() {
    return Program{1, {decjz(0, 3), decjz(0, 4), decjz(1, 0), decjz(1, 3), halt()}};
}
// Characteristic function of the evens: output 1 on even x, 0 on odd x.
inline Program evens_characteristic() {
    return Program{1, {decjz(0, 3), decjz(0, 5), decjz(1, 0), inc(0), halt(), halt()}};
}

// Halts iff x = r (mod m), with output 0; loops otherwise. Needs r < m.
inline Program mod_recognizer(std::size_t m, std::size_t r) {
    if (m == 0 || r >= m)
        throw Error("mod_recognizer needs r < m");
    Program p{1, {}};
    for (std::size_t k = 0; k < m; ++k)
        p.code.push_back(decjz(0, m + 1 + k));
    p.code.push_back(decjz(1, 0));
    for (std::size_t k = 0; k < m; ++k)
        p.code.push_back(k == r ? halt() : decjz(1, m + 1 + k));
    return p;
}

// Constant k using only r0: clear, then k increments.
inline Program counter_constant(std::size_t k) {
    Program p{1, {decjz(0, 2), decjz(1, 0)}};
    for (std::size_t i = 0; i < k; ++i)
        p.code.push_back(inc(0));
    p.code.push_back(halt());
    return p;
}

// Halts (output 0) iff x is one of the listed values.
inline Program finite_set(const std::vector<Natural>& members) {
    // block k: r1 := m_k; r2 := [x = r1]; no match -> next block; match -> halt
    std::size_t n = members.size();
    std::size_t halt_at = 4 * n + 1;
    Program p{1, {}};
    for (std::size_t k = 0; k < n; ++k) {
        p.code.push_back(set(1, members[k]));
        p.code.push_back(prim(PrimOp::Eq, 2, 0, 1));
        p.code.push_back(decjz(2, 4 * (k + 1)));
        p.code.push_back(decjz(3, halt_at));
    }
    p.code.push_back(decjz(3, 4 * n));
    p.code.push_back(set(0, 0));
    p.code.push_back(halt());
    return p;
}

// Halts (output 0) iff x is none of the listed values; loops on members.
inline Program cofinite_set(const std::vector<Natural>& members) {
    std::size_t n = members.size();
    Program p{1, {}};
    for (std::size_t k = 0; k < n; ++k) {
        p.code.push_back(set(1, members[k]));
        p.code.push_back(prim(PrimOp::Eq, 2, 0, 1));
        p.code.push_back(decjz(2, 4 * (k + 1)));
        p.code.push_back(decjz(3, 4 * k + 3));
    }
    p.code.push_back(set(0, 0));
    p.code.push_back(halt());
    return p;
}

}  // namespace programs

}  // namespace metaprop::machine
