#pragma once

// Counter-machine programs over unbounded natural registers.
//
//   inc r             r := r + 1
//   decjz r L         if r = 0 jump to L, else r := r - 1 and fall through
//   halt              stop; the output is r0
//   set r k           r := k
//   call d e a        r[d] := phi_{r[e]}(r[a])       (diverges with the callee)
//   runb d e a s      r[d] := 1 + phi_{r[e]}(r[a]) if that halts within r[s]
//                     steps, else 0
//   prim op d a b     r[d] := op(r[a], r[b]) for a fixed table of total ops
//
// Inputs arrive in r0..r(arity-1); every other register starts at 0.
// Running past the last instruction halts.

#include "metaprop/coding.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace metaprop::machine {

enum class Op : unsigned { Inc = 0, DecJz, Halt, Set, Call, RunB, Prim };

enum class PrimOp : unsigned {
    Pair = 0,   // cantor pair
    Left,       // first component of unpair
    Right,      // second component of unpair
    Add,
    Monus,      // truncated subtraction
    Lt,         // 1 if a < b
    Eq,         // 1 if a = b
    Copy,       // a
    AtomCode,   // Goedel number of the Janiczak atom A_a
    CycleCode,  // Goedel number of the exact-cycle sentence chi_{a+1}
    AtomIndex,  // n+1 if a is the code of A_n, else 0
};
inline constexpr unsigned prim_count = 11;

inline const char* prim_name(PrimOp p) {
    static const char* names[] = {"pair", "left", "right",    "add",       "monus",    "lt",
                                  "eq",   "copy", "atomcode", "cyclecode", "atomindex"};
    return names[static_cast<unsigned>(p)];
}

struct Instr {
    Op op = Op::Halt;
    std::size_t a = 0, b = 0, c = 0, d = 0;
    Natural k = 0;  // constant for `set`
    PrimOp prim = PrimOp::Copy;

    friend bool operator==(const Instr& x, const Instr& y) {
        return x.op == y.op && x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d && x.k == y.k &&
               (x.op != Op::Prim || x.prim == y.prim);
    }
};

inline Instr inc(std::size_t r) { return {Op::Inc, r}; }
inline Instr decjz(std::size_t r, std::size_t label) { return {Op::DecJz, r, label}; }
inline Instr halt() { return {Op::Halt}; }
inline Instr set(std::size_t r, Natural k) {
    Instr i{Op::Set, r};
    i.k = std::move(k);
    return i;
}
inline Instr call(std::size_t d, std::size_t e, std::size_t a) { return {Op::Call, d, e, a}; }
inline Instr runb(std::size_t d, std::size_t e, std::size_t a, std::size_t s) { return {Op::RunB, d, e, a, s}; }
inline Instr prim(PrimOp p, std::size_t d, std::size_t a, std::size_t b = 0) {
    Instr i{Op::Prim, d, a, b};
    i.prim = p;
    return i;
}

// Register indices are capped so that every code decodes to a runnable program.
inline constexpr std::size_t max_register = 1023;

struct Program {
    std::size_t arity = 1;
    std::vector<Instr> code;

    friend bool operator==(const Program& x, const Program& y) { return x.arity == y.arity && x.code == y.code; }

    std::size_t size() const { return code.size(); }

    std::size_t register_count() const {
        std::size_t n = std::max<std::size_t>(arity, 1);
        for (const auto& i : code) {
            switch (i.op) {
            case Op::Inc:
            case Op::DecJz:
            case Op::Set: n = std::max(n, i.a + 1); break;
            case Op::Call:
            case Op::Prim: n = std::max({n, i.a + 1, i.b + 1, i.c + 1}); break;
            case Op::RunB: n = std::max({n, i.a + 1, i.b + 1, i.c + 1, i.d + 1}); break;
            case Op::Halt: break;
            }
        }
        return n;
    }

    bool valid() const {
        if (arity > max_register + 1)
            return false;
        for (const auto& i : code) {
            if (i.a > max_register || i.b > max_register || i.c > max_register || i.d > max_register)
                return false;
            if (i.op == Op::DecJz && i.b >= code.size())
                return false;
        }
        return true;
    }
};

class ProgramError : public Error {
public:
    using Error::Error;
};

// The program every invalid code decodes to: a one-instruction self-loop.
inline Program canonical_program() { return Program{1, {decjz(1, 0)}}; }

inline std::size_t operand_count(Op op) {
    switch (op) {
    case Op::Inc: return 1;
    case Op::DecJz: return 2;
    case Op::Halt: return 0;
    case Op::Set: return 2;
    case Op::Call: return 3;
    case Op::RunB: return 4;
    case Op::Prim: return 4;
    }
    return 0;
}

inline Natural encode(const Program& p) {
    if (!p.valid())
        throw ProgramError("cannot encode an invalid program");
    SeqWriter w;
    w.put(std::uint64_t(p.arity));
    w.put(std::uint64_t(p.code.size()));
    for (const auto& i : p.code) {
        w.put(std::uint64_t(static_cast<unsigned>(i.op)));
        switch (i.op) {
        case Op::Inc: w.put(std::uint64_t(i.a)); break;
        case Op::DecJz: w.put(std::uint64_t(i.a)).put(std::uint64_t(i.b)); break;
        case Op::Halt: break;
        case Op::Set: w.put(std::uint64_t(i.a)).put(i.k); break;
        case Op::Call: w.put(std::uint64_t(i.a)).put(std::uint64_t(i.b)).put(std::uint64_t(i.c)); break;
        case Op::RunB:
            w.put(std::uint64_t(i.a)).put(std::uint64_t(i.b)).put(std::uint64_t(i.c)).put(std::uint64_t(i.d));
            break;
        case Op::Prim:
            w.put(std::uint64_t(static_cast<unsigned>(i.prim)))
                .put(std::uint64_t(i.a))
                .put(std::uint64_t(i.b))
                .put(std::uint64_t(i.c));
            break;
        }
    }
    return w.finish();
}

namespace detail {

inline std::optional<Program> try_decode(const Natural& code) {
    SeqReader r(code);
    if (!r.ok())
        return std::nullopt;
    auto small = [&](std::uint64_t limit) -> std::optional<std::size_t> {
        auto v = r.next();
        if (!v || *v > limit)
            return std::nullopt;
        return static_cast<std::size_t>(v->convert_to<std::uint64_t>());
    };
    auto arity = small(max_register + 1);
    auto count = small(1u << 20);
    if (!arity || !count)
        return std::nullopt;
    Program p;
    p.arity = *arity;
    for (std::size_t n = 0; n < *count; ++n) {
        auto op = small(static_cast<unsigned>(Op::Prim));
        if (!op)
            return std::nullopt;
        Instr i;
        i.op = static_cast<Op>(*op);
        if (i.op == Op::Prim) {
            auto pr = small(prim_count - 1);
            if (!pr)
                return std::nullopt;
            i.prim = static_cast<PrimOp>(*pr);
            auto a = small(max_register), b = small(max_register), c = small(max_register);
            if (!a || !b || !c)
                return std::nullopt;
            i.a = *a, i.b = *b, i.c = *c;
        } else if (i.op == Op::Set) {
            auto a = small(max_register);
            auto k = r.next();
            if (!a || !k)
                return std::nullopt;
            i.a = *a;
            i.k = *k;
        } else {
            std::size_t* slots[] = {&i.a, &i.b, &i.c, &i.d};
            for (std::size_t s = 0; s < operand_count(i.op); ++s) {
                auto v = small(i.op == Op::DecJz && s == 1 ? (1u << 20) : max_register);
                if (!v)
                    return std::nullopt;
                *slots[s] = *v;
            }
        }
        p.code.push_back(std::move(i));
    }
    if (!r.ok() || !r.at_end() || !p.valid())
        return std::nullopt;
    return p;
}

}  // namespace detail

// Total: codes that are not images of encode() give canonical_program().
inline Program decode(const Natural& code) {
    auto p = detail::try_decode(code);
    return p ? *p : canonical_program();
}

inline bool is_program_code(const Natural& code) { return detail::try_decode(code).has_value(); }

// ---- text format ----------------------------------------------------------

inline std::string to_text(const Program& p) {
    std::ostringstream os;
    os << "arity " << p.arity << '\n';
    for (const auto& i : p.code) {
        switch (i.op) {
        case Op::Inc: os << "inc " << i.a; break;
        case Op::DecJz: os << "decjz " << i.a << ' ' << i.b; break;
        case Op::Halt: os << "halt"; break;
        case Op::Set: os << "set " << i.a << ' ' << i.k; break;
        case Op::Call: os << "call " << i.a << ' ' << i.b << ' ' << i.c; break;
        case Op::RunB: os << "runb " << i.a << ' ' << i.b << ' ' << i.c << ' ' << i.d; break;
        case Op::Prim: os << "prim " << prim_name(i.prim) << ' ' << i.a << ' ' << i.b << ' ' << i.c; break;
        }
        os << '\n';
    }
    return os.str();
}

// One instruction per line; blank lines and '#' comments are ignored. An
// optional leading "arity n" line sets the arity (default 1).
inline Program from_text(const std::string& text) {
    Program p;
    std::istringstream in(text);
    std::string line;
    bool seen_instr = false;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& why) {
        throw ProgramError("line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        std::istringstream ls(line);
        std::vector<std::string> w;
        for (std::string t; ls >> t;)
            w.push_back(t);
        if (w.empty())
            continue;
        auto num = [&](std::size_t idx) -> std::size_t {
            if (idx >= w.size())
                fail("missing operand");
            try {
                return to_size(parse_natural(w[idx]));
            } catch (const Error& e) {
                fail(e.what());
            }
            return 0;
        };
        auto want = [&](std::size_t n) {
            if (w.size() != n)
                fail("wrong operand count for " + w[0]);
        };
        const std::string& m = w[0];
        if (m == "arity") {
            if (seen_instr)
                fail("arity must come first");
            want(2);
            p.arity = num(1);
            continue;
        }
        seen_instr = true;
        if (m == "inc") {
            want(2);
            p.code.push_back(inc(num(1)));
        } else if (m == "decjz") {
            want(3);
            p.code.push_back(decjz(num(1), num(2)));
        } else if (m == "halt") {
            want(1);
            p.code.push_back(halt());
        } else if (m == "set") {
            want(3);
            p.code.push_back(set(num(1), parse_natural(w[2])));
        } else if (m == "call") {
            want(4);
            p.code.push_back(call(num(1), num(2), num(3)));
        } else if (m == "runb") {
            want(5);
            p.code.push_back(runb(num(1), num(2), num(3), num(4)));
        } else if (m == "prim") {
            want(5);
            unsigned k = 0;
            while (k < prim_count && w[1] != prim_name(static_cast<PrimOp>(k)))
                ++k;
            if (k == prim_count)
                fail("unknown primitive " + w[1]);
            p.code.push_back(prim(static_cast<PrimOp>(k), num(2), num(3), num(4)));
        } else {
            fail("unknown instruction " + m);
        }
    }
    if (!p.valid())
        throw ProgramError("jump label or register out of range");
    return p;
}

}  // namespace metaprop::machine
