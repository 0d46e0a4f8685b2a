#pragma once

// Trace codes and the Kleene T predicate.
//
// code(trace) = seq( #configs, {pc, #regs, regs...}*, {flag, [subtrace]}* )
// with subtraces written inline. A transition whose instruction is a runb
// that timed out carries no subtrace; the checker confirms the timeout by a
// bounded simulation of the callee, which is decidable.

#include "metaprop/machine/run.hpp"

namespace metaprop::machine {

namespace detail {

inline void put_trace(SeqWriter& w, const Trace& t) {
    w.put(std::uint64_t(t.configs.size()));
    for (const auto& c : t.configs) {
        w.put(std::uint64_t(c.pc));
        w.put(std::uint64_t(c.regs.size()));
        for (const auto& r : c.regs)
            w.put(r);
    }
    for (const auto& s : t.subs) {
        w.put(std::uint64_t(s ? 1 : 0));
        if (s)
            put_trace(w, *s);
    }
}

inline std::shared_ptr<Trace> get_trace(SeqReader& r, int depth) {
    constexpr std::uint64_t cap = 1u << 24;
    if (depth > 100000)
        return nullptr;
    auto small = [&]() -> std::optional<std::uint64_t> {
        auto v = r.next();
        if (!v || *v > cap)
            return std::nullopt;
        return v->convert_to<std::uint64_t>();
    };
    auto n = small();
    if (!n || *n == 0)
        return nullptr;
    auto t = std::make_shared<Trace>();
    for (std::uint64_t k = 0; k < *n; ++k) {
        auto pc = small();
        auto nr = small();
        if (!pc || !nr || *nr > max_register + 1)
            return nullptr;
        Config c;
        c.pc = *pc;
        for (std::uint64_t j = 0; j < *nr; ++j) {
            auto v = r.next();
            if (!v)
                return nullptr;
            c.regs.push_back(*v);
        }
        t->configs.push_back(std::move(c));
    }
    for (std::uint64_t k = 0; k + 1 < *n; ++k) {
        auto flag = small();
        if (!flag || *flag > 1)
            return nullptr;
        if (*flag) {
            auto s = get_trace(r, depth + 1);
            if (!s)
                return nullptr;
            t->subs.push_back(s);
        } else {
            t->subs.push_back(nullptr);
        }
    }
    return t;
}

}  // namespace detail

inline Natural trace_code(const Trace& t) {
    SeqWriter w;
    detail::put_trace(w, t);
    return w.finish();
}

inline std::shared_ptr<Trace> decode_trace(const Natural& code) {
    SeqReader r(code);
    if (!r.ok())
        return nullptr;
    auto t = detail::get_trace(r, 0);
    if (!t || !r.ok() || !r.at_end())
        return nullptr;
    return t;
}

struct TraceCheck {
    bool valid = false;
    Natural output = 0;
    Budget steps = 0;  // total instructions, nested ones included
};

// Replays the trace one transition at a time against the program text.
inline TraceCheck check_trace(const Program& p, const std::vector<Natural>& init, const Trace& t) {
    TraceCheck bad;
    if (t.configs.empty() || t.subs.size() + 1 != t.configs.size())
        return bad;
    if (!(t.configs[0] == Config{0, init}))
        return bad;
    std::size_t nregs = init.size();
    Budget steps = 0;
    for (std::size_t k = 0; k + 1 < t.configs.size(); ++k) {
        const Config& c = t.configs[k];
        const Config& n = t.configs[k + 1];
        if (c.pc >= p.size() || n.regs.size() != nregs)
            return bad;
        const Instr& in = p.code[c.pc];
        Config want{c.pc + 1, c.regs};
        ++steps;
        const auto& sub = t.subs[k];
        if (sub && in.op != Op::Call && in.op != Op::RunB)
            return bad;
        switch (in.op) {
        case Op::Inc: ++want.regs[in.a]; break;
        case Op::DecJz:
            if (c.regs[in.a] == 0)
                want.pc = in.b;
            else
                --want.regs[in.a];
            break;
        case Op::Halt: want.pc = p.size(); break;
        case Op::Set: want.regs[in.a] = in.k; break;
        case Op::Prim: want.regs[in.a] = apply_prim(in.prim, c.regs[in.b], c.regs[in.c]); break;
        case Op::Call:
        case Op::RunB: {
            Program callee = decode(c.regs[in.b]);
            auto cinit = initial_registers(callee, {c.regs[in.c]});
            if (sub) {
                auto r = check_trace(callee, cinit, *sub);
                if (!r.valid)
                    return bad;
                if (in.op == Op::RunB && Natural(r.steps) > c.regs[in.d])
                    return bad;
                want.regs[in.a] = in.op == Op::RunB ? Natural(r.output + 1) : r.output;
                steps = detail::sat_add(steps, r.steps);
            } else {
                if (in.op == Op::Call)
                    return bad;
                Budget s = to_u64_saturating(c.regs[in.d]);
                if (run_program(callee, {c.regs[in.c]}, s).halted)
                    return bad;
                want.regs[in.a] = 0;
                steps = detail::sat_add(steps, s);
            }
            break;
        }
        }
        if (!(n == want))
            return bad;
    }
    if (t.configs.back().pc < p.size())
        return bad;
    return TraceCheck{true, t.configs.back().regs[0], steps};
}

inline TraceCheck check_trace_code(const Natural& i, const Natural& x, const Natural& y) {
    auto t = decode_trace(y);
    if (!t)
        return {};
    Program p = decode(i);
    return check_trace(p, initial_registers(p, {x}), *t);
}

// T(i, x, y): y codes a halting computation of program i on input x.
inline bool kleene_T(const Natural& i, const Natural& x, const Natural& y) { return check_trace_code(i, x, y).valid; }

// Halting computation and its trace code, when it halts within b.
inline std::optional<Natural> halting_trace_code(const Natural& i, const Natural& x, Budget b) {
    std::shared_ptr<Trace> t;
    auto r = run(i, {x}, b, &t);
    if (!r.halted)
        return std::nullopt;
    return trace_code(*t);
}

// W_{i,s} restricted to x <= min(bound, s).
inline std::vector<Natural> dom_enum_upto(const Natural& i, const Natural& bound, Budget s) {
    std::vector<Natural> out;
    Natural top = std::min(bound, Natural(s));
    for (Natural x = 0; x <= top; ++x)
        if (run(i, {x}, s).halted)
            out.push_back(x);
    return out;
}

// W_{i,s} = { x <= s : phi_i(x) halts within s steps }.
inline std::vector<Natural> dom_enum(const Natural& i, Budget s) { return dom_enum_upto(i, Natural(s), s); }

}  // namespace metaprop::machine
