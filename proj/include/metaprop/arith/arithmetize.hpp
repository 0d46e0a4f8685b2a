#pragma once

// Exact arithmetization of one-counter programs.
//
// A one-counter program has arity 1, uses only inc 0, decjz and halt, and
// never writes any register but r0, so `decjz k L` with k != 0 is a plain
// jump. While r0 > 0 the control flow depends on the program counter
// alone, so after at most L instructions (L = program length) it is
// either halted or going round a fixed cycle of net counter change d.
// For inputs x >= 2L + 2 this gives:
//   no cycle:  halts with output x + net
//   d >= 0:    diverges
//   d < 0:     after one lap the run from x + |d| is in the configuration the
//              run from x started its lap in, so halting and output are
//              periodic in x with period |d|.
// Single runs are decided by the same lap argument, skipping whole laps.

#include "metaprop/arith/certificate.hpp"
#include "metaprop/machine/smn.hpp"

#include <map>

namespace metaprop::arith {

using namespace logic;
using machine::Instr;
using machine::Op;
using machine::Program;

class NotArithmetizable : public Error {
public:
    using Error::Error;
};

class NonTotalObserved : public Error {
public:
    using Error::Error;
};

class ArityMismatch : public Error {
public:
    using Error::Error;
};

inline bool is_one_counter(const Program& p) {
    if (p.arity != 1)
        return false;
    for (const auto& in : p.code) {
        if (in.op == Op::Inc && in.a == 0)
            continue;
        if (in.op == Op::DecJz || in.op == Op::Halt)
            continue;
        return false;
    }
    return true;
}

// Output of the program on x, or nullopt when it diverges.
inline std::optional<Natural> one_counter_run(const Program& p, const Natural& x) {
    if (!is_one_counter(p))
        throw NotArithmetizable("not a one-counter program");
    const std::size_t L = p.size();
    std::size_t pc = 0;
    Natural c = x;
    std::set<std::size_t> zero_entries;  // labels entered by a zero branch
    std::map<std::size_t, std::pair<Natural, std::size_t>> seen;
    std::vector<std::pair<std::size_t, Natural>> hist;
    while (true) {
        if (pc >= L || p.code[pc].op == Op::Halt)
            return c;
        if (auto it = seen.find(pc); it != seen.end()) {
            const auto& [c0, idx] = it->second;
            if (c >= c0)
                return std::nullopt;  // the lap repeats forever
            Natural drop = c0 - c;
            // lowest counter value at a decrement during the lap, relative to its start
            Natural low = c0;
            for (std::size_t k = idx; k < hist.size(); ++k) {
                const Instr& in = p.code[hist[k].first];
                if (in.op == Op::DecJz && in.a == 0)
                    low = std::min(low, hist[k].second);
            }
            // laps starting at c, c - drop, ... stay positive at decrements while c - j*drop - (c0 - low) >= 1
            Natural dip = c0 - low;
            if (c > dip) {
                Natural laps = (c - dip - 1) / drop + 1;
                c -= laps * drop;
            }
            seen.clear();
            hist.clear();
        }
        seen[pc] = {c, hist.size()};
        hist.push_back({pc, c});
        const Instr& in = p.code[pc];
        if (in.op == Op::Inc) {
            ++c;
            ++pc;
        } else if (in.a != 0) {
            pc = in.b;
        } else if (c > 0) {
            --c;
            ++pc;
        } else {
            pc = in.b;
            if (!zero_entries.insert(pc).second)
                return std::nullopt;  // configuration (pc, 0) repeats
            seen.clear();
            hist.clear();
        }
    }
}

struct OneCounterShape {
    std::size_t threshold = 0;  // behaviour is uniform from here on
    std::size_t period = 1;
    bool linear = false;        // tail halts with output x + net
    long long net = 0;
    std::vector<std::optional<Natural>> head;  // outcomes for x < threshold + period
};

inline OneCounterShape analyze_one_counter(const Program& p) {
    if (!is_one_counter(p))
        throw NotArithmetizable("not a one-counter program");
    const std::size_t L = p.size();
    OneCounterShape s;
    s.threshold = 2 * L + 2;
    // walk with every decrement succeeding
    std::map<std::size_t, std::pair<long long, std::size_t>> seen;
    std::size_t pc = 0;
    long long net = 0;
    while (true) {
        if (pc >= L || p.code[pc].op == Op::Halt) {
            s.linear = true;
            s.net = net;
            break;
        }
        if (auto it = seen.find(pc); it != seen.end()) {
            long long d = net - it->second.first;
            s.period = d < 0 ? std::size_t(-d) : 1;
            break;
        }
        seen[pc] = {net, 0};
        const Instr& in = p.code[pc];
        if (in.op == Op::Inc) {
            ++net;
            ++pc;
        } else if (in.a != 0) {
            pc = in.b;
        } else {
            --net;
            ++pc;
        }
    }
    for (std::size_t x = 0; x < s.threshold + s.period; ++x)
        s.head.push_back(one_counter_run(p, x));
    return s;
}

inline std::optional<Natural> shape_outcome(const OneCounterShape& s, const Natural& x) {
    if (x < s.head.size())
        return s.head[to_size(x)];
    if (s.linear) {
        Natural base = x;
        return s.net >= 0 ? base + Natural(s.net) : base - Natural(-s.net);
    }
    Natural r = (x - s.threshold) % s.period;
    return s.head[s.threshold + to_size(r)];
}

namespace detail {

inline TermPtr times_const(TermPtr t, std::size_t k) { return k == 1 ? t : times(std::move(t), numeral(k)); }

// x = T + r + q*P
inline FormulaPtr residue_eq(const TermPtr& x, std::size_t base, std::size_t period, const TermPtr& q) {
    return eq(x, plus(numeral(base), times_const(q, period)));
}

}  // namespace detail

// sigma(x) = exists y M(x, y) with M quantifier free, defining the domain.
inline FormulaPtr domain_formula(const Program& p) {
    auto s = analyze_one_counter(p);
    auto x = var("x"), y = var("y");
    std::vector<FormulaPtr> cases;
    for (std::size_t v = 0; v < s.threshold; ++v)
        if (s.head[v])
            cases.push_back(eq(x, numeral(v)));
    for (std::size_t r = 0; r < s.period; ++r)
        if (s.head[s.threshold + r])
            cases.push_back(detail::residue_eq(x, s.threshold + r, s.period, y));
    FormulaPtr m = cases.empty() ? neg(eq(x, x)) : disj_all(cases);
    return exists("y", m);
}

inline FormulaPtr domain_formula(const Natural& index) { return domain_formula(machine::decode(index)); }

// theta(x, y): Delta0 graph of a total one-counter program.
inline FormulaPtr graph_formula(const Program& p) {
    auto s = analyze_one_counter(p);
    auto x = var("x"), y = var("y");
    std::vector<FormulaPtr> cases;
    for (std::size_t v = 0; v < s.head.size(); ++v)
        if (!s.head[v])
            throw NonTotalObserved("diverges on " + std::to_string(v));
    if (!s.linear && s.period == 1 && !s.head[s.threshold])
        throw NonTotalObserved("diverges on all large inputs");
    for (std::size_t v = 0; v < s.threshold; ++v)
        cases.push_back(conj(eq(x, numeral(v)), eq(y, numeral(*s.head[v]))));
    for (std::size_t r = 0; r < s.period; ++r) {
        FormulaPtr out;
        if (s.linear)
            out = s.net >= 0 ? eq(y, plus(x, numeral(s.net))) : eq(plus(y, numeral(-s.net)), x);
        else
            out = eq(y, numeral(*s.head[s.threshold + r]));
        auto where = exists_le("q", x, detail::residue_eq(x, s.threshold + r, s.period, var("q")));
        cases.push_back(conj(where, out));
    }
    return disj_all(cases);
}

// phi(x, y) := theta(x, y) and forall z < y not theta(x, z)
inline FormulaPtr define_function_formula(const Program& p, std::size_t arity = 1) {
    if (arity != 1 || p.arity != 1)
        throw NotArithmetizable("only unary functions are arithmetized");
    auto theta = graph_formula(p);
    return conj(theta, forall_lt("z", var("y"), neg(substitute(theta, "y", var("z")))));
}

inline FormulaPtr define_function_formula(const Natural& f, std::size_t arity = 1) {
    return define_function_formula(machine::decode(f), arity);
}

// Certificate that R proves forall y (phi(n, y) <-> y = m) for the value m
// at n. phi must have the shape built by define_function_formula. nullopt
// when no value is found below b.
inline std::optional<Certificate> function_certificate(const FormulaPtr& phi, const Natural& n, const Natural& b) {
    if (free_vars(phi) != std::set<std::string>{"x", "y"} || phi->kind != Formula::Kind::And)
        throw ArityMismatch("expected a defining formula in x and y");
    auto at_n = substitute(phi, "x", numeral(n));
    const auto& theta = at_n->subs[0];
    Env env;
    std::optional<Natural> m;
    for (Natural v = 0; v <= b && !m; ++v) {
        env["y"] = v;
        if (eval_delta0(theta, env))
            m = v;
    }
    if (!m)
        return std::nullopt;
    auto is_m = eq(var("y"), numeral(*m));
    auto concl = forall("y", conj(imp(at_n, is_m), imp(is_m, at_n)));
    detail::Collector c;
    env["y"] = *m;
    c.justify(theta, true, env);
    for (Natural i = 0; i < *m; ++i) {
        env["y"] = i;
        c.justify(theta, false, env);
    }
    c.keys.insert({Scheme::Ax4, {*m}});
    c.keys.insert({Scheme::Ax5, {*m}});
    return Certificate{concl, Kind::function_definition, {*m}, detail::instances(c.keys)};
}

// psi(x) := phi(x, 1)
inline FormulaPtr strong_rep_from_function(const FormulaPtr& phi) {
    if (free_vars(phi) != std::set<std::string>{"x", "y"})
        throw ArityMismatch("expected a formula in x and y");
    return substitute(phi, "y", numeral(1));
}

// g then f, as one program: g's halts jump to f's first instruction.
inline Program compose_one_counter(const Program& g, const Program& f) {
    if (!is_one_counter(g) || !is_one_counter(f))
        throw NotArithmetizable("not a one-counter program");
    Program out{1, {}};
    std::size_t shift = g.size();
    for (Instr in : g.code)
        out.code.push_back(in.op == Op::Halt ? machine::decjz(1, shift) : in);
    for (Instr in : f.code) {
        if (in.op == Op::DecJz)
            in.b += shift;
        out.code.push_back(in);
    }
    if (f.code.empty())
        out.code.push_back(machine::halt());
    return out;
}

}  // namespace metaprop::arith
