#pragma once

// Step-bounded execution.
//
// A step is one executed instruction, `halt` included; falling off the end
// halts without a step. Nested call/runb computations are charged to the
// same counter, so run(e, x, b) halts iff the whole computation tree needs at
// most b instructions. `runb d e a s` gives its callee exactly the allowance a
// top-level run with budget s would get, which makes it agree with run().
//
// A frame whose configuration repeats can never halt. The interpreter
// detects this (Brent's method) and skips to the frame's deadline; results
// are unchanged, only faster.

#include "metaprop/logic/templates.hpp"
#include "metaprop/machine/program.hpp"

#include <limits>
#include <map>
#include <memory>
#include <mutex>

namespace metaprop::machine {

using Budget = std::uint64_t;
inline constexpr Budget unbounded = std::numeric_limits<Budget>::max();

struct RunResult {
    bool halted = false;
    Natural value = 0;
    Budget steps = 0;  // steps used when halted

    static RunResult running() { return {}; }
    friend bool operator==(const RunResult& a, const RunResult& b) {
        return a.halted == b.halted && (!a.halted || a.value == b.value);
    }
};

struct Config {
    std::size_t pc = 0;
    std::vector<Natural> regs;
    friend bool operator==(const Config& a, const Config& b) { return a.pc == b.pc && a.regs == b.regs; }
};

// Configurations of one frame. subs[k] is the callee's trace for transition
// k when that instruction was a call, or a runb whose callee halted.
struct Trace {
    std::vector<Config> configs;
    std::vector<std::shared_ptr<Trace>> subs;
};

// ---- primitives -------------------------------------------------------------

namespace detail {

struct CodeCache {
    std::mutex mu;
    std::map<std::size_t, Natural> atom, cycle;
};

inline CodeCache& code_cache() {
    static CodeCache c;
    return c;
}

// Codes are only materialized up to this index; larger arguments map to 0.
inline constexpr std::size_t atom_code_cap = 4096;

inline Natural atom_code(const Natural& n) {
    if (n > atom_code_cap)
        return 0;
    std::size_t k = to_size(n);
    auto& c = code_cache();
    {
        std::lock_guard<std::mutex> g(c.mu);
        if (auto it = c.atom.find(k); it != c.atom.end())
            return it->second;
    }
    Natural v = logic::goedel(logic::janiczak_atom(k));
    std::lock_guard<std::mutex> g(c.mu);
    c.atom.emplace(k, v);
    return v;
}

inline Natural cycle_code(const Natural& n) {
    if (n > atom_code_cap)
        return 0;
    std::size_t k = to_size(n);
    auto& c = code_cache();
    {
        std::lock_guard<std::mutex> g(c.mu);
        if (auto it = c.cycle.find(k); it != c.cycle.end())
            return it->second;
    }
    Natural v = logic::goedel(logic::exact_cycle_atom(k + 1));
    std::lock_guard<std::mutex> g(c.mu);
    c.cycle.emplace(k, v);
    return v;
}

}  // namespace detail

inline Natural apply_prim(PrimOp op, const Natural& a, const Natural& b) {
    switch (op) {
    case PrimOp::Pair: return cantor_pair(a, b);
    case PrimOp::Left: return cantor_unpair(a).first;
    case PrimOp::Right: return cantor_unpair(a).second;
    case PrimOp::Add: return a + b;
    case PrimOp::Monus: return monus(a, b);
    case PrimOp::Lt: return a < b ? 1 : 0;
    case PrimOp::Eq: return a == b ? 1 : 0;
    case PrimOp::Copy: return a;
    case PrimOp::AtomCode: return detail::atom_code(a);
    case PrimOp::CycleCode: return detail::cycle_code(a);
    case PrimOp::AtomIndex: {
        auto n = logic::janiczak_atom_index(a);
        return n ? Natural(*n + 1) : Natural(0);
    }
    }
    return 0;
}

// ---- decode cache -------------------------------------------------------------

using ProgramPtr = std::shared_ptr<const Program>;

inline ProgramPtr load(const Natural& index) {
    static std::mutex mu;
    static std::map<Natural, ProgramPtr> cache;
    {
        std::lock_guard<std::mutex> g(mu);
        if (auto it = cache.find(index); it != cache.end())
            return it->second;
    }
    auto p = std::make_shared<const Program>(decode(index));
    std::lock_guard<std::mutex> g(mu);
    if (cache.size() > 4096)
        cache.clear();
    cache.emplace(index, p);
    return p;
}

inline std::vector<Natural> initial_registers(const Program& p, const std::vector<Natural>& args) {
    std::vector<Natural> regs(p.register_count());
    for (std::size_t k = 0; k < p.arity && k < args.size(); ++k)
        regs[k] = args[k];
    return regs;
}

// ---- interpreter ----------------------------------------------------------------

namespace detail {

enum class FrameKind { Top, Call, RunB };

struct Frame {
    ProgramPtr prog;
    std::vector<Natural> regs;
    std::size_t pc = 0;
    FrameKind kind = FrameKind::Top;
    std::size_t dst = 0;
    Budget deadline = unbounded;  // own limit on the global step counter
    Budget limit = unbounded;     // min over this frame and its ancestors
    // cycle detection
    std::size_t snap_pc = 0;
    std::vector<Natural> snap_regs;
    std::uint64_t local = 0, power = 1, since = 0;
    std::shared_ptr<Trace> trace;
};

inline Budget sat_add(Budget a, Budget b) { return a > unbounded - b ? unbounded : a + b; }

class Engine {
public:
    explicit Engine(bool record) : record_(record) {}

    RunResult run_frame(ProgramPtr prog, std::vector<Natural> regs, Budget b, std::shared_ptr<Trace>* out_trace) {
        stack_.clear();
        t_ = 0;
        push(std::move(prog), std::move(regs), FrameKind::Top, 0, b);
        return loop(out_trace);
    }

private:
    void push(ProgramPtr prog, std::vector<Natural> regs, FrameKind kind, std::size_t dst, Budget deadline) {
        Frame f;
        f.prog = std::move(prog);
        f.regs = std::move(regs);
        f.kind = kind;
        f.dst = dst;
        f.deadline = deadline;
        f.limit = stack_.empty() ? deadline : std::min(stack_.back().limit, deadline);
        f.snap_pc = 0;
        f.snap_regs = f.regs;
        if (record_) {
            f.trace = std::make_shared<Trace>();
            f.trace->configs.push_back(Config{0, f.regs});
        }
        stack_.push_back(std::move(f));
    }

    // Finish the top frame with `value`; true when the whole run is over.
    bool finish(Natural value, RunResult& out, std::shared_ptr<Trace>* out_trace) {
        Frame done = std::move(stack_.back());
        stack_.pop_back();
        if (stack_.empty()) {
            out.halted = true;
            out.value = value;
            out.steps = t_;
            if (out_trace)
                *out_trace = done.trace;
            return true;
        }
        Frame& parent = stack_.back();
        parent.regs[done.dst] = done.kind == FrameKind::RunB ? Natural(value + 1) : value;
        after_instr(parent, done.trace);
        return false;
    }

    void after_instr(Frame& f, std::shared_ptr<Trace> sub) {
        ++f.pc;
        record(f, std::move(sub));
    }

    void record(Frame& f, std::shared_ptr<Trace> sub) {
        if (!record_)
            return;
        f.trace->configs.push_back(Config{f.pc, f.regs});
        f.trace->subs.push_back(std::move(sub));
    }

    bool repeats(Frame& f) {
        ++f.local;
        if (f.pc == f.snap_pc && f.regs == f.snap_regs)
            return true;
        if (++f.since == f.power) {
            f.power *= 2;
            f.since = 0;
            f.snap_pc = f.pc;
            f.snap_regs = f.regs;
        }
        return false;
    }

    RunResult loop(std::shared_ptr<Trace>* out_trace) {
        RunResult out;
        while (true) {
            Frame& f = stack_.back();
            const Program& p = *f.prog;
            if (f.pc >= p.size()) {
                if (finish(f.regs[0], out, out_trace))
                    return out;
                continue;
            }
            if (t_ >= f.limit) {
                if (timeout())
                    return RunResult::running();
                continue;
            }
            const Instr& in = p.code[f.pc];
            ++t_;
            switch (in.op) {
            case Op::Inc:
                ++f.regs[in.a];
                after_instr(f, nullptr);
                break;
            case Op::DecJz:
                if (f.regs[in.a] == 0) {
                    f.pc = in.b;
                    record(f, nullptr);
                } else {
                    --f.regs[in.a];
                    after_instr(f, nullptr);
                }
                break;
            case Op::Halt:
                f.pc = p.size();
                record(f, nullptr);
                if (finish(f.regs[0], out, out_trace))
                    return out;
                continue;
            case Op::Set:
                f.regs[in.a] = in.k;
                after_instr(f, nullptr);
                break;
            case Op::Prim:
                f.regs[in.a] = apply_prim(in.prim, f.regs[in.b], f.regs[in.c]);
                after_instr(f, nullptr);
                break;
            case Op::Call:
            case Op::RunB: {
                ProgramPtr callee = load(f.regs[in.b]);
                std::vector<Natural> regs = initial_registers(*callee, {f.regs[in.c]});
                Budget deadline = unbounded;
                FrameKind kind = FrameKind::Call;
                if (in.op == Op::RunB) {
                    kind = FrameKind::RunB;
                    deadline = sat_add(t_, to_u64_saturating(f.regs[in.d]));
                }
                std::size_t dst = in.a;
                push(std::move(callee), std::move(regs), kind, dst, deadline);
                continue;  // the parent's cycle check happens when the callee returns
            }
            }
            Frame& g = stack_.back();
            if (repeats(g)) {
                // This frame never halts: burn its remaining allowance.
                t_ = std::max(t_, g.limit);
            }
        }
    }

    // The outermost frame whose own deadline has passed gives up.
    bool timeout() {
        std::size_t k = 0;
        while (stack_[k].deadline > t_)
            ++k;
        if (k == 0)
            return true;
        stack_.resize(k);
        Frame& parent = stack_.back();
        const Instr& in = parent.prog->code[parent.pc];
        parent.regs[in.a] = 0;
        after_instr(parent, nullptr);
        return false;
    }

    bool record_;
    Budget t_ = 0;
    std::vector<Frame> stack_;
};

}  // namespace detail

inline RunResult run_program(const Program& p, const std::vector<Natural>& args, Budget b,
                             std::shared_ptr<Trace>* trace = nullptr) {
    detail::Engine e(trace != nullptr);
    auto ptr = std::make_shared<const Program>(p);
    return e.run_frame(ptr, initial_registers(p, args), b, trace);
}

inline RunResult run(const Natural& index, const std::vector<Natural>& args, Budget b,
                     std::shared_ptr<Trace>* trace = nullptr) {
    detail::Engine e(trace != nullptr);
    auto ptr = load(index);
    return e.run_frame(ptr, initial_registers(*ptr, args), b, trace);
}

}  // namespace metaprop::machine
