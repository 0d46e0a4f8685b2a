#include "metaprop/machine/smn.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace metaprop;
using namespace metaprop::machine;

namespace {

// Naive interpreter for inc/decjz/halt/set programs. Shares no code with run.hpp.
struct Naive {
    bool halted;
    Natural value;
    std::uint64_t steps;
};

Naive naive_run(const Program& p, std::vector<Natural> args, std::uint64_t b) {
    std::map<std::size_t, Natural> r;
    for (std::size_t k = 0; k < p.arity && k < args.size(); ++k)
        r[k] = args[k];
    std::size_t pc = 0;
    std::uint64_t t = 0;
    while (pc < p.code.size()) {
        if (t == b)
            return {false, 0, t};
        ++t;
        const Instr& in = p.code[pc];
        switch (in.op) {
        case Op::Inc: ++r[in.a]; ++pc; break;
        case Op::DecJz:
            if (r[in.a] == 0) {
                pc = in.b;
            } else {
                --r[in.a];
                ++pc;
            }
            break;
        case Op::Halt: return {true, r[0], t};
        case Op::Set: r[in.a] = in.k; ++pc; break;
        default: ADD_FAILURE() << "naive interpreter: unsupported op"; return {false, 0, t};
        }
    }
    return {true, r[0], t};
}

Program random_core(std::mt19937_64& g, std::size_t arity, std::size_t regs = 4) {
    Program p;
    p.arity = arity;
    std::size_t n = 1 + g() % 8;
    for (std::size_t k = 0; k < n; ++k) {
        switch (g() % 7) {
        case 0:
        case 1: p.code.push_back(inc(g() % regs)); break;
        case 2:
        case 3:
        case 4: p.code.push_back(decjz(g() % regs, g() % n)); break;
        case 5: p.code.push_back(set(g() % regs, g() % 3)); break;
        default: p.code.push_back(halt()); break;
        }
    }
    return p;
}

}  // namespace

TEST(Encode, RoundTripAndTotality) {
    EXPECT_EQ(decode(encode(programs::halt_only())), programs::halt_only());
    EXPECT_EQ(decode(0), canonical_program());
    EXPECT_EQ(decode(1), canonical_program());
    std::mt19937_64 g(1);
    for (int k = 0; k < 300; ++k) {
        Natural c = g() % 100000;
        Program p = decode(c);
        EXPECT_TRUE(p.valid());
        if (is_program_code(c)) {
            EXPECT_EQ(encode(p), c);
        }
    }
}

TEST(Encode, InjectiveOnRandomPrograms) {
    std::mt19937_64 g(2);
    std::map<Natural, Program> seen;
    for (int k = 0; k < 100; ++k) {
        Program p = random_core(g, 1 + g() % 3);
        if (g() % 3 == 0)
            p.code.push_back(prim(static_cast<PrimOp>(g() % prim_count), g() % 4, g() % 4, g() % 4));
        if (g() % 4 == 0)
            p.code.push_back(runb(g() % 4, g() % 4, g() % 4, g() % 4));
        Natural c = encode(p);
        EXPECT_EQ(decode(c), p);
        auto [it, fresh] = seen.emplace(c, p);
        if (!fresh) {
            EXPECT_EQ(it->second, p);
        }
    }
}

TEST(Encode, RejectsInvalid) {
    EXPECT_THROW(encode(Program{1, {decjz(0, 5)}}), ProgramError);
    EXPECT_THROW(encode(Program{1, {inc(max_register + 1)}}), ProgramError);
}

TEST(Text, RoundTrip) {
    std::mt19937_64 g(3);
    for (int k = 0; k < 100; ++k) {
        Program p = random_core(g, g() % 3);
        p.code.push_back(call(1, 2, 3));
        p.code.push_back(prim(PrimOp::AtomIndex, 0, 1, 2));
        EXPECT_EQ(from_text(to_text(p)), p);
    }
    auto p = from_text("# successor\ninc 0\nhalt\n");
    EXPECT_EQ(p, programs::successor());
    EXPECT_THROW(from_text("inc 0\narity 2\n"), ProgramError);
    EXPECT_THROW(from_text("jump 3\n"), ProgramError);
    EXPECT_THROW(from_text("decjz 0 9\n"), ProgramError);
}

TEST(Run, Examples) {
    auto h = run(encode(programs::halt_only()), {}, 1);
    EXPECT_TRUE(h.halted);
    EXPECT_EQ(h.value, 0);
    EXPECT_FALSE(run(encode(programs::halt_only()), {}, 0).halted);
    auto s = run(encode(programs::successor()), {4}, 100);
    EXPECT_TRUE(s.halted);
    EXPECT_EQ(s.value, 5);
    EXPECT_FALSE(run(encode(programs::self_loop()), {0}, 1000000).halted);
    EXPECT_FALSE(run(0, {0}, 1000000).halted);
    auto add = run(encode(programs::addition()), {3, 4}, 1000);
    EXPECT_TRUE(add.halted);
    EXPECT_EQ(add.value, 7);
}

TEST(Run, FallingOffTheEndIsFree) {
    auto r = run_program(programs::identity(), {9}, 0);
    EXPECT_TRUE(r.halted);
    EXPECT_EQ(r.value, 9);
    EXPECT_EQ(r.steps, 0u);
    EXPECT_EQ(run_program(programs::successor(), {0}, 5).steps, 2u);
}

TEST(Run, AgreesWithNaiveInterpreter) {
    std::mt19937_64 g(4);
    for (int k = 0; k < 500; ++k) {
        Program p = random_core(g, 1 + g() % 2);
        std::vector<Natural> args{Natural(g() % 5), Natural(g() % 5)};
        std::uint64_t b = g() % 300;
        auto a = run_program(p, args, b);
        auto n = naive_run(p, args, b);
        ASSERT_EQ(a.halted, n.halted) << to_text(p);
        if (n.halted) {
            EXPECT_EQ(a.value, n.value);
            EXPECT_EQ(a.steps, n.steps);
        }
    }
}

TEST(Run, Monotone) {
    std::mt19937_64 g(5);
    for (int k = 0; k < 200; ++k) {
        Program p = random_core(g, 1);
        Natural x = g() % 6;
        RunResult prev;
        for (std::uint64_t b : {0, 1, 3, 10, 30, 100, 1000}) {
            auto r = run_program(p, {x}, b);
            if (prev.halted) {
                ASSERT_TRUE(r.halted);
                EXPECT_EQ(r.value, prev.value);
            }
            prev = r;
        }
    }
}

TEST(Run, CallAndRunbShareTheStepCounter) {
    Natural succ = encode(programs::successor());
    // r1 := succ index; r0 := phi_succ(r0)
    Program caller{1, {set(1, succ), call(0, 1, 0), halt()}};
    auto r = run_program(caller, {4}, 100);
    ASSERT_TRUE(r.halted);
    EXPECT_EQ(r.value, 5);
    EXPECT_EQ(r.steps, 5u);  // set, call, inc, halt (callee), halt
    EXPECT_FALSE(run_program(caller, {4}, 4).halted);

    // runb with allowance 2 sees the callee halt; allowance 1 does not
    for (int s : {1, 2}) {
        Program bounded{1, {set(1, succ), set(2, s), runb(0, 1, 0, 2), halt()}};
        auto q = run_program(bounded, {4}, 100);
        ASSERT_TRUE(q.halted);
        EXPECT_EQ(q.value, s == 2 ? 6 : 0);
        EXPECT_EQ(q.steps, 4u + s);
    }
}

TEST(Run, RunbMatchesTopLevelRun) {
    std::mt19937_64 g(6);
    for (int k = 0; k < 200; ++k) {
        Program callee = random_core(g, 1);
        Natural e = encode(callee);
        Natural x = g() % 5;
        std::uint64_t s = g() % 60;
        Program wrapper{1, {set(1, e), set(2, s), runb(0, 1, 0, 2), halt()}};
        auto w = run_program(wrapper, {x}, unbounded);
        auto d = run(e, {x}, s);
        ASSERT_TRUE(w.halted);
        EXPECT_EQ(w.value, d.halted ? Natural(d.value + 1) : Natural(0));
    }
}

TEST(Run, NestedTimeoutInsideRunb) {
    // callee loops forever; a runb around a call around the loop must still return 0
    Natural loop = encode(programs::self_loop());
    Program mid{1, {set(1, loop), call(0, 1, 0), halt()}};
    Natural m = encode(mid);
    Program outer{1, {set(1, m), set(2, 50), runb(0, 1, 0, 2), halt()}};
    auto r = run_program(outer, {0}, 1000);
    ASSERT_TRUE(r.halted);
    EXPECT_EQ(r.value, 0);
    EXPECT_EQ(r.steps, 54u);
    EXPECT_FALSE(run_program(outer, {0}, 53).halted);
}

TEST(Prims, Table) {
    EXPECT_EQ(apply_prim(PrimOp::Pair, 1, 2), cantor_pair(1, 2));
    EXPECT_EQ(apply_prim(PrimOp::Left, cantor_pair(7, 9), 0), 7);
    EXPECT_EQ(apply_prim(PrimOp::Right, cantor_pair(7, 9), 0), 9);
    EXPECT_EQ(apply_prim(PrimOp::Monus, 3, 5), 0);
    EXPECT_EQ(apply_prim(PrimOp::Lt, 3, 5), 1);
    EXPECT_EQ(apply_prim(PrimOp::Eq, 3, 5), 0);
    for (int n : {0, 1, 4}) {
        Natural c = apply_prim(PrimOp::AtomCode, n, 0);
        EXPECT_EQ(c, logic::goedel(logic::janiczak_atom(n)));
        EXPECT_EQ(apply_prim(PrimOp::AtomIndex, c, 0), n + 1);
    }
    EXPECT_EQ(apply_prim(PrimOp::AtomIndex, 12345, 0), 0);
    EXPECT_EQ(apply_prim(PrimOp::CycleCode, 1, 0), logic::goedel(logic::exact_cycle_atom(2)));
    EXPECT_EQ(apply_prim(PrimOp::AtomCode, 5000, 0), 0);
}

TEST(KleeneT, AcceptsOwnTraces) {
    Natural add = encode(programs::addition());
    Program caller{1, {set(1, encode(programs::successor())), call(0, 1, 0), inc(0), halt()}};
    Natural c = encode(caller);
    for (Natural x = 0; x < 5; ++x) {
        auto y = halting_trace_code(c, x, 1000);
        ASSERT_TRUE(y.has_value());
        EXPECT_TRUE(kleene_T(c, x, *y));
        EXPECT_EQ(check_trace_code(c, x, *y).output, x + 2);
        EXPECT_FALSE(kleene_T(c, x + 1, *y));
        EXPECT_FALSE(kleene_T(add, x, *y));
    }
}

TEST(KleeneT, RejectsCorruption) {
    Natural c = encode(programs::evens_characteristic());
    auto y = halting_trace_code(c, 6, 1000);
    ASSERT_TRUE(y.has_value());
    std::mt19937_64 g(7);
    int rejected = 0;
    for (int k = 0; k < 200; ++k) {
        Natural bad = *y ^ (Natural(1) << (g() % msb(*y)));
        rejected += !kleene_T(c, 6, bad);
    }
    EXPECT_EQ(rejected, 200);
    EXPECT_FALSE(kleene_T(c, 6, *y + 1));
    EXPECT_FALSE(kleene_T(c, 6, 0));
}

TEST(KleeneT, RunbTimeoutIsReverified) {
    Natural loop = encode(programs::self_loop());
    Program p{1, {set(1, loop), set(2, 10), runb(0, 1, 0, 2), halt()}};
    Natural i = encode(p);
    auto y = halting_trace_code(i, 3, 1000);
    ASSERT_TRUE(y.has_value());
    auto chk = check_trace_code(i, 3, *y);
    EXPECT_TRUE(chk.valid);
    EXPECT_EQ(chk.output, 0);
    EXPECT_EQ(chk.steps, run(i, {3}, 1000).steps);
}

// f(b): the codes of traces with at most b steps. A trace accepted by T has
// steps <= b exactly when the direct run halts within b.
TEST(KleeneT, BoundedSearchMatchesSimulation) {
    std::mt19937_64 g(8);
    for (int k = 0; k < 100; ++k) {
        Program p = random_core(g, 1);
        if (g() % 2)
            p.code.insert(p.code.begin(), {set(3, encode(programs::successor())), call(2, 3, 0)});
        if (!p.valid()) {
            --k;
            continue;
        }
        Natural i = encode(p);
        Natural x = g() % 5;
        std::uint64_t b = g() % 80;
        auto direct = run(i, {x}, b);
        auto y = halting_trace_code(i, x, 100000);
        bool found = false;
        if (y) {
            auto chk = check_trace_code(i, x, *y);
            ASSERT_TRUE(chk.valid);
            found = chk.steps <= b;
            if (found) {
                EXPECT_EQ(chk.output, direct.value);
            }
        }
        EXPECT_EQ(found, direct.halted);
    }
}

TEST(Smn, AdditionExample) {
    Natural c = encode(programs::addition());
    Natural s = smn(1, 1, c, {3});
    auto r = run(s, {4}, smn_inflate(1000, 1, 1));
    ASSERT_TRUE(r.halted);
    EXPECT_EQ(r.value, 7);
    EXPECT_EQ(r.value, run(c, {3, 4}, 1000).value);
    EXPECT_NE(smn(1, 1, c, {0}), smn(1, 1, c, {1}));
}

TEST(Smn, AgreesOnRandomInstances) {
    std::mt19937_64 g(9);
    const Budget b = 10000;
    for (int k = 0; k < 200; ++k) {
        std::size_t m = 1 + g() % 2, n = 1 + g() % 2;
        Program p = random_core(g, m + n - g() % 2, 5);
        Natural i = encode(p);
        std::vector<Natural> ys, zs;
        for (std::size_t j = 0; j < m; ++j)
            ys.push_back(g() % 6);
        for (std::size_t j = 0; j < n; ++j)
            zs.push_back(g() % 6);
        std::vector<Natural> all = ys;
        all.insert(all.end(), zs.begin(), zs.end());
        auto direct = run(i, all, b);
        auto viaS = run(smn(m, n, i, ys), zs, smn_inflate(b, m, n));
        EXPECT_EQ(direct, viaS) << to_text(p);
        // never halts earlier than the inflation allows
        EXPECT_EQ(run(smn(m, n, i, ys), zs, b).halted && !direct.halted, false);
    }
}

TEST(Smn, RequiresPositiveArities) {
    EXPECT_THROW(smn(0, 1, 7, {}), ProgramError);
    EXPECT_THROW(smn(1, 0, 7, {1}), ProgramError);
}

TEST(DomEnum, Examples) {
    EXPECT_TRUE(dom_enum(encode(programs::self_loop()), 100000).empty());
    auto id = dom_enum(encode(programs::identity()), 30);
    ASSERT_EQ(id.size(), 31u);
    EXPECT_EQ(id.back(), 30);
    auto ev = dom_enum(encode(programs::evens_recognizer()), 1000);
    EXPECT_FALSE(ev.empty());
    for (const auto& x : ev)
        EXPECT_EQ(x % 2, 0);
    auto od = dom_enum(encode(programs::odds_recognizer()), 1000);
    for (const auto& x : od)
        EXPECT_EQ(x % 2, 1);
}

TEST(DomEnum, MonotoneInStage) {
    std::mt19937_64 g(10);
    for (int k = 0; k < 30; ++k) {
        Natural i = encode(random_core(g, 1));
        auto a = dom_enum(i, 20), b = dom_enum(i, 60);
        EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    }
}

TEST(Programs, FiniteSetAndCharacteristic) {
    Program f = programs::finite_set({2, 5, 9});
    for (Natural x = 0; x < 12; ++x) {
        bool in = x == 2 || x == 5 || x == 9;
        EXPECT_EQ(run_program(f, {x}, 1000).halted, in);
    }
    EXPECT_FALSE(run_program(programs::finite_set({}), {0}, 1000).halted);
    for (Natural x = 0; x < 10; ++x)
        EXPECT_EQ(run_program(programs::evens_characteristic(), {x}, 1000).value, x % 2 == 0 ? 1 : 0);
}
