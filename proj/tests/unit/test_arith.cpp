#include "metaprop/arith/certificate_json.hpp"
#include "metaprop/arith/comparison.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace metaprop;
using namespace metaprop::arith;
namespace mp = metaprop::machine::programs;

namespace {

// Naive step-bounded interpreter for one-counter programs, the oracle for
// the lap-skipping decision procedure.
std::optional<long> naive_one_counter(const Program& p, long x, long budget) {
    std::size_t pc = 0;
    long c = x;
    for (long step = 0; step < budget; ++step) {
        if (pc >= p.size() || p.code[pc].op == Op::Halt)
            return c;
        const auto& in = p.code[pc];
        if (in.op == Op::Inc) {
            ++c;
            ++pc;
        } else if (in.a == 0 && c > 0) {
            --c;
            ++pc;
        } else {
            pc = in.b;
        }
    }
    return std::nullopt;
}

Program random_one_counter(std::mt19937_64& rng) {
    std::size_t len = 1 + rng() % 7;
    Program p{1, {}};
    for (std::size_t k = 0; k < len; ++k) {
        switch (rng() % 5) {
        case 0:
        case 1: p.code.push_back(machine::inc(0)); break;
        case 2:
        case 3: p.code.push_back(machine::decjz(0, rng() % (len + 1))); break;
        default: p.code.push_back(rng() % 3 ? machine::decjz(1, rng() % (len + 1)) : machine::halt());
        }
    }
    return p;
}

FormulaPtr at(const FormulaPtr& f, const std::string& x, long n) { return substitute(f, x, numeral(n)); }

// Small random Delta0 formulas in x and y.
struct Gen {
    std::mt19937_64& rng;
    std::vector<std::string> vars{"x", "y"};

    TermPtr term(int depth) {
        if (depth == 0 || rng() % 3 == 0) {
            if (rng() % 2)
                return var(vars[rng() % vars.size()]);
            return numeral(rng() % 4);
        }
        switch (rng() % 3) {
        case 0: return succ(term(depth - 1));
        case 1: return plus(term(depth - 1), term(depth - 1));
        default: return times(term(depth - 1), numeral(rng() % 3));
        }
    }

    FormulaPtr formula(int depth) {
        if (depth == 0 || rng() % 4 == 0)
            return rng() % 3 ? eq(term(2), term(2)) : le(term(2), term(2));
        switch (rng() % 5) {
        case 0: return neg(formula(depth - 1));
        case 1: return conj(formula(depth - 1), formula(depth - 1));
        case 2: return disj(formula(depth - 1), formula(depth - 1));
        case 3: return imp(formula(depth - 1), formula(depth - 1));
        default: {
            std::string b = "b" + std::to_string(depth);
            TermPtr bound = rng() % 2 ? var(vars[rng() % vars.size()]) : numeral(rng() % 4);
            vars.push_back(b);
            auto body = formula(depth - 1);
            vars.pop_back();
            return rng() % 2 ? exists_le(b, bound, body) : forall_le(b, bound, body);
        }
        }
    }
};

FormulaPtr evens_def() { return parse("(exists y (= (+ y y) x))"); }
FormulaPtr odds_def() { return parse("(exists y (= (S (+ y y)) x))"); }

Certificate tampered(Certificate c) {
    c.witnesses[0] = c.witnesses[0] == 0 ? Natural(1) : c.witnesses[0] - 1;
    return c;
}

}  // namespace

// ---- axioms -----------------------------------------------------------------------

TEST(Axioms, Examples) {
    EXPECT_TRUE(equal(axiom(Scheme::Ax1, {2, 3}).sentence, eq(plus(numeral(2), numeral(3)), numeral(5))));
    EXPECT_THROW(axiom(Scheme::Ax3, {0, 0}), BadParams);
    EXPECT_TRUE(equal(axiom(Scheme::Q2).sentence, forall("x", neq(succ(var("x")), zero()))));
    EXPECT_THROW(axiom(Scheme::Ax1, {1}), BadParams);
    EXPECT_EQ(q_axioms().size(), 7u);
}

TEST(Axioms, LeIsExpanded) {
    auto a4 = axiom(Scheme::Ax4, {1}).sentence;
    EXPECT_EQ(print(a4), "(forall x (imp (exists z (= (+ z x) (S 0))) (or (= x 0) (= x (S 0)))))");
    auto a5 = axiom(Scheme::Ax5, {0}).sentence;
    EXPECT_EQ(print(a5), "(forall x (or (exists z (= (+ z x) 0)) (exists z (= (+ z 0) x))))");
}

TEST(Axioms, WellFormed) {
    auto a = axiom(Scheme::Ax2, {3, 4});
    EXPECT_TRUE(well_formed(a));
    a.sentence = axiom_sentence(Scheme::Ax2, {3, 5});
    EXPECT_FALSE(well_formed(a));
    AxiomInstance bad{Scheme::Ax3, {2, 2}, neq(numeral(2), numeral(2))};
    EXPECT_FALSE(well_formed(bad));
}

// ---- sigma1 certificates ----------------------------------------------------------

TEST(Sigma1Prove, Examples) {
    auto c = sigma1_prove(parse("(exists y (= (+ y (S (S 0))) (S (S (S (S 0))))))"), 10);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->witnesses, std::vector<Natural>{2});
    EXPECT_TRUE(check_certificate(*c));

    auto d = sigma1_prove(eq(plus(numeral(1), numeral(1)), numeral(2)), 0);
    ASSERT_TRUE(d);
    ASSERT_EQ(d->cited_axioms.size(), 1u);
    EXPECT_EQ(key(d->cited_axioms[0]), (AxiomKey{Scheme::Ax1, {1, 1}}));
    EXPECT_TRUE(check_certificate(*d));

    auto f = parse("(exists y (= (+ y y) (S 0)))");
    for (int b : {0, 10, 100})
        EXPECT_FALSE(sigma1_prove(f, b));
    EXPECT_THROW(sigma1_prove(parse("(forall y (= y y))"), 5), NotSigma1);
    EXPECT_THROW(sigma1_prove(parse("(exists y (= y x))"), 5), NotSigma1);
}

TEST(Sigma1Prove, AgreesWithEvaluatorOnRandomSentences) {
    std::mt19937_64 rng(11);
    int emitted = 0;
    for (int k = 0; k < 300; ++k) {
        Gen g{rng};
        auto m = g.formula(3);
        auto f = exists("y", at(m, "x", rng() % 6));
        auto r = eval_sigma1(f, 12);
        auto c = sigma1_prove(f, 12);
        ASSERT_EQ(r.found, c.has_value()) << print(f);
        if (c) {
            ++emitted;
            EXPECT_TRUE(check_certificate(*c)) << print(f);
            EXPECT_FALSE(check_certificate(tampered(*c))) << print(f);
        }
    }
    EXPECT_GT(emitted, 50);
}

TEST(Check, RejectsMalformedAndExtraCitations) {
    auto c = *sigma1_prove(parse("(exists y (= (+ y (S 0)) (S (S 0))))"), 5);
    ASSERT_TRUE(check_certificate(c));

    auto wrong = c;
    wrong.cited_axioms[0].sentence = eq(plus(numeral(1), numeral(1)), numeral(3));
    EXPECT_FALSE(check_certificate(wrong));

    auto extra = c;
    extra.cited_axioms.push_back(axiom(Scheme::Ax1, {7, 7}));
    EXPECT_FALSE(check_certificate(extra));

    auto dup = c;
    dup.cited_axioms.push_back(c.cited_axioms[0]);
    EXPECT_FALSE(check_certificate(dup));

    auto q = c;
    q.cited_axioms.push_back(axiom(Scheme::Q2));
    EXPECT_FALSE(check_certificate(q));

    auto missing = c;
    missing.cited_axioms.clear();
    EXPECT_FALSE(check_certificate(missing));

    auto other_kind = c;
    other_kind.kind = Kind::function_definition;
    EXPECT_FALSE(check_certificate(other_kind));
}

TEST(Check, BoundedQuantifiersCiteAx4) {
    // forall b <= 2 (b + 0 = b): all three instances plus Ax4(2)
    auto c = strong_rep_certificate(parse("(foralle b x (= (+ b 0) b))"), "x", 2);
    EXPECT_TRUE(check_certificate(c));
    std::set<AxiomKey> keys;
    for (const auto& a : c.cited_axioms)
        keys.insert(key(a));
    EXPECT_TRUE(keys.count({Scheme::Ax4, {2}}));
    for (int i = 0; i <= 2; ++i)
        EXPECT_TRUE(keys.count({Scheme::Ax1, {i, 0}}));
}

// ---- witness comparison -----------------------------------------------------------

TEST(WitnessCompare, Shape) {
    auto wc = witness_compare(evens_def(), odds_def());
    EXPECT_EQ(print(wc.lt),
              "(exists Y (and (= (+ Y Y) x) (foralle Z Y (not (= (S (+ Z Z)) x)))))");
    EXPECT_EQ(print(wc.le),
              "(exists Y (and (= (S (+ Y Y)) x) (foralle Z Y (or (= Z Y) (not (= (+ Z Z) x))))))");
    EXPECT_THROW(witness_compare(evens_def(), parse("(exists y (= y z))")), FreeVariableMismatch);
    EXPECT_THROW(witness_compare(evens_def(), parse("(forall y (= y x))")), NotSigma1);
}

TEST(WitnessCompare, PacksBlocks) {
    auto f = parse("(exists a (exists b (= (+ a b) x)))");
    auto p = pack(f);
    EXPECT_EQ(print(p), "(exists w (existsle a w (existsle b w (= (+ a b) x))))");
    for (long n = 0; n <= 10; ++n)
        EXPECT_EQ(eval_sigma1(at(f, "x", n), 20).found, eval_sigma1(at(p, "x", n), 20).found);
}

TEST(WitnessCompare, SelfDominationAndTrichotomy) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 40; ++k) {
        Gen g{rng};
        auto s0 = exists("y", g.formula(2));
        auto s1 = exists("y", g.formula(2));
        if (free_vars(s0) != std::set<std::string>{"x"} || free_vars(s1) != free_vars(s0))
            continue;
        auto self = witness_compare(s0, s0);
        auto wc = witness_compare(s0, s1);
        for (long n = 0; n <= 50; n += 5) {
            bool a = eval_sigma1(at(s0, "x", n), 30).found;
            bool b = eval_sigma1(at(s1, "x", n), 30).found;
            // z <= y includes y, so sigma < sigma always fails and sigma <= sigma holds with sigma
            EXPECT_FALSE(eval_sigma1(at(self.lt, "x", n), 30).found);
            EXPECT_EQ(eval_sigma1(at(self.le, "x", n), 30).found, a);
            if (a || b) {
                bool lt = eval_sigma1(at(wc.lt, "x", n), 30).found;
                bool le = eval_sigma1(at(wc.le, "x", n), 30).found;
                EXPECT_NE(lt, le) << print(s0) << " " << print(s1) << " " << n;
            }
        }
    }
}

TEST(ComparisonRefute, Examples) {
    auto wc = witness_compare(odds_def(), evens_def());
    auto c = comparison_refute(wc, 2, 10);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->witnesses, std::vector<Natural>{1});
    EXPECT_TRUE(check_certificate(*c));
    EXPECT_FALSE(comparison_refute(wc, 3, 10));  // sigma holds first
    EXPECT_FALSE(comparison_refute(wc, 40, 5));  // witness beyond the budget
}

TEST(ComparisonRefute, FuzzAndTamper) {
    std::mt19937_64 rng(17);
    int emitted = 0;
    for (int k = 0; k < 100; ++k) {
        Gen g{rng};
        auto s0 = exists("y", g.formula(2));
        auto s1 = exists("y", g.formula(2));
        auto fv0 = free_vars(s0), fv1 = free_vars(s1);
        if (fv0 != std::set<std::string>{"x"} || fv1 != fv0)
            continue;
        auto wc = witness_compare(s0, s1);
        for (long n = 0; n <= 6; ++n) {
            bool le = eval_sigma1(at(wc.le, "x", n), 15).found;
            auto c = comparison_refute(wc, n, 15);
            ASSERT_EQ(le, c.has_value()) << print(wc.lt) << " " << n;
            if (!c)
                continue;
            ++emitted;
            EXPECT_TRUE(check_certificate(*c));
            EXPECT_FALSE(check_certificate(tampered(*c)));
        }
    }
    EXPECT_GT(emitted, 20);
}

// ---- one-counter arithmetization ------------------------------------------------

TEST(OneCounter, RejectsOtherPrograms) {
    EXPECT_FALSE(is_one_counter(mp::constant(3)));
    EXPECT_FALSE(is_one_counter(mp::addition()));
    EXPECT_TRUE(is_one_counter(mp::evens_recognizer()));
    EXPECT_THROW(domain_formula(mp::constant(3)), NotArithmetizable);
    EXPECT_THROW(one_counter_run(mp::addition(), 1), NotArithmetizable);
}

TEST(OneCounter, RunAgreesWithNaiveInterpreter) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 400; ++k) {
        Program p = random_one_counter(rng);
        for (long x = 0; x <= 30; ++x) {
            auto fast = one_counter_run(p, x);
            auto slow = naive_one_counter(p, x, 20000);
            ASSERT_EQ(fast.has_value(), slow.has_value()) << machine::to_text(p) << " x=" << x;
            if (fast) {
                ASSERT_EQ(*fast, *slow);
            }
        }
        // a very large input is decided without simulating every step
        Natural big = Natural(1) << 200;
        auto shape = analyze_one_counter(p);
        EXPECT_EQ(one_counter_run(p, big), shape_outcome(shape, big)) << machine::to_text(p);
    }
}

TEST(OneCounter, MatchesTheMachine) {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 100; ++k) {
        Program p = random_one_counter(rng);
        for (long x = 0; x <= 12; ++x) {
            auto r = machine::run_program(p, {Natural(x)}, 50000);
            auto o = one_counter_run(p, x);
            ASSERT_EQ(r.halted, o.has_value());
            if (o) {
                ASSERT_EQ(r.value, *o);
            }
        }
    }
}

TEST(OneCounter, ShapePredictsTail) {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 200; ++k) {
        Program p = random_one_counter(rng);
        auto s = analyze_one_counter(p);
        for (long x = 0; x <= 80; ++x)
            ASSERT_EQ(shape_outcome(s, x), one_counter_run(p, x)) << machine::to_text(p) << " x=" << x;
    }
}

TEST(OneCounter, ModRecognizer) {
    for (std::size_t m = 1; m <= 4; ++m)
        for (std::size_t r = 0; r < m; ++r) {
            Program p = mp::mod_recognizer(m, r);
            for (long x = 0; x <= 20; ++x)
                EXPECT_EQ(one_counter_run(p, x).has_value(), std::size_t(x) % m == r);
        }
    EXPECT_THROW(mp::mod_recognizer(2, 2), Error);
}

TEST(DomainFormula, AgreesWithRunsAndStaysSmall) {
    std::mt19937_64 rng(6);
    for (int k = 0; k < 100; ++k) {
        Program p = random_one_counter(rng);
        auto sigma = domain_formula(p);
        EXPECT_EQ(classify(sigma), FormulaClass::sigma1);
        EXPECT_EQ(free_vars(sigma), std::set<std::string>{"x"});
        for (long x = 0; x <= 40; ++x)
            ASSERT_EQ(eval_sigma1(at(sigma, "x", x), x).found, one_counter_run(p, x).has_value())
                << print(sigma) << " x=" << x;
    }
}

TEST(DefineFunction, Successor) {
    auto phi = define_function_formula(mp::successor());
    for (long n = 0; n <= 10; ++n) {
        auto c = function_certificate(phi, n, 20);
        ASSERT_TRUE(c);
        EXPECT_EQ(c->witnesses[0], n + 1);
        EXPECT_TRUE(check_certificate(*c));
        EXPECT_FALSE(check_certificate(tampered(*c)));
    }
}

TEST(DefineFunction, ConstantZero) {
    auto phi = define_function_formula(mp::counter_constant(0));
    for (long n = 0; n <= 10; ++n) {
        auto at_n = at(phi, "x", n);
        auto yes = strong_rep_certificate(at_n, "y", 0);
        auto no = strong_rep_certificate(at_n, "y", 1);
        EXPECT_TRUE(check_certificate(yes));
        EXPECT_TRUE(check_certificate(no));
        EXPECT_EQ(yes.conclusion->kind, Formula::Kind::And);
        EXPECT_EQ(no.conclusion->kind, Formula::Kind::Not);
    }
}

TEST(DefineFunction, CompositionAgreesWithChainedRuns) {
    std::vector<Program> fs{mp::successor(), mp::counter_constant(2), mp::evens_characteristic(),
                            Program{1, {machine::decjz(0, 1)}}};
    for (const auto& f : fs)
        for (const auto& g : fs) {
            auto phi = define_function_formula(compose_one_counter(g, f));
            for (long n = 0; n <= 12; ++n) {
                Natural mid = *one_counter_run(g, n);
                Natural want = *one_counter_run(f, mid);
                auto c = function_certificate(phi, n, 40);
                ASSERT_TRUE(c);
                EXPECT_EQ(c->witnesses[0], want);
                EXPECT_TRUE(check_certificate(*c));
            }
        }
}

TEST(DefineFunction, NonTotal) {
    EXPECT_THROW(define_function_formula(mp::evens_recognizer()), NonTotalObserved);
    EXPECT_THROW(define_function_formula(Program{1, {machine::decjz(1, 0)}}), NonTotalObserved);
}

TEST(StrongRep, FromCharacteristicFunction) {
    auto phi = define_function_formula(mp::evens_characteristic());
    auto psi = strong_rep_from_function(phi);
    EXPECT_TRUE(equal(psi, substitute(phi, "y", numeral(1))));
    auto two = strong_rep_certificate(psi, "x", 2);
    auto three = strong_rep_certificate(psi, "x", 3);
    EXPECT_TRUE(check_certificate(two));
    EXPECT_TRUE(check_certificate(three));
    EXPECT_NE(two.conclusion->kind, Formula::Kind::Not);
    EXPECT_EQ(three.conclusion->kind, Formula::Kind::Not);

    auto one = strong_rep_from_function(define_function_formula(mp::counter_constant(1)));
    for (long n = 0; n <= 10; ++n)
        EXPECT_NE(strong_rep_certificate(one, "x", n).conclusion->kind, Formula::Kind::Not);
    EXPECT_THROW(strong_rep_from_function(evens_def()), ArityMismatch);
}

// ---- Rosser ------------------------------------------------------------------------

TEST(Rosser, EvensOdds) {
    auto r = rosser_separator(evens_def(), odds_def());
    EXPECT_TRUE(equal(r.psi, witness_compare(evens_def(), odds_def()).lt));
    auto p = rosser_prove(r, 2, 10);
    ASSERT_TRUE(p);
    EXPECT_TRUE(check_certificate(*p));
    auto q = rosser_refute(r, 3, 10);
    ASSERT_TRUE(q);
    EXPECT_TRUE(check_certificate(*q));
}

TEST(Rosser, NeitherSide) {
    auto a = parse("(exists y (= x (S (S 0))))");
    auto b = parse("(exists y (= x (S (S (S 0)))))");
    auto r = rosser_separator(a, b);
    EXPECT_FALSE(rosser_prove(r, 7, 50));
    EXPECT_FALSE(rosser_refute(r, 7, 50));
}

TEST(Rosser, FromProgramPair) {
    resets::DisjointPair pair{{machine::encode(mp::mod_recognizer(3, 0))}, {machine::encode(mp::mod_recognizer(3, 1))}};
    auto r = rosser_separator(pair);
    for (long n = 0; n <= 20; ++n) {
        auto p = rosser_prove(r, n, 50);
        auto q = rosser_refute(r, n, 50);
        EXPECT_EQ(p.has_value(), n % 3 == 0) << n;
        EXPECT_EQ(q.has_value(), n % 3 == 1) << n;
        if (p) {
            EXPECT_TRUE(check_certificate(*p));
        }
        if (q) {
            EXPECT_TRUE(check_certificate(*q));
        }
    }
    EXPECT_THROW(rosser_separator(resets::canonical_ei_pair()), NotArithmetizable);
}

TEST(CertificateJson, RoundTripAndTamper) {
    auto c = sigma1_prove(parse("(exists y (= (+ y y) (S (S (S (S 0))))))"), 100);
    ASSERT_TRUE(c);
    auto j = to_json(*c);
    EXPECT_EQ(j["version"], 1);
    auto back = certificate_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_TRUE(check_certificate(back));
    EXPECT_EQ(to_json(back), j);
    j["witnesses"][0] = "1";
    EXPECT_FALSE(check_certificate(certificate_from_json(j)));
    j["version"] = 2;
    EXPECT_THROW(certificate_from_json(j), Error);
}
