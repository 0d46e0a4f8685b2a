#include "metaprop/resets/resets.hpp"

#include <gtest/gtest.h>

using namespace metaprop;
using namespace metaprop::resets;

namespace {

const Natural& evens() {
    static const Natural i = encode(programs::evens_recognizer());
    return i;
}
const Natural& odds() {
    static const Natural i = encode(programs::odds_recognizer());
    return i;
}

}  // namespace

TEST(K, EmptyDomainIndexIsOutside) {
    Natural i = encode(programs::self_loop());
    EXPECT_FALSE(halts_within(creative_K(), i, 100000));
    EXPECT_TRUE(dom_enum(i, 1000).empty());
    EXPECT_EQ(productive(i), i);
}

TEST(K, TotalProgramIndexIsInside) {
    for (const Program& p : {programs::successor(), programs::identity(), programs::constant(3)})
        EXPECT_TRUE(halts_within(creative_K(), encode(p), 1000));
}

TEST(K, ProductiveFunctionOnFiniteSubsetsOfComplement) {
    std::vector<Natural> outside;
    for (Natural x = 0; x <= 100; ++x)
        if (!halts_within(creative_K(), x, 100000))
            outside.push_back(x);
    ASSERT_GT(outside.size(), 50u);
    for (std::size_t k = 0; k < 5; ++k) {
        std::vector<Natural> members(outside.begin() + k, outside.begin() + 3 * k + 1);
        Natural i = encode(programs::finite_set(members));
        Natural p = productive(i);
        EXPECT_FALSE(halts_within(ReSet{i}, p, 100000));
        EXPECT_FALSE(halts_within(creative_K(), p, 100000));
    }
}

TEST(CanonicalPair, Membership) {
    auto pair = canonical_ei_pair();
    Natural zero = encode(programs::constant(0));
    Natural one = encode(programs::constant(1));
    Natural loop = encode(programs::self_loop());
    EXPECT_TRUE(halts_within(pair.left, zero, 1000));
    EXPECT_FALSE(halts_within(pair.right, zero, 1000));
    EXPECT_TRUE(halts_within(pair.right, one, 1000));
    EXPECT_FALSE(halts_within(pair.left, one, 1000));
    EXPECT_FALSE(halts_within(pair.left, loop, 100000));
    EXPECT_FALSE(halts_within(pair.right, loop, 100000));
}

TEST(CanonicalPair, DisjointOnSmallRange) {
    auto v = verify_disjoint(canonical_ei_pair(), 200, 10000);
    ASSERT_TRUE(v.has_value());
    auto w = std::get<VerifiedUpTo>(v->witness);
    EXPECT_EQ(w.bound, 200);
    EXPECT_FALSE(verify_disjoint(DisjointPair{ReSet{evens()}, ReSet{evens()}}, 4, 1000).has_value());
}

TEST(StageMembership, Triples) {
    ReSet e{evens()};
    EXPECT_EQ(member(e, 4, 100), Membership::in);
    EXPECT_EQ(member(e, 3, 100), Membership::out_so_far);
    EXPECT_EQ(member(e, 300, 100), Membership::unknown);
    EXPECT_EQ(member(e, 2, 2), Membership::out_so_far);
    EXPECT_EQ(member(e, 2, 5), Membership::in);
}

TEST(Race, OutputsAndTies) {
    Program r = progs::race();
    Natural fast = encode(programs::identity());
    Natural slow = encode(programs::successor());
    EXPECT_EQ(run_program(r, {fast, slow, 3}, 10000).value, 1);
    EXPECT_EQ(run_program(r, {slow, fast, 3}, 10000).value, 0);
    // equal step counts: the smaller index wins
    Natural a = encode(Program{1, {inc(0), halt()}});
    Natural b = encode(Program{1, {inc(1), halt()}});
    Natural lo = std::min(a, b), hi = std::max(a, b);
    EXPECT_EQ(run_program(r, {lo, hi, 0}, 10000).value, 1);
    EXPECT_EQ(run_program(r, {hi, lo, 0}, 10000).value, 0);
    EXPECT_FALSE(run_program(r, {encode(programs::self_loop()), encode(programs::self_loop()), 0}, 10000).halted);
}

TEST(Dominance, DisjointSetsAreReproducedExtensionally) {
    Natural e = dominance_index(evens(), odds());
    EXPECT_EQ(dom_enum_upto(e, 20, 100000), dom_enum_upto(evens(), 20, 1000));
    Natural f = dominance_index(odds(), evens());
    EXPECT_EQ(dom_enum_upto(f, 20, 100000), dom_enum_upto(odds(), 20, 1000));
}

TEST(Dominance, NoSharedElementsAndExactlyOneSide) {
    Natural i = encode(programs::identity());
    Natural j = evens();
    Natural eij = dominance_index(i, j), eji = dominance_index(j, i);
    for (Natural x = 0; x <= 50; ++x) {
        bool a = run(eij, {x}, 10000).halted;
        bool b = run(eji, {x}, 10000).halted;
        EXPECT_FALSE(a && b) << x;
        EXPECT_TRUE(a || b) << x;  // identity is total, so every x is decided
    }
}

TEST(Dominance, TiesAndSelf) {
    Natural a = encode(Program{1, {inc(0), halt()}});
    Natural b = encode(Program{1, {inc(1), halt()}});
    Natural lo = std::min(a, b), hi = std::max(a, b);
    EXPECT_TRUE(run(dominance_index(lo, hi), {5}, 10000).halted);
    EXPECT_FALSE(run(dominance_index(hi, lo), {5}, 10000).halted);
    EXPECT_TRUE(dom_enum_upto(dominance_index(a, a), 10, 10000).empty());
}

TEST(Dominance, EmptyDomainStaysEmpty) {
    Natural e = dominance_index(encode(programs::self_loop()), evens());
    for (Budget s : {100, 1000, 10000})
        EXPECT_TRUE(dom_enum_upto(e, 20, s).empty());
}

TEST(EiWitness, ExcludedFromCanonicalPairBothOrders) {
    for (bool swap : {false, true}) {
        Natural i = swap ? k1_index() : k0_index();
        Natural j = swap ? k0_index() : k1_index();
        auto rep = check_ei_witness(i, j, 100000);
        EXPECT_TRUE(rep.valid()) << swap;
        EXPECT_EQ(rep.case_split, !swap);
        EXPECT_TRUE(rep.descent);
    }
    EXPECT_NE(ei_witness(k0_index(), k1_index()), ei_witness(k1_index(), k0_index()));
}

TEST(EiWitness, TotalOnGarbage) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            EXPECT_TRUE(is_program_code(ei_witness(i, j)));
}

TEST(SemiReduction, IdentityAndConstant) {
    DisjointPair eo{ReSet{evens()}, ReSet{odds()}};
    Natural id = encode(programs::identity());
    EXPECT_TRUE(check_semi_reduction({id}, eo, eo, 30, 1000).ok());
    auto rep = check_semi_reduction({encode(programs::constant(0))}, eo, eo, 30, 1000);
    EXPECT_EQ(rep.violations.size(), 15u);  // every odd n <= 30
    for (const auto& v : rep.violations) {
        EXPECT_FALSE(v.left);
        EXPECT_EQ(v.n % 2, 1);
    }
    EXPECT_THROW(check_semi_reduction({encode(programs::self_loop())}, eo, eo, 3, 1000), NonTotal);
}
