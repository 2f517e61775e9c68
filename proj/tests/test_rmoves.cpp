#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "thetalift/braid.hpp"
#include "thetalift/invariants.hpp"
#include "thetalift/rmoves.hpp"

using namespace thetalift;

TEST(Simplify, RemovesKinksAndPokes) {
    KnotCode k = oracle::add_kink(KnotCode(), 0, false, -1);
    auto [s, trace] = simplify(k);
    EXPECT_EQ(s.crossing_count(), 0);
    ASSERT_EQ(trace.moves.size(), 1u);
    EXPECT_EQ(trace.moves[0].kind, MoveKind::r1);

    KnotCode t = parse_knot("%knot\ngauss: O1+ U2+ O3+ U1+ O2+ U3+\n");
    auto poked = oracle::add_poke(t, 0, 3);
    ASSERT_TRUE(poked);
    EXPECT_EQ(poked->crossing_count(), 5);
    EXPECT_EQ(simplify(*poked).first.crossing_count(), 3);
}

TEST(Simplify, LeavesReducedDiagramsAlone) {
    KnotCode k = closure(torus_braid(3, 4));
    auto [s, trace] = simplify(k);
    EXPECT_EQ(s, k);
    EXPECT_TRUE(trace.moves.empty());
    EXPECT_EQ(trace.initial_crossings, 8);
    EXPECT_EQ(trace.final_crossings, 8);
}

TEST(Simplify, UnknotDiagramsFromBraids) {
    for (const auto& w : {std::vector<int>{1, 2}, std::vector<int>{1, 1, -1, 2}, std::vector<int>{2, 1, -2, -2, 1, 2}}) {
        BraidWord b{3, w};
        if (b.closure_components() != 1) continue;
        KnotCode k = closure(b).relabeled();
        EXPECT_EQ(alexander(k), LaurentPoly::constant(1));
        EXPECT_EQ(simplify(k).first.crossing_count(), jones(k) == LaurentPoly::constant(1) ? 0 : k.crossing_count())
            << gauss_tokens(k);
    }
}

TEST(Simplify, MixedBraidClosure) {
    KnotCode u = closure(BraidWord{3, {1, 2, -1, 2}}).relabeled();
    auto [s, trace] = simplify(u);
    EXPECT_EQ(jones(s), jones(u));
    EXPECT_EQ(alexander(s), alexander(u));
}

TEST(Simplify, PreservesInvariants) {
    std::mt19937_64 rng(21);
    int reduced = 0;
    for (int i = 0; i < 120; ++i) {
        KnotCode k = oracle::random_knot(rng, 4, 10);
        auto [s, trace] = simplify(k, 2000);
        SCOPED_TRACE(gauss_tokens(k));
        EXPECT_EQ(alexander(s), alexander(k));
        EXPECT_EQ(jones(s), jones(k));
        EXPECT_EQ(s.map().trace().genus, 0);
        EXPECT_EQ(trace.final_crossings, s.crossing_count());
        EXPECT_LE(trace.steps_used, 2000);
        if (s.crossing_count() < k.crossing_count()) ++reduced;
    }
    EXPECT_GT(reduced, 20);
}

TEST(Simplify, BudgetIsRespected) {
    KnotCode k = closure(torus_braid(3, 4));
    for (int i = 0; i < 6; ++i) k = oracle::add_kink(k, k.size() / 2, i % 2 == 0, i % 3 == 0 ? 1 : -1);
    auto [s, trace] = simplify(k, 3);
    EXPECT_LE(trace.steps_used, 3);
    EXPECT_EQ(s.crossing_count(), k.crossing_count() - 3);
    EXPECT_TRUE(trace.budget_exhausted);
}
