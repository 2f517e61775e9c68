#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "support/oracles.hpp"
#include "thetalift/braid.hpp"
#include "thetalift/invariants.hpp"
#include "thetalift/rmoves.hpp"

using namespace thetalift;

namespace {

LaurentPoly t(int e, std::int64_t c = 1) { return LaurentPoly::monomial(c, e); }

KnotCode trefoil() { return parse_knot("%knot\ngauss: O1+ U2+ O3+ U1+ O2+ U3+\n"); }
KnotCode figure_eight() { return closure(BraidWord{3, {1, -2, 1, -2}}); }

}  // namespace

TEST(Oracle, TorusFormulasAgreeWithKnownValues) {
    EXPECT_EQ(oracle::torus_alexander(2, 3), t(0) - t(1) + t(2));
    EXPECT_EQ(oracle::torus_jones(2, 3), t(1) + t(3) - t(4));
    EXPECT_EQ(oracle::torus_alexander(3, 5), t(0) - t(1) + t(3) - t(4) + t(5) - t(7) + t(8));
    EXPECT_EQ(oracle::torus_jones(3, 5), t(4) + t(6) - t(10));
}

TEST(Oracle, NaiveBracketOfTrefoil) {
    EXPECT_EQ(oracle::naive_jones(trefoil()), t(1) + t(3) - t(4));
    EXPECT_EQ(oracle::naive_jones(trefoil().mirrored()), t(-1) + t(-3) - t(-4));
}

TEST(Invariants, TorusKnotsMatchClosedForms) {
    for (int p = 2; p <= 4; ++p)
        for (int q = p + 1; q <= 7; ++q) {
            if (std::gcd(p, q) != 1) continue;
            KnotCode k = closure(torus_braid(p, q));
            EXPECT_EQ(alexander(k), oracle::torus_alexander(p, q)) << "T(" << p << "," << q << ")";
            EXPECT_EQ(jones(k), oracle::torus_jones(p, q)) << "T(" << p << "," << q << ")";
        }
}

TEST(Invariants, TrefoilAndFigureEight) {
    EXPECT_EQ(alexander(trefoil()), t(0) - t(1) + t(2));
    EXPECT_EQ(determinant(trefoil()), 3);
    EXPECT_EQ(alexander(figure_eight()), t(0) - t(1, 3) + t(2));
    EXPECT_EQ(determinant(figure_eight()), 5);
    EXPECT_EQ(jones(figure_eight()), t(-2) - t(-1) + t(0) - t(1) + t(2));
}

TEST(Invariants, UnknotValues) {
    KnotCode u;
    EXPECT_EQ(kauffman_bracket(u), LaurentPoly::constant(1, "A"));
    EXPECT_EQ(jones(u), LaurentPoly::constant(1));
    EXPECT_EQ(alexander(u), LaurentPoly::constant(1));
    EXPECT_EQ(determinant(u), 1);
}

TEST(Invariants, PositiveKinkBracket) {
    KnotCode kink = oracle::add_kink(KnotCode(), 0, true, 1);
    const LaurentPoly b = kauffman_bracket(kink);
    EXPECT_TRUE(b == LaurentPoly::monomial(-1, 3, "A") || b == LaurentPoly::monomial(-1, -3, "A")) << b.to_string();
    EXPECT_EQ(b, oracle::naive_bracket(kink));
    EXPECT_EQ(jones(kink), LaurentPoly::constant(1));
}

TEST(Invariants, BracketMatchesNaiveStateSum) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 150; ++i) {
        KnotCode k = oracle::random_knot(rng, 4, 9);
        ASSERT_EQ(kauffman_bracket(k), oracle::naive_bracket(k)) << gauss_tokens(k);
    }
}

TEST(Invariants, GeneralProperties) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 150; ++i) {
        KnotCode k = oracle::random_knot(rng, 4, 10);
        LaurentPoly d = alexander(k), v = jones(k);
        SCOPED_TRACE(gauss_tokens(k));
        EXPECT_EQ(std::llabs(d.evaluate(1)), 1);
        EXPECT_EQ(d, normalize_unit(d.inverted()));
        EXPECT_EQ(determinant(k) % 2, 1);
        EXPECT_EQ(v.evaluate(1), 1);
        // |V(-1)| = |Δ(-1)|
        EXPECT_EQ(std::llabs(v.evaluate(-1)), std::llabs(d.evaluate(-1)));
        EXPECT_EQ(jones(k.mirrored()), v.inverted());
        EXPECT_EQ(jones(k.reversed()), v);
        EXPECT_EQ(alexander(k.mirrored()), d);
    }
}

TEST(Invariants, ReidemeisterInvariance) {
    std::mt19937_64 rng(13);
    int pokes = 0, r3 = 0;
    for (int i = 0; i < 80; ++i) {
        KnotCode k = oracle::random_knot(rng, 3, 7);
        const LaurentPoly d = alexander(k), v = jones(k);
        SCOPED_TRACE(gauss_tokens(k));
        std::uniform_int_distribution<std::size_t> pos(0, k.size());
        for (int sign : {1, -1})
            for (bool over_first : {true, false}) {
                KnotCode kk = oracle::add_kink(k, pos(rng), over_first, sign);
                EXPECT_EQ(alexander(kk), d);
                EXPECT_EQ(jones(kk), v);
            }
        if (k.size() >= 2) {
            std::uniform_int_distribution<std::size_t> seg(0, k.size() - 1);
            if (auto kp = oracle::add_poke(k, seg(rng), seg(rng))) {
                ++pokes;
                EXPECT_EQ(alexander(*kp), d);
                EXPECT_EQ(jones(*kp), v);
            }
        }
        for (const auto& site : detail::find_r3_sites(k.events())) {
            ++r3;
            KnotCode moved(detail::apply_r3(k.events(), site));
            EXPECT_EQ(alexander(moved), d);
            EXPECT_EQ(jones(moved), v);
        }
    }
    EXPECT_GT(pokes, 10);
    EXPECT_GT(r3, 10);
}

TEST(Invariants, StateSumCap) {
    KnotCode k = closure(torus_braid(3, 5));
    EXPECT_THROW(jones(k, 8), CapExceeded);
    EXPECT_NO_THROW(jones(k, 10));
}
