#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <stdexcept>

#include "thetalift/laurent.hpp"

using thetalift::LaurentPoly;

namespace {

LaurentPoly t(int e, std::int64_t c = 1) { return LaurentPoly::monomial(c, e); }

}  // namespace

TEST(Laurent, ZeroCoefficientsAreDropped) {
    LaurentPoly p = t(1) - t(1);
    EXPECT_TRUE(p.is_zero());
    EXPECT_EQ(p.to_string(), "0");
    EXPECT_EQ(LaurentPoly::from_terms({{2, 3}, {2, -3}, {0, 1}}), LaurentPoly::constant(1));
}

TEST(Laurent, TextFormIsAscending) {
    EXPECT_EQ((t(0) - t(1) + t(2)).to_string(), "1-1t+1t^2");
    EXPECT_EQ((t(-4, -1) + t(-3)).to_string(), "-1t^-4+1t^-3");
    EXPECT_EQ(LaurentPoly::half_monomial(2, 3).to_string(), "2t^3/2");
}

TEST(Laurent, ProductAndPower) {
    LaurentPoly a = t(1) + t(-1);
    EXPECT_EQ(a * a, t(2) + t(0, 2) + t(-2));
    EXPECT_EQ(a.pow(3), t(3) + t(1, 3) + t(-1, 3) + t(-3));
    EXPECT_EQ(a.pow(0), LaurentPoly::constant(1));
}

TEST(Laurent, ShiftInvertEvaluate) {
    LaurentPoly p = t(0) - t(1) + t(2);
    EXPECT_EQ(p.shifted(-1), t(-1) - t(0) + t(1));
    EXPECT_EQ(p.inverted(), t(0) - t(-1) + t(-2));
    EXPECT_EQ(p.evaluate(-1), 3);
    EXPECT_EQ(p.evaluate(1), 1);
    EXPECT_EQ(p.min_exponent(), 0);
    EXPECT_EQ(p.max_exponent(), 2);
    EXPECT_EQ(p.dense(), (std::vector<std::int64_t>{1, -1, 1}));
}

TEST(Laurent, SubstitutionKeepsFractionalExponentsExact) {
    // A^-4 -> t sends A^2 to t^(-1/2)
    LaurentPoly a2 = LaurentPoly::monomial(1, 2, "A");
    LaurentPoly s = a2.substituted(-1, 4, "t");
    EXPECT_FALSE(s.integral());
    EXPECT_EQ(s, LaurentPoly::half_monomial(1, -1));
    EXPECT_EQ((s * s).to_string(), "1t^-1");
}

TEST(Laurent, NormalizeUnit) {
    LaurentPoly p = t(-3, -1) + t(-2) - t(-1);
    EXPECT_EQ(thetalift::normalize_unit(p), t(0) - t(1) + t(2));
}

TEST(Laurent, MirrorCanonicalPicksOneOfThePair) {
    LaurentPoly v = t(1) + t(3) - t(4);
    LaurentPoly m = v.inverted();
    EXPECT_EQ(thetalift::mirror_canonical(v), thetalift::mirror_canonical(m));
    const auto c = thetalift::mirror_canonical(v);
    EXPECT_TRUE(c == v || c == m);
}

TEST(Laurent, OverflowIsDetected) {
    LaurentPoly big = LaurentPoly::constant(std::numeric_limits<std::int64_t>::max());
    EXPECT_THROW(big + LaurentPoly::constant(1), std::overflow_error);
    EXPECT_THROW(big * LaurentPoly::constant(2), std::overflow_error);
}

TEST(Laurent, DegreeOfZeroThrows) {
    EXPECT_THROW(LaurentPoly().min_exponent(), std::domain_error);
}
