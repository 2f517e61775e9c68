#include <gtest/gtest.h>

#include <string>

#include "thetalift/codes.hpp"

using namespace thetalift;

namespace {

const char* trefoil_text = "%knot\ngauss: O1+ U2+ O3+ U1+ O2+ U3+\n";

ParseError parse_error(const std::string& text, bool theta) {
    try {
        if (theta) parse_theta(text);
        else parse_knot(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return ParseError(0, 0, "");
}

}  // namespace

TEST(KnotCode, ParsesTrefoil) {
    KnotCode k = parse_knot(trefoil_text);
    EXPECT_EQ(k.crossing_count(), 3);
    EXPECT_EQ(k.writhe(), 3);
    // a reduced diagram with n crossings has n + 2 faces
    EXPECT_EQ(k.map().trace().faces, 5);
    EXPECT_EQ(k.map().trace().genus, 0);
}

TEST(KnotCode, RoundTripIsCanonical) {
    KnotCode k = parse_knot("# comment\n%knot\n\ngauss: O7- U3- O9- U7- O3- U9-   # trailing\n");
    EXPECT_EQ(serialize(k), "%knot\ngauss: O1- U2- O3- U1- O2- U3-\n");
    EXPECT_EQ(parse_knot(serialize(k)), k.relabeled());
}

TEST(KnotCode, EmptyGaussIsTheUnknot) {
    KnotCode k = parse_knot("%knot\ngauss:\n");
    EXPECT_EQ(k.crossing_count(), 0);
    EXPECT_EQ(serialize(k), "%knot\ngauss:\n");
}

TEST(KnotCode, MirrorAndReverse) {
    KnotCode k = parse_knot(trefoil_text);
    EXPECT_EQ(k.mirrored().writhe(), -3);
    EXPECT_EQ(k.mirrored().mirrored(), k);
    EXPECT_EQ(k.reversed().writhe(), 3);
    EXPECT_EQ(k.reversed().reversed(), k);
}

TEST(KnotCode, RejectsNonPlanarCodes) {
    // the virtual trefoil has no diagram on the sphere
    EXPECT_THROW(KnotCode({{1, Role::over, 1}, {2, Role::over, 1}, {1, Role::under, 1}, {2, Role::under, 1}}),
                 CodeError);
}

TEST(KnotCode, ErrorsCarryLineAndColumn) {
    auto e = parse_error("%knot\ngauss: O1+ U2+ Q3+\n", false);
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 16);
    EXPECT_NE(std::string(e.what()).find("Q3+"), std::string::npos);

    e = parse_error("%theta\ngauss: O1+ U1+\n", false);
    EXPECT_EQ(e.line(), 1);

    e = parse_error("%knot\ngauss: O1+ U1+\ngauss: O1+ U1+\n", false);
    EXPECT_EQ(e.line(), 3);

    e = parse_error("%knot\n", false);
    EXPECT_NE(std::string(e.what()).find("missing gauss"), std::string::npos);
}

TEST(KnotCode, RejectsBadPairs) {
    auto e = parse_error("%knot\ngauss: O1+ U2+ O1+ U2+\n", false);
    EXPECT_EQ(e.line(), 2);
    parse_error("%knot\ngauss: O1+ U1-\n", false);
    parse_error("%knot\ngauss: O1+ U2+\n", false);
    parse_error("%knot\ngauss: O0+ U0+\n", false);
}

TEST(ConnectedSum, AddsCrossings) {
    KnotCode k = parse_knot(trefoil_text);
    KnotCode s = connected_sum(k, k.mirrored());
    EXPECT_EQ(s.crossing_count(), 6);
    EXPECT_EQ(s.writhe(), 0);
}

TEST(ThetaCode, TrivialTheta) {
    ThetaCode t = parse_theta("%theta\narc:\naxis: v1 v2\n");
    EXPECT_EQ(t.self_crossing_count(), 0);
    EXPECT_EQ(t.rail_count(), 0);
    EXPECT_EQ(t, ThetaCode());
}

TEST(ThetaCode, AxisIsRotatedToStartAtV1) {
    ThetaCode t = parse_theta("%theta\narc: k1o k2u\naxis: k2 v2 k1 v1\n");
    EXPECT_EQ(t.axis().front().kind, AxisKind::v1);
    EXPECT_EQ(t.rail_count(), 2);
    EXPECT_EQ(t.rail_count(Role::over), 1);
}

TEST(ThetaCode, RoundTrip) {
    const std::string text = "%theta\narc: x1-u k1o k2u k3o k4o k5u k6o x1-o\naxis: v1 k3 k2 v2 k1 k4 k5 k6\n";
    ThetaCode t = parse_theta(text);
    EXPECT_EQ(serialize(t), text);
    EXPECT_EQ(parse_theta(serialize(t)), t);
}

TEST(ThetaCode, SidesLineFixesTheEmbedding) {
    // one rail between the vertices: e may leave v1 on either side
    ThetaCode a = parse_theta("%theta\narc: k1o\naxis: v1 k1 v2\nsides: left right\n");
    ThetaCode b = parse_theta("%theta\narc: k1o\naxis: v1 k1 v2\nsides: right left\n");
    EXPECT_TRUE(a.embedding_ambiguous());
    EXPECT_TRUE(a.embedding().start_left);
    EXPECT_FALSE(b.embedding().start_left);
    EXPECT_EQ(parse_theta(serialize(a)).embedding().start_left, true);
    EXPECT_EQ(parse_theta(serialize(b)).embedding().start_left, false);
    EXPECT_THROW(parse_theta("%theta\narc:\naxis: v1 v2\nsides: up down\n"), ParseError);
}

TEST(ThetaCode, FlipSwapsRolesAndSides) {
    ThetaCode t = parse_theta("%theta\narc: x1-u k1o k2u k3o k4o k5u k6o x1-o\naxis: v1 k3 k2 v2 k1 k4 k5 k6\n");
    ThetaCode f = t.flipped();
    EXPECT_EQ(f.arc()[0].role, Role::over);
    EXPECT_EQ(f.arc()[1].role, Role::under);
    EXPECT_EQ(f.arc()[0].sign, t.arc()[0].sign);
    EXPECT_NE(f.embedding().start_left, t.embedding().start_left);
    EXPECT_EQ(f.map().trace().genus, 0);
    EXPECT_EQ(f.flipped().arc(), t.arc());
}

TEST(ThetaCode, Errors) {
    auto e = parse_error("%theta\narc: k1o\naxis: v1 v2\n", true);
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("k1"), std::string::npos);

    e = parse_error("%theta\narc: k1o q\naxis: v1 k1 v2\n", true);
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 10);

    parse_error("%theta\narc:\naxis: v1\n", true);
    parse_error("%theta\narc:\naxis: v1 v2 v2\n", true);
    parse_error("%theta\narc: k1o k1u\naxis: v1 k1 v2\n", true);
    parse_error("%theta\narc: x1+o\naxis: v1 v2\n", true);
    parse_error("%theta\naxis: v1 v2\n", true);
    parse_error("%theta\narc:\naxis: v1 v2\nmystery: 1\n", true);
}
