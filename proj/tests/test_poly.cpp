#include <gtest/gtest.h>

#include "gbeta/algebraic.hpp"
#include "gbeta/poly.hpp"

using namespace gbeta;

TEST(Parse, DecimalsAndFractions) {
    EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
    EXPECT_EQ(parse_rational("0.75"), Rational(3, 4));
    EXPECT_EQ(parse_rational("-2.5"), Rational(-5, 2));
    EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
    EXPECT_EQ(parse_rational("22/7"), Rational(22, 7));
}

TEST(Parse, LeadingZerosAreDecimal) {
    // GMP would read these as octal
    EXPECT_EQ(parse_rational("010"), Rational(10));
    EXPECT_EQ(parse_rational("010/03"), Rational(10, 3));
    EXPECT_EQ(parse_int_poly("010,-01,+7"), (IntPoly{10, -1, 7}));
}

TEST(Parse, Malformed) {
    EXPECT_THROW(parse_rational(""), ParseError);
    EXPECT_THROW(parse_rational("0x10"), ParseError);
    EXPECT_THROW(parse_rational("1..2"), ParseError);
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_int_poly("1,-1,-1?"), ParseError);
    EXPECT_THROW(parse_int_poly("1,,2"), ParseError);
    EXPECT_THROW(parse_int_poly("0,0"), ParseError);
}

TEST(Poly, BasicsAndPrinting) {
    const IntPoly p = parse_int_poly("-1,-1,1");
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(p.to_string(), "x^2 - x - 1");
    EXPECT_EQ(p.eval(Integer(2)), Integer(1));
    EXPECT_EQ(p.reversed(), (IntPoly{1, -1, -1}));
    EXPECT_EQ(content(IntPoly{4, -6, 2}), Integer(2));
    EXPECT_EQ(primitive(IntPoly{4, -6, 2}), (IntPoly{2, -3, 1}));
}

TEST(Poly, SquarefreeDecomposition) {
    // (x - 1)^2 (x + 2) = x^3 - 3x + 2
    const auto parts = squarefree_decomposition(IntPoly{2, -3, 0, 1});
    ASSERT_EQ(parts.size(), 2u);
    int total = 0;
    for (const auto& [f, m] : parts) total += f.degree() * m;
    EXPECT_EQ(total, 3);
}

TEST(Algebraic, SqrtTwoRefines) {
    const auto roots = isolate_real_roots(IntPoly{-2, 0, 1}, Rational(0), Rational(2));
    ASSERT_EQ(roots.size(), 1u);
    const AlgebraicReal r = roots[0].refined(Rational(1, Integer("100000000000000000000")));
    // 1.41421356237309504880168872...
    EXPECT_GT(r.compare(Rational(Integer("14142135623730950488"), Integer("10000000000000000000"))), 0);
    EXPECT_LT(r.compare(Rational(Integer("14142135623730950489"), Integer("10000000000000000000"))), 0);
    EXPECT_EQ(r.floor(), 1);
}

TEST(Algebraic, GoldenRatio) {
    const AlgebraicReal phi(IntPoly{-1, -1, 1}, Rational(1), Rational(2));
    EXPECT_EQ(phi.floor(), 1);
    EXPECT_FALSE(phi.is_integer());
    EXPECT_GT(phi.compare(Rational(8, 5)), 0);
    EXPECT_NEAR(phi.to_double(), 1.6180339887498949, 1e-15);
}

TEST(Algebraic, RationalIsDegenerate) {
    const AlgebraicReal q = AlgebraicReal::from_rational(Rational(3, 2));
    EXPECT_TRUE(q.is_exact());
    EXPECT_EQ(q.floor(), 1);
    EXPECT_TRUE(AlgebraicReal::from_rational(Rational(4)).is_integer());
}

TEST(Algebraic, NeedsExactlyOneRoot) {
    EXPECT_ANY_THROW(AlgebraicReal(IntPoly{-1, 0, 1}, Rational(-2), Rational(2)));
    EXPECT_ANY_THROW(AlgebraicReal(IntPoly{-2, 0, 1}, Rational(2), Rational(3)));
}

TEST(BetaField, GoldenRelation) {
    const AlgebraicReal phi(IntPoly{-1, -1, 1}, Rational(1), Rational(2));
    const auto F = BetaField::make(phi);
    const BetaElement b = F->generator();
    EXPECT_EQ(be_mul_beta(b), b + Rational(1));  // phi^2 = phi + 1
    EXPECT_EQ(be_floor(be_mul_beta(b)), 2);      // phi^2 = 2.618...
    EXPECT_EQ(be_floor(b - Rational(1)), 0);
    EXPECT_EQ(be_cmp(b, F->constant(Rational(8, 5))), std::strong_ordering::greater);
    EXPECT_NEAR(be_to_double(be_mul_beta(b)), 2.6180339887498949, 1e-14);
}

TEST(BetaField, ExactFloorAtInteger) {
    // beta = 2 + sqrt 2, (4 - beta) beta = 2 exactly
    const AlgebraicReal beta(IntPoly{2, -4, 1}, Rational(3), Rational(4));
    const auto F = BetaField::make(beta);
    const BetaElement x = Rational(4) - F->generator();
    EXPECT_EQ(be_floor(be_mul_beta(x)), 2);
    EXPECT_TRUE((be_mul_beta(x) - Rational(2)).is_zero_vector());
}
