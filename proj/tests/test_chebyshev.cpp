#include <gtest/gtest.h>

#include "gbeta/chebyshev.hpp"
#include "gbeta/io.hpp"

using namespace gbeta;

TEST(Chebyshev, IntegerBetaIsChebyshevPolynomial) {
    for (double x : {-1.0, -0.7, -0.2, 0.0, 0.3, 0.99, 1.0}) {
        const BigFloat bx(x, 128);
        EXPECT_NEAR(f_beta(BigFloat(2.0, 128), bx).to_double(), 2 * x * x - 1, 1e-15);
        EXPECT_NEAR(f_beta(BigFloat(3.0, 128), bx).to_double(), 4 * x * x * x - 3 * x, 1e-15);
    }
    EXPECT_NEAR(f_beta(BigFloat(2.0, 128), BigFloat(0.3, 128)).to_double(), -0.82, 1e-15);
}

TEST(Chebyshev, DomainChecks) {
    EXPECT_THROW(f_beta(BigFloat(2.5, 128), BigFloat(1.5, 128)), DomainError);
    EXPECT_THROW(conjugacy_residual(BigFloat(3.0, 128), 100, 128), NonIntegerRequired);
    EXPECT_THROW(conjugacy_residual(BigFloat(0.5, 128), 100, 128), DomainError);
}

TEST(Chebyshev, ConjugacyResidualIsTiny) {
    EXPECT_LT(conjugacy_residual(BigFloat(Rational(5, 2), 256), 500, 256), 1e-60);
    EXPECT_LT(conjugacy_residual(to_bigfloat(named_beta("plastic"), 256), 500, 256), 1e-60);
}

TEST(Chebyshev, FiniteOrbitConsistency) {
    const ConsistencyReport g = finite_orbit_consistency(named_beta("golden"), 200);
    EXPECT_EQ(g.status, "agree");
    EXPECT_EQ(g.exact_preperiod, 0u);
    EXPECT_EQ(g.exact_period, 3u);
    const ConsistencyReport s = finite_orbit_consistency(named_beta("sqrt2plus2"), 200);
    EXPECT_EQ(s.status, "agree");
    EXPECT_EQ(s.exact_preperiod, 2u);
    EXPECT_EQ(s.exact_period, 1u);
    const ConsistencyReport r = finite_orbit_consistency(AlgebraicReal::from_rational(Rational(3, 2)), 50);
    EXPECT_EQ(r.status, "inconclusive");
}
