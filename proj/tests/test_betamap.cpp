#include <gtest/gtest.h>

#include "gbeta/betamap.hpp"
#include "gbeta/io.hpp"
#include "gbeta/random.hpp"
#include "gbeta/verify.hpp"

using namespace gbeta;

namespace {

std::vector<std::int64_t> digits(const OrbitRecord& r, std::size_t n) {
    std::vector<std::int64_t> d;
    for (std::size_t i = 0; i < n && i < r.steps.size(); ++i) d.push_back(r.steps[i].digit);
    return d;
}

}  // namespace

TEST(SignPattern, ParseAndTag) {
    EXPECT_EQ(SignPattern::parse("e0").tag(), "e0");
    EXPECT_EQ(SignPattern::parse("alt").tag(), "alt");
    EXPECT_EQ(SignPattern::parse("custom:0001/0").tag(), "custom:0001/0");
    EXPECT_EQ(SignPattern::parse("custom:/10").tag(), "custom:/10");
    EXPECT_THROW(SignPattern::parse("e2"), ParseError);
    EXPECT_THROW(SignPattern::parse("custom:01"), ParseError);
    EXPECT_THROW(SignPattern::parse("custom:01/"), ParseError);
    EXPECT_THROW(SignPattern::parse("custom:0a/1"), ParseError);
}

TEST(Classify, GoldenE0IsSimple) {
    const OrbitRecord r = orbit_of_one(named_beta("golden"), SignPattern::e0(), 100);
    const auto* s = std::get_if<Simple>(&r.verdict);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->n, 1u);
    EXPECT_EQ(s->k0, 1);
    EXPECT_TRUE(is_parry(named_beta("golden")));
}

TEST(Classify, GoldenE1IsPeriodic) {
    const Verdict v = classify(named_beta("golden"), SignPattern::e1(), 100);
    const auto* p = std::get_if<EventuallyPeriodic>(&v);
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->preperiod, 1u);
    EXPECT_EQ(p->period, 1u);
    EXPECT_TRUE(is_yrrap(named_beta("golden")));
}

TEST(Classify, GoldenAlt) {
    // 1 -> 2 - phi -> phi - 1, and beta (phi - 1) = 1
    const OrbitRecord r = orbit_of_one(named_beta("golden"), SignPattern::alt(), 100);
    const auto* s = std::get_if<Simple>(&r.verdict);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->n, 2u);
    EXPECT_EQ(s->k0, 1);
    EXPECT_EQ(digits(r, 2), (std::vector<std::int64_t>{2, 0}));  // a reflected branch i carries digit i + 1
    EXPECT_NEAR(be_to_double(r.steps[1].point), 0.3819660112501051, 1e-15);
}

TEST(Classify, SqrtTwoPlusTwo) {
    // E0: 1 -> sqrt2 - 1, fixed. E1: 1 -> 4 - beta, then beta (4 - beta) = 2.
    const AlgebraicReal b = named_beta("sqrt2plus2");
    const Verdict v0 = classify(b, SignPattern::e0(), 100);
    const auto* p = std::get_if<EventuallyPeriodic>(&v0);
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->preperiod, 1u);
    EXPECT_EQ(p->period, 1u);
    const Verdict v1 = classify(b, SignPattern::e1(), 100);
    const auto* s = std::get_if<Simple>(&v1);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->n, 1u);
    EXPECT_EQ(s->k0, 2);
}

TEST(Classify, PlasticGreedyDigits) {
    // beta^3 = beta + 1 gives 1 = 1/beta + 1/beta^5 greedily: digits 1,0,0,0 then k0 = 1
    const OrbitRecord r = orbit_of_one(named_beta("plastic"), SignPattern::e0(), 100);
    const auto* s = std::get_if<Simple>(&r.verdict);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->n, 4u);
    EXPECT_EQ(s->k0, 1);
    EXPECT_EQ(digits(r, 4), (std::vector<std::int64_t>{1, 0, 0, 0}));
}

TEST(Classify, RationalBetaStaysUnresolved) {
    // denominators of the orbit of 1 under 3/2 grow without bound
    const OrbitRecord r = orbit_of_one(AlgebraicReal::from_rational(Rational(3, 2)), SignPattern::e0(), 200);
    EXPECT_TRUE(std::holds_alternative<Unresolved>(r.verdict));
    EXPECT_EQ(digits(r, 4), (std::vector<std::int64_t>{1, 0, 1, 0}));
    EXPECT_DOUBLE_EQ(be_to_double(r.steps[3].point), 0.125);
}

TEST(Classify, IntegerBetaRejected) {
    EXPECT_THROW(orbit_of_one(AlgebraicReal::from_rational(Rational(3)), SignPattern::e0(), 10), NonIntegerRequired);
    EXPECT_THROW(orbit_of_one(AlgebraicReal::from_rational(Rational(1, 2)), SignPattern::e0(), 10), DomainError);
}

TEST(Orbit, SignsAndCumulativeSigns) {
    const OrbitRecord r = orbit_of_one(named_beta("golden"), SignPattern::alt(), 100);
    ASSERT_GE(r.steps.size(), 2u);
    EXPECT_EQ(r.steps[0].sign, -1);  // digit 1 has bit 1 under alt
    EXPECT_EQ(r.steps[1].sign, 1);
    EXPECT_EQ(r.steps[1].cum_sign, -1);
}

TEST(Expansion, IdentityAtRandomPoints) {
    Rng rng(11);
    for (int k = 0; k < 30; ++k) {
        const AlgebraicReal beta = random_beta(rng, 3);
        const SignPattern e = random_pattern(rng);
        const auto F = BetaField::make(beta);
        const BetaElement x = F->constant(Rational(static_cast<long>(rng.between(0, 999)), 1000));
        const Expansion ex = expand_point(e, x, 12);
        EXPECT_TRUE(expansion_identity_holds(x, ex)) << beta.poly().to_string() << " " << e.tag();
    }
}

TEST(Orbit, PointsStayInUnitInterval) {
    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        const AlgebraicReal beta = random_beta(rng, 4);
        const OrbitRecord r = orbit_of_one(beta, random_pattern(rng), 60);
        for (const auto& s : r.steps) {
            const Interval iv = be_enclose(s.point, Rational(1, 1000000));
            EXPECT_GE(iv.hi, 0);
            EXPECT_LE(iv.lo, 1);
        }
    }
}

TEST(ApproxOrbit, AgreesWithExactGolden) {
    const ApproxOrbit a = approximate_orbit(to_bigfloat(named_beta("golden"), 256), SignPattern::e1(), 100, 256);
    EXPECT_TRUE(a.near_recurrence);
    EXPECT_EQ(a.preperiod, 1u);
    EXPECT_EQ(a.period, 1u);
}
