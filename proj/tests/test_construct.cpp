#include <gtest/gtest.h>

#include "gbeta/construct.hpp"
#include "gbeta/io.hpp"
#include "gbeta/verify.hpp"

using namespace gbeta;

namespace {

DigitVector dv(std::initializer_list<long> m) {
    DigitVector d;
    for (long v : m) d.m.emplace_back(v);
    return d;
}

std::vector<Rational> q(std::initializer_list<const char*> xs) {
    std::vector<Rational> out;
    for (const char* x : xs) out.push_back(parse_rational(x));
    return out;
}

}  // namespace

TEST(DigitVector, Hypotheses) {
    EXPECT_EQ(dv({4, -2}).violation(), "");
    EXPECT_NE(dv({2, 2}).violation(), "");
    EXPECT_NE(dv({5}).violation(), "");
    EXPECT_NE(dv({5, 0}).violation(), "");
    EXPECT_NE(dv({5, 4}).violation(), "");     // |M(1)| + 1 = M(0)
    EXPECT_NE(dv({9, 3, -2}).violation(), "");  // |M(2)| = |M(1)| - 1
}

TEST(Lemma1, SqrtTwoPlusTwo) {
    const Lemma1Result r = lemma1_beta(dv({4, -2}));
    EXPECT_EQ(r.poly, (IntPoly{2, -4, 1}));
    EXPECT_EQ(r.record.pattern.tag(), "custom:0001/0");
    const auto* s = std::get_if<Simple>(&r.record.verdict);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->n, 1u);
    EXPECT_EQ(s->k0, 2);
    EXPECT_NEAR(r.beta.to_double(), 3.4142135623730951, 1e-15);
}

TEST(Lemma1, PositiveDigit) {
    const Lemma1Result r = lemma1_beta(dv({3, 1}));
    EXPECT_EQ(r.poly, (IntPoly{-1, -3, 1}));
    EXPECT_NEAR(r.beta.to_double(), 3.3027756377319946, 1e-15);  // (3 + sqrt 13) / 2
}

TEST(Lemma1, RejectsBadDigits) { EXPECT_THROW(lemma1_beta(dv({2, 2})), HypothesisViolated); }

TEST(Lemma1, RandomRoundTrips) {
    Rng rng(99);
    for (int k = 0; k < 15; ++k) {
        const DigitVector d = random_digit_vector(rng, 5, 40);
        const Lemma1Result r = lemma1_beta(d);
        const auto* s = std::get_if<Simple>(&r.record.verdict);
        ASSERT_NE(s, nullptr);
        EXPECT_EQ(s->n, d.n());
        EXPECT_EQ(Integer(s->k0), abs(d.m.back()));
        for (std::size_t j = 0; j < d.n(); ++j) {
            EXPECT_EQ(Integer(r.record.steps[j].digit), abs(d.m[j]));
        }
    }
}

TEST(TheoremA, ThreeTargets) {
    // root 141.74947740789... of the quartic, orbit 0.25052, 0.48855, 0.74780 (mpmath)
    const ApproxResult r = thmA_yrrap_approx(q({"0.25", "0.5", "0.75"}), Rational(1, 20));
    EXPECT_EQ(r.m, 141);
    EXPECT_EQ(r.poly.poly, (IntPoly{106, -70, 36, -142, 1}));
    EXPECT_TRUE(r.cert);
    EXPECT_EQ(r.beta.floor() % 2, 1);
    EXPECT_NEAR(r.beta.to_double(), 141.74947740789004, 1e-10);
    const double want[] = {0.25052259, 0.48855349, 0.74779817};
    for (std::size_t n = 1; n <= 3; ++n) EXPECT_NEAR(be_to_double(r.record.steps[n].point), want[n - 1], 1e-8);
    EXPECT_TRUE(is_yrrap(r.beta));
}

TEST(TheoremA, SingleTarget) {
    // beta^2 = 16 beta - 6: 1 -> 16 - beta, and beta (16 - beta) = 6
    const ApproxResult r = thmA_yrrap_approx(q({"0.5"}), Rational(1, 2));
    EXPECT_EQ(r.m, 15);
    EXPECT_EQ(r.poly.poly, (IntPoly{6, -16, 1}));
}

TEST(TheoremA, BadInput) {
    EXPECT_THROW(thmA_yrrap_approx(q({"0.5", "1.5"}), Rational(1, 10)), DomainError);
    EXPECT_THROW(thmA_yrrap_approx(q({"0.5", "0.5"}), Rational(1, 10)), DomainError);
    EXPECT_THROW(thmA_yrrap_approx(q({"0.5"}), Rational(0)), DomainError);
}

TEST(TheoremB, SignedTargets) {
    const ApproxResult r = thmB_alt_approx(q({"0.4", "0.7"}), {-1, 1}, Rational(1, 10));
    EXPECT_EQ(r.m, 72);
    EXPECT_EQ(r.poly.poly, (IntPoly{-50, 28, -72, 1}));
    EXPECT_NEAR(r.beta.to_double(), 71.618789154284581, 1e-10);
    EXPECT_EQ(r.record.steps[1].cum_sign, -1);
    EXPECT_EQ(r.record.steps[2].cum_sign, 1);
    EXPECT_TRUE(r.cert);
}

TEST(TheoremB, LengthMismatch) {
    EXPECT_THROW(thmB_alt_approx(q({"0.4", "0.7"}), {1}, Rational(1, 10)), LengthMismatch);
}

TEST(TheoremC, Sequence) {
    const OrbitRecord seed = orbit_of_one(named_beta("golden"), SignPattern::e0(), 100);
    const auto prefix = parry_prefix(seed, 2);
    EXPECT_EQ(prefix, (std::vector<Integer>{1, 1}));
    const ParrySequence s = thmC_sequence(prefix, 1, 2);
    EXPECT_EQ(s.b, (std::vector<Integer>{1, 1, 0, 1, 0, 0, 0, 1}));
    EXPECT_EQ(s[9], 0);
    EXPECT_TRUE(parry_admissible(s));
    EXPECT_THROW(thmC_sequence(prefix, 2, 2), LengthMismatch);
}

TEST(TheoremC, Certificate) {
    const ParrySequence s(std::vector<Integer>{1, 1, 0, 1, 0, 0, 0, 1, 0, 0});
    const NonYrrapCertificate c = certify_non_yrrap(s);
    EXPECT_EQ(c.f, (IntPoly{1, -1, -1, 0, -1, 0, 0, 0, -1}));
    EXPECT_EQ(c.f_at_minus_one, -1);
    // sympy: real roots of f are -0.900454565159598 and 0.566160814817937
    EXPECT_LE(c.neg_root.width(), Rational(1, Integer(10000000000LL)));
    EXPECT_LT(c.neg_root.compare(parse_rational("-0.9004545651")), 0);
    EXPECT_GT(c.neg_root.compare(parse_rational("-0.9004545652")), 0);
    EXPECT_NEAR(c.beta.to_double(), 1.7662826070390871, 1e-14);
    EXPECT_TRUE(is_finite(c.parry_verdict));
    EXPECT_TRUE(c.round_trip);
    // sympy: x^8 - x^7 - x^6 - x^4 - 1 is irreducible over Q
    EXPECT_NE(c.caveat, MinimalityFlag::EisensteinCertified);
    EXPECT_NE(c.caveat, MinimalityFlag::Unknown);
}

TEST(TheoremC, NeedsEnoughPadding) {
    const ParrySequence s = thmC_sequence({1, 1}, 1, 1);
    EXPECT_THROW(certify_non_yrrap(s), NoSignChange);
}

TEST(Parry, Admissibility) {
    EXPECT_TRUE(parry_admissible(ParrySequence({1, 1})));
    EXPECT_TRUE(parry_admissible(ParrySequence({2, 0, 1})));
    EXPECT_FALSE(parry_admissible(ParrySequence({1, 2})));
    EXPECT_FALSE(parry_admissible(ParrySequence({1, 0, 1, 1})));
    EXPECT_THROW(certify_non_yrrap(ParrySequence({1, 2})), NotAdmissible);
}
