#include <gtest/gtest.h>

#include <cmath>

#include "gbeta/parallel.hpp"
#include "gbeta/sets.hpp"

using namespace gbeta;

namespace {

// L-infinity distances from an independent LP solve (scipy HiGHS, N = 40)
struct LpCase {
    std::complex<double> z;
    double dist;
};

double truncated_distance(const MembershipVerdict& v, std::complex<double> z, int N) {
    const double tail = std::pow(std::abs(z), N + 1) / (1 - std::abs(z));
    if (const auto* n = std::get_if<No>(&v)) return n->lower_bound + tail;
    if (const auto* u = std::get_if<Unknown>(&v)) return u->truncated_min;
    return std::get<InnerYes>(v).value_inf;
}

}  // namespace

TEST(Spike, ClosedForm) {
    EXPECT_NEAR(extremal_min_real((1 - std::sqrt(5.0)) / 2), 0.0, 1e-15);
    EXPECT_LT(extremal_min_real(-0.9), 0);
    EXPECT_GT(extremal_min_real(-0.5), 0);
    EXPECT_THROW(extremal_min_real(0.5), DomainError);
}

TEST(Membership, AgreesWithLp) {
    const LpCase cases[] = {{{0, 0.5}, 0.7333333343267441},   {{0, 0.55}, 0.6670312813226025},
                            {{0.3, 0.4}, 0.7556741973569496}, {{0.3, 0}, 1.0},
                            {{0, 0}, 1.0},                    {{-0.617, 0}, 0.0037315702800211348}};
    for (const auto& c : cases) {
        const auto v = membership(c.z, CoefficientBox::Unit, 40, 1e-9);
        EXPECT_NEAR(truncated_distance(v, c.z, 40), c.dist, 1e-6) << c.z;
        EXPECT_TRUE(std::holds_alternative<No>(v)) << c.z;
    }
    const auto s = membership({0.5, 0.3}, CoefficientBox::Sym, 40, 1e-9);
    EXPECT_NEAR(truncated_distance(s, {0.5, 0.3}, 40), 0.18748601048124064, 1e-6);
}

TEST(Membership, WitnessesVerify) {
    for (const std::complex<double> z : {std::complex<double>(-0.9, 0), {0.7, 0.6}, {-0.2, 0.75}}) {
        const auto v = membership(z, CoefficientBox::Unit, 40, 1e-9);
        const auto* y = std::get_if<InnerYes>(&v);
        ASSERT_NE(y, nullptr) << z;
        ASSERT_EQ(y->witness.size(), 40u);
        std::complex<double> f = 1.0, zn = 1.0;
        for (double a : y->witness) {
            EXPECT_GE(a, 0.0);
            EXPECT_LE(a, 1.0);
            zn *= z;
            f += a * zn;
        }
        EXPECT_LE(std::max(std::abs(f.real()), std::abs(f.imag())), 1e-9) << z;
    }
}

TEST(Membership, ExactBoundsAtZeroAndPositiveReals) {
    const auto v0 = membership({0, 0}, CoefficientBox::Unit, 40, 1e-9);
    ASSERT_TRUE(std::holds_alternative<No>(v0));
    EXPECT_EQ(std::get<No>(v0).lower_bound, 1.0);
    const auto v3 = membership({0.3, 0}, CoefficientBox::Unit, 40, 1e-9);
    ASSERT_TRUE(std::holds_alternative<No>(v3));
    EXPECT_NEAR(std::get<No>(v3).lower_bound, 1.0, 1e-15);
}

TEST(Membership, UnknownNearBoundary) {
    // the tail at |z| = 0.97, N = 10 swamps any distance
    const auto v = membership({0.97, 0}, CoefficientBox::Unit, 10, 1e-9);
    EXPECT_TRUE(std::holds_alternative<Unknown>(v));
}

TEST(Membership, BadInput) {
    EXPECT_THROW(membership({1.0, 0}, CoefficientBox::Unit, 10, 1e-9), DomainError);
    EXPECT_THROW(membership({0.5, 0}, CoefficientBox::Unit, 0, 1e-9), DomainError);
    EXPECT_THROW(membership({0.5, 0}, CoefficientBox::Unit, 10, 0), DomainError);
}

TEST(Clouds, ParrySmall) {
    const PointCloud c = cloud_parry(ParryCloudSpec{4, 1000, 1}, 2);
    EXPECT_TRUE(c.skipped.empty());
    EXPECT_GT(c.points.size(), 0u);
    EXPECT_EQ(count_real_points(c, 1), 0u);
    EXPECT_TRUE(check_golden_bound(c).pass);
    for (const auto& p : c.points) EXPECT_EQ(p.pattern, "e0");
}

TEST(Clouds, ThreadCountDoesNotChangeOutput) {
    const auto samples = random_samples(12, 3, Rational(1, 10), 7);
    const PointCloud a = cloud_yrrap(samples, 1), b = cloud_yrrap(samples, 4);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        EXPECT_EQ(a.points[i].re, b.points[i].re);
        EXPECT_EQ(a.points[i].im, b.points[i].im);
        EXPECT_EQ(a.points[i].source_beta, b.points[i].source_beta);
    }
}

TEST(Clouds, RandomSamplesAreSpaced) {
    for (const auto& s : random_samples(50, 4, Rational(1, 10), 3)) {
        ASSERT_FALSE(s.targets.empty());
        ASSERT_EQ(s.signs.size(), s.targets.size());
        for (std::size_t i = 0; i < s.targets.size(); ++i) {
            EXPECT_GE(s.targets[i], Rational(1, 20));
            EXPECT_LE(s.targets[i], Rational(19, 20));
            for (std::size_t j = 0; j < i; ++j) EXPECT_GE(abs(s.targets[i] - s.targets[j]), Rational(1, 20));
        }
    }
}

TEST(Parallel, IndexOrderAndLowestError) {
    const auto v = parallel_map(100, 4, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], i * i);
    try {
        parallel_map(50, 4, [](std::size_t i) -> int {
            if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
            return 0;
        });
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "7");
    }
}
