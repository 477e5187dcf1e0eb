#include "meanrev/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace meanrev;

// Reference vectors for splitmix64 seeded with 0 (first three outputs of the
// published algorithm).
TEST(Rng, Splitmix64ReferenceVectors) {
    std::uint64_t state = 0;
    EXPECT_EQ(splitmix64(state), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(splitmix64(state), 0x6e789e6aa1b965f4ULL);
    EXPECT_EQ(splitmix64(state), 0x06c45d188009454fULL);
}

// Draw-order pin: any change to seeding or the generator core breaks these.
TEST(Rng, GoldenSequence) {
    Rng r(42);
    EXPECT_EQ(r.next_u64(), 15021278609987233951ULL);
    EXPECT_EQ(r.next_u64(), 5881210131331364753ULL);
    EXPECT_EQ(r.next_u64(), 18149643915985481100ULL);
    EXPECT_EQ(r.next_u64(), 12933668939759105464ULL);
}

TEST(Rng, Determinism) {
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
    Rng c(123), d(124);
    int equal = 0;
    for (int i = 0; i < 1000; ++i) equal += c.next_u64() == d.next_u64();
    EXPECT_EQ(equal, 0);
}

TEST(Rng, SubstreamsAreDeterministicAndDistinct) {
    Rng a = Rng::substream(42, 0);
    Rng b = Rng::substream(42, 0);
    EXPECT_EQ(a.next_u64(), b.next_u64());
    EXPECT_EQ(Rng::substream(42, 0).next_u64(), 17421563614688070069ULL);
    EXPECT_EQ(Rng::substream(42, 1).next_u64(), 8963376804263853573ULL);
    Rng c = Rng::substream(42, 1), d = Rng::substream(43, 1);
    EXPECT_NE(c.next_u64(), d.next_u64());
}

TEST(Rng, UniformRangeAndMean) {
    Rng r(7);
    EXPECT_DOUBLE_EQ(r.uniform(), 0.055360436478333108);
    EXPECT_DOUBLE_EQ(r.uniform(), 0.17211585444811772);
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // SE of the mean is 1/sqrt(12 n) ~ 6.5e-4.
    EXPECT_NEAR(sum / n, 0.5, 4.0 / std::sqrt(12.0 * n));
}

TEST(Rng, NormalMoments) {
    Rng r(7);
    EXPECT_NEAR(r.normal(), 0.15864398364230053, 1e-14);
    EXPECT_NEAR(r.normal(), 0.29788548717637203, 1e-14);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        sum += z;
        sum2 += z * z;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    EXPECT_NEAR(mean, 0.0, 4.0 / std::sqrt(double(n)));
    EXPECT_NEAR(var, 1.0, 4.0 * std::sqrt(2.0 / n));
}

// The cached Box-Muller spare must not leak across differently seeded
// generators or depend on call batching.
TEST(Rng, NormalSpareIsPerGenerator) {
    Rng a(99);
    std::vector<double> first;
    for (int i = 0; i < 7; ++i) first.push_back(a.normal());
    Rng b(99);
    for (int i = 0; i < 7; ++i) ASSERT_DOUBLE_EQ(b.normal(), first[i]);
}
