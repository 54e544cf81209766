#include "twoslit/rng.hpp"
#include "twoslit/stats.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdint>

using namespace twoslit;

// Known-answer vectors generated with numpy.random.Philox (4x64, 10 rounds),
// an independent implementation of the same generator.  numpy pre-increments
// its 256-bit counter before emitting the first block, hence the +1 on
// counter word 0 relative to the numpy call.
TEST(Philox, MatchesNumpyKnownAnswerVectors) {
    using A4 = std::array<std::uint64_t, 4>;
    EXPECT_EQ(Philox4x64::block({1, 0, 0, 0}, 0, 0),
              (A4{0x02f4ba6408e4d89bull, 0x3dd62b0b9ca8c5b2ull, 0x1c8667a55d902e79ull,
                  0x907d7a052fd5b4dcull}));
    EXPECT_EQ(Philox4x64::block({2, 0, 0, 0}, 0, 0),
              (A4{0x809bf322883987c3ull, 0x471128b9e807f7ddull, 0xf250ba0dbec065b7ull,
                  0xfc6ed66767a457bcull}));
    EXPECT_EQ(Philox4x64::block({1, 0, 0, 0}, 0xdeadbeefull, 0xcafef00dull),
              (A4{0x2efbea9056208111ull, 0x32bb8ca912a6bd47ull, 0x78cd0b669d6a23fbull,
                  0x4a9a089e67c68c3aull}));
    EXPECT_EQ(Philox4x64::block({1, 1, 0, 0}, 0, 0),
              (A4{0x363c6d54f81ba26eull, 0x372e02c93de0b01eull, 0xc182a0e88e99b6d5ull,
                  0x8893b0f0fb6673dcull}));
    EXPECT_EQ(Philox4x64::block({0x123456789abcdef1ull, 0xfedcba9876543210ull, 1, 2}, 42, 7),
              (A4{0x8274e05936c87f97ull, 0x53e3d42592854806ull, 0xa6bba97a78d58787ull,
                  0xb3c04af88e22ab78ull}));
}

TEST(Philox, WordsAreDeterministicAndStreamsAreDistinct) {
    EXPECT_EQ(philox_word(7, 3, 1000), philox_word(7, 3, 1000));
    EXPECT_NE(philox_word(7, 3, 1000), philox_word(7, 3, 1001));
    EXPECT_NE(philox_word(7, 3, 1000), philox_word(7, 4, 1000));
    EXPECT_NE(philox_word(7, 3, 1000), philox_word(8, 3, 1000));
}

TEST(Philox, UniformsLieInTheHalfOpenUnitInterval) {
    double sum = 0.0;
    constexpr int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = philox_uniform(123, 0, i);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // Mean of n uniforms: 0.5 +/- 5 sigma with sigma = 1/sqrt(12 n).
    EXPECT_NEAR(sum / n, 0.5, 5.0 / std::sqrt(12.0 * n));
}

// p-values frozen from scipy.stats.chi2.sf, an independent implementation.
TEST(ChiSquare, PValueMatchesScipyReferenceValues) {
    EXPECT_NEAR(chi_square_pvalue(0.5, 3), 0.9188914116546758, 1e-12);
    EXPECT_NEAR(chi_square_pvalue(7.814727903251179, 3), 0.05, 1e-12);
    EXPECT_NEAR(chi_square_pvalue(3.841458820694124, 1), 0.05, 1e-12);
    EXPECT_NEAR(chi_square_pvalue(15.086272469388987, 5), 0.01, 1e-12);
    EXPECT_NEAR(chi_square_pvalue(0.010, 2), 0.9950124791926823, 1e-12);
    EXPECT_NEAR(chi_square_pvalue(24.321886347856854, 7), 0.001, 1e-12);
    EXPECT_NEAR(chi_square_pvalue(1e-9, 3), 0.9999999999999916, 1e-12);
    EXPECT_NEAR(chi_square_pvalue(100.0, 4), 9.836624224615988e-21, 1e-32);
}

TEST(ChiSquare, TestStatisticCountsOnlyPositiveBins) {
    // 3 live bins -> dof 2; a zero-probability bin with counts refutes.
    const ChiSquareResult ok = chi_square_test({250, 260, 240, 0}, {0.25, 0.25, 0.5, 0.0});
    EXPECT_EQ(ok.dof, 2);
    EXPECT_FALSE(ok.impossible_outcome);
    EXPECT_GT(ok.p_value, 0.0);

    const ChiSquareResult bad = chi_square_test({250, 250, 0, 1}, {0.5, 0.5, 0.0, 0.0});
    EXPECT_TRUE(bad.impossible_outcome);
    EXPECT_EQ(bad.p_value, 0.0);
}

TEST(ChiSquare, AgreesWithHandComputedStatistic) {
    // counts (60, 40) against p = (0.5, 0.5): chi2 = (10^2/50)*2 = 4, dof 1.
    const ChiSquareResult r = chi_square_test({60, 40}, {0.5, 0.5});
    EXPECT_NEAR(r.statistic, 4.0, 1e-12);
    EXPECT_EQ(r.dof, 1);
    EXPECT_NEAR(r.p_value, chi_square_pvalue(4.0, 1), 1e-15);
}
