#include "ciprng/thresholds.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"

using ciprng::m_thresholds;

TEST(Thresholds, FourCellCutsMatchClosedForm) {
    // cumulative probabilities 1/16, 5/16, 11/16, 15/16 scaled by 2^32
    const m_thresholds t(4);
    const std::array<std::uint32_t, 5> expected = {0u, 268435456u, 1342177280u,
                                                   2952790016u, 4026531840u};
    ASSERT_EQ(t.cuts().size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        EXPECT_EQ(t.cuts()[i], expected[i]) << "cut " << i;
}

TEST(Thresholds, CellCountRangeEnforced) {
    EXPECT_THROW(m_thresholds(1), std::invalid_argument);
    EXPECT_THROW(m_thresholds(0), std::invalid_argument);
    EXPECT_THROW(m_thresholds(65), std::invalid_argument);
    EXPECT_NO_THROW(m_thresholds(2));
    EXPECT_NO_THROW(m_thresholds(64));
}

TEST(Thresholds, CutDifferencesAreScaledBinomials) {
    // For N <= 32 the scaling 2^(32-N) is exact, so consecutive cuts must
    // differ by exactly C(N, j) * 2^(32-N).
    for (int n = 2; n <= 32; ++n) {
        const m_thresholds t(n);
        const auto cuts = t.cuts();
        for (int j = 0; j + 1 < static_cast<int>(cuts.size()); ++j) {
            const std::uint64_t diff =
                static_cast<std::uint64_t>(cuts[static_cast<std::size_t>(j + 1)])
                - cuts[static_cast<std::size_t>(j)];
            const std::uint64_t expected =
                oracle::binomial(static_cast<unsigned>(n), static_cast<unsigned>(j))
                << (32 - n);
            EXPECT_EQ(diff, expected) << "N=" << n << " j=" << j;
        }
    }
}

TEST(Thresholds, LastIntervalEndsAtOne) {
    // sum_i C(N,i) = 2^N, so the final interval [t_N, 2^32) must carry
    // exactly the probability of m = N (for N <= 32, C(N,N)/2^N exactly).
    for (int n = 2; n <= 32; ++n) {
        const m_thresholds t(n);
        const std::uint64_t last = t.cuts()[static_cast<std::size_t>(n)];
        EXPECT_EQ((std::uint64_t{1} << 32) - last, std::uint64_t{1} << (32 - n));
    }
}

TEST(Thresholds, StrictlyIncreasingUpTo32Cells) {
    for (int n = 2; n <= 32; ++n) {
        const m_thresholds t(n);
        const auto cuts = t.cuts();
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            EXPECT_LT(cuts[i], cuts[i + 1]) << "N=" << n;
    }
}

TEST(Thresholds, NonDecreasingAndTotalAboveThirtyTwoCells) {
    // beyond 32 cells the leading probabilities fall under 2^-32 and the
    // corresponding cuts collapse; the map must still be total and ordered
    for (int n = 33; n <= 64; ++n) {
        const m_thresholds t(n);
        const auto cuts = t.cuts();
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            EXPECT_LE(cuts[i], cuts[i + 1]) << "N=" << n;
        EXPECT_GE(t.map(0u), 0);
        EXPECT_EQ(t.map(0xFFFFFFFFu), n);
    }
}

TEST(Thresholds, MapExamplesFourCells) {
    const m_thresholds t(4);
    EXPECT_EQ(t.map(0u), 0);
    EXPECT_EQ(t.map(0xFFFFFFFFu), 4);
    EXPECT_EQ(t.map(1u << 31), 2); // ratio 0.5 lies in [5/16, 11/16)
}

TEST(Thresholds, MapBoundariesAreHalfOpen) {
    const m_thresholds t(4);
    EXPECT_EQ(t.map(268435455u), 0);
    EXPECT_EQ(t.map(268435456u), 1);
    EXPECT_EQ(t.map(4026531839u), 3);
    EXPECT_EQ(t.map(4026531840u), 4);
}

TEST(Thresholds, MapAgreesWithLinearScan) {
    // independent classification: walk the cuts linearly
    std::mt19937 rng(777);
    for (int n : {2, 4, 7, 31, 32, 33, 64}) {
        const m_thresholds t(n);
        const auto cuts = t.cuts();
        for (int trial = 0; trial < 20000; ++trial) {
            const std::uint32_t y = static_cast<std::uint32_t>(rng());
            int expected = n;
            for (int j = 0; j < n; ++j)
                if (y < cuts[static_cast<std::size_t>(j + 1)]) {
                    expected = j;
                    break;
                }
            ASSERT_EQ(t.map(y), expected) << "N=" << n << " y=" << y;
        }
    }
}

TEST(Thresholds, EmpiricalLawOfM) {
    // 1e6 uniform draws; each bucket frequency within 4 standard
    // deviations of C(N,j)/2^N
    std::mt19937 rng(12345);
    for (int n : {4, 8}) {
        const m_thresholds t(n);
        const std::size_t draws = 1000000;
        std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1, 0);
        for (std::size_t i = 0; i < draws; ++i)
            hist[static_cast<std::size_t>(t.map(static_cast<std::uint32_t>(rng())))]++;
        for (int j = 0; j <= n; ++j) {
            const double p = static_cast<double>(oracle::binomial(
                                 static_cast<unsigned>(n), static_cast<unsigned>(j)))
                             / std::pow(2.0, n);
            const double sigma = std::sqrt(p * (1.0 - p) * static_cast<double>(draws));
            const double observed = static_cast<double>(hist[static_cast<std::size_t>(j)]);
            EXPECT_NEAR(observed, p * static_cast<double>(draws), 4.0 * sigma)
                << "N=" << n << " j=" << j;
        }
    }
}
