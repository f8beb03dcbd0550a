#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "nrlab/numeric.hpp"
#include "nrlab/parallel.hpp"

using namespace nrlab;

TEST(CompensatedSum, RecoversCancelledLowOrderTerms) {
    CompensatedSum s;
    s += 1e16;
    s += 1.0;
    s += -1e16;
    EXPECT_EQ(s.value(), 1.0);
}

TEST(CompensatedSum, ManySmallTerms) {
    CompensatedSum s;
    double naive = 0.0;
    for (int i = 0; i < 10000000; ++i) {
        s += 0.1;
        naive += 0.1;
    }
    EXPECT_NEAR(s.value(), 1e6, 1e-9);
    EXPECT_GT(std::abs(naive - 1e6), std::abs(s.value() - 1e6));
}

TEST(RootTable, MatchesPolar) {
    for (std::uint64_t n : {1u, 2u, 3u, 4u, 7u, 8u, 12u, 101u, 997u, 1024u}) {
        const RootTable t(n);
        for (std::uint64_t k = 0; k < n; ++k) {
            const auto ref = std::polar(1.0L, 2.0L * 3.141592653589793238462643383279502884L * k / n);
            ASSERT_NEAR(t(k).real(), static_cast<double>(ref.real()), 4e-16) << k << "/" << n;
            ASSERT_NEAR(t(k).imag(), static_cast<double>(ref.imag()), 4e-16) << k << "/" << n;
        }
    }
}

TEST(RootTable, ExactAtRationalAxes) {
    for (std::uint64_t n : {4u, 8u, 100u, 1000u}) {
        EXPECT_EQ(RootTable::unit(0, n), std::complex<double>(1.0, 0.0));
        EXPECT_EQ(RootTable::unit(n / 4, n), std::complex<double>(0.0, 1.0));
        EXPECT_EQ(RootTable::unit(n / 2, n), std::complex<double>(-1.0, 0.0));
        EXPECT_EQ(RootTable::unit(3 * n / 4, n), std::complex<double>(0.0, -1.0));
    }
}

TEST(RootTable, ConjugateSymmetryIsExact) {
    for (std::uint64_t n : {5u, 53u, 997u}) {
        for (std::uint64_t k = 1; k < n; ++k) {
            ASSERT_EQ(RootTable::unit(n - k, n), std::conj(RootTable::unit(k, n)));
        }
    }
}

TEST(RootTable, ProductReduction) {
    const RootTable t(101);
    EXPECT_EQ(t.at_product(100, 100), t(1));
    EXPECT_EQ(t.at_product(~std::uint64_t{0}, 3), t((~std::uint64_t{0} % 101) * 3 % 101));
    EXPECT_EQ(t(202), t(0));
}

TEST(FloorHelpers, FracAndFloor) {
    EXPECT_EQ(frac_ratio(100.0, 3), 1.0 / 3.0);
    EXPECT_EQ(frac_ratio(100.0, 50), 0.0);
    EXPECT_NEAR(frac_ratio(2.5, 2), 0.25, 1e-15);
    EXPECT_EQ(floor_ratio(100.9, 7), 14u);
    EXPECT_EQ(floor_u64(-3.0), 0u);
    EXPECT_EQ(ceil_u64(2.0000001), 3u);
    EXPECT_TRUE(is_integral(3.0));
    EXPECT_FALSE(is_integral(3.5));
}

TEST(Parallel, OrderedMapKeepsTaskOrder) {
    for (unsigned w : {1u, 2u, 3u, 8u}) {
        const auto out = ordered_map<std::uint64_t>(1000, Workers(w), [](std::size_t i) { return i * i; });
        ASSERT_EQ(out.size(), 1000u);
        for (std::size_t i = 0; i < out.size(); ++i) ASSERT_EQ(out[i], i * i);
    }
}

TEST(Parallel, RethrowsLowestIndexedError) {
    auto run = [](unsigned w) {
        return ordered_map<int>(50, Workers(w), [](std::size_t i) -> int {
            if (i == 17 || i == 40) throw std::runtime_error(std::to_string(i));
            return 0;
        });
    };
    for (unsigned w : {1u, 4u}) {
        try {
            run(w);
            FAIL() << "expected an exception";
        } catch (const std::runtime_error& e) {
            EXPECT_STREQ(e.what(), "17");
        }
    }
}

TEST(Parallel, SplitRangeCoversExactly) {
    const auto chunks = split_range(3, 100, 10);
    ASSERT_FALSE(chunks.empty());
    EXPECT_EQ(chunks.front().lo, 3u);
    EXPECT_EQ(chunks.back().hi, 100u);
    for (std::size_t i = 1; i < chunks.size(); ++i) EXPECT_EQ(chunks[i].lo, chunks[i - 1].hi + 1);
    EXPECT_TRUE(split_range(10, 5, 3).empty());
    EXPECT_EQ(split_range(0, ~std::uint64_t{0}, ~std::uint64_t{0}).back().hi, ~std::uint64_t{0});
    EXPECT_EQ(Workers(0).count(), 1u);
}
