#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nrlab/shrinking.hpp"

using namespace nrlab;

namespace {

int euler(u64 n, u64 p) {
    const u64 e = pow_mod(n % p, (p - 1) / 2, p);
    return e == 0 ? 0 : (e == 1 ? 1 : -1);
}

bool trial_division(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

} // namespace

TEST(Decompose, Examples) {
    const auto a = decompose(PrimeModulus(11), 10.0, 1.0);
    EXPECT_EQ(a.lhs, 0);
    EXPECT_EQ(a.count_form, 0);
    EXPECT_EQ(a.prime_form, -2);
    EXPECT_EQ(a.s0, 11);
    EXPECT_EQ(a.s1, -1);
    EXPECT_TRUE(a.hypothesis_holds);  // nothing to check below z = 1
    EXPECT_EQ(a.residual, 2);

    const auto b = decompose(PrimeModulus(23), 20.0, 4.0);
    EXPECT_TRUE(b.hypothesis_holds);
    EXPECT_EQ(b.lhs, 2);
    EXPECT_EQ(b.count_form, 2);
    EXPECT_EQ(b.prime_form, 2);
    EXPECT_EQ(b.s0, 10);
    EXPECT_EQ(b.s1, -8);
    EXPECT_EQ(b.residual, 0);

    EXPECT_FALSE(decompose(PrimeModulus(23), 20.0, 5.0).hypothesis_holds);
    EXPECT_THROW(decompose(PrimeModulus(23), 23.0, 4.0), std::domain_error);
    EXPECT_THROW(decompose(PrimeModulus(23), 10.0, 11.0), std::domain_error);
    EXPECT_THROW(decompose(PrimeModulus(23), 10.0, 0.0), std::domain_error);
}

TEST(Decompose, CountFormIsExact) {
    for (u64 p : primes_in(3, 10000)) {
        for (int k = 1; k <= 10; ++k) {
            const double x = std::max<double>(1.0, std::floor((p - 1) * k / 10.0));
            const auto d = decompose(PrimeModulus(p), x, std::min(x, std::pow(x, 1.0 / kE)));
            i64 lhs = 0;
            for (u64 n = 1; n <= static_cast<u64>(x); ++n) lhs += euler(n, p);
            ASSERT_EQ(d.lhs, lhs);
            ASSERT_EQ(d.lhs, d.count_form) << p << " " << x;
            ASSERT_EQ(d.floor_x - d.s0 + d.s1, d.prime_form);
        }
    }
}

TEST(Decompose, ResidualCountsMultiplicities) {
    // sum_q [x/q] over nonresidue primes q in [z, x] counts each n <= x once per
    // such prime dividing it, so residual = 2 (sum_n c(n) - #{n : chi(n) = -1}).
    for (u64 p : primes_in(3, 1500)) {
        for (double x : {std::floor(p / 3.0), static_cast<double>(p - 1)}) {
            if (x < 1.0) continue;
            const double z = std::pow(x, 1.0 / kE);
            const auto d = decompose(PrimeModulus(p), x, z);
            const u64 xi = static_cast<u64>(x);
            std::vector<i64> c(xi + 1, 0);
            for (u64 q = static_cast<u64>(std::ceil(z)); q <= xi; ++q) {
                if (!trial_division(q) || euler(q, p) != -1) continue;
                for (u64 n = q; n <= xi; n += q) ++c[n];
            }
            i64 covered = 0, nonres = 0;
            bool bijective = true;
            for (u64 n = 1; n <= xi; ++n) {
                const bool nr = euler(n, p) == -1;
                covered += c[n];
                nonres += nr;
                if (c[n] != (nr ? 1 : 0)) bijective = false;
            }
            ASSERT_EQ(d.residual, 2 * (covered - nonres)) << p << " " << x;
            if (bijective) {
                ASSERT_EQ(d.residual, 0);
            }
        }
    }
}

TEST(Decompose, CellsMatchSchema) {
    const auto d = decompose(PrimeModulus(23), 20.0, 4.0);
    const auto cells = decomposition_cells(d, 5);
    ASSERT_EQ(cells.size(), decomposition_columns().size());
    EXPECT_EQ(cells[3].text, "5");
    EXPECT_EQ(cells[8].text, "true");
    EXPECT_EQ(cells[9].text, "false");
}

TEST(LocationTests, Examples) {
    const auto v = vinogradov_test(PrimeModulus(23), 20.0);
    EXPECT_NEAR(v.z, std::pow(20.0, 1.0 / std::sqrt(kE)), 1e-12);
    EXPECT_NEAR(v.z, 6.1534, 1e-4);
    EXPECT_TRUE(v.conclusion_holds);
    EXPECT_TRUE(v.below_asymptotic_range);
    EXPECT_EQ(v.premise.lemma_id, "T1234.000");

    const auto s = shrinking_test(PrimeModulus(23), 20.0);
    EXPECT_NEAR(s.z, 3.0103860149098343, 1e-12);
    EXPECT_FALSE(s.conclusion_holds);
    EXPECT_EQ(s.premise.lemma_id, "T1234.500");
    EXPECT_NEAR(s.premise.claimed_bound, 20.0 / std::log(20.0), 1e-12);
    EXPECT_EQ(s.premise.exact, 2);

    const auto tiny = vinogradov_test(PrimeModulus(3), 2.0);
    EXPECT_FALSE(tiny.conclusion_holds);
    EXPECT_TRUE(tiny.below_asymptotic_range);
    EXPECT_FALSE(shrinking_test(PrimeModulus(7), 6.0).conclusion_holds);

    EXPECT_THROW(shrinking_test(PrimeModulus(23), 1.5), std::domain_error);
    EXPECT_THROW(shrinking_test(PrimeModulus(23), 23.0), std::domain_error);
}

TEST(LocationTests, TwoIsANonresidueClass) {
    for (u64 p : primes_in(101, 5000)) {
        if (p % 8 == 3) {
            EXPECT_TRUE(vinogradov_test(PrimeModulus(p), std::pow(2.0, std::sqrt(kE))).conclusion_holds);
        }
        if (p % 8 == 5) {
            EXPECT_TRUE(shrinking_test(PrimeModulus(p), std::pow(2.0, kE) + 1e-9).conclusion_holds);
        }
    }
}

TEST(Sweep, CountsMatchDirectLoop) {
    const double eps = 0.1;
    for (auto v : {ShrinkVariant::vinogradov, ShrinkVariant::shrinking}) {
        for (bool small : {false, true}) {
            const auto sw = shrinking_sweep(3, 200000, v, eps, small, Workers(3));
            u64 holds = 0, fails = 0, excluded = 0;
            for (u64 p : primes_in(3, 200000)) {
                const double x = std::pow(static_cast<double>(p), 0.25 + eps);
                if (x < 2.0 || (!small && x < kAsymptoticFloor)) {
                    ++excluded;
                    continue;
                }
                const u64 n = least_nonresidue(PrimeModulus(p)).n_p;
                (static_cast<double>(n) <= std::pow(x, shrink_power(v)) ? holds : fails)++;
            }
            EXPECT_EQ(sw.holds, holds);
            EXPECT_EQ(sw.fails, fails);
            EXPECT_EQ(sw.excluded_small, excluded);
            EXPECT_EQ(sw.primes, prime_count(3, 200000));
            EXPECT_EQ(sw.evaluated, holds + fails);
        }
    }
}

TEST(Sweep, ClassicVariantFailsNoMoreOften) {
    const auto vino = shrinking_sweep(3, 1000000, ShrinkVariant::vinogradov, 0.1, true, Workers::hardware());
    const auto shr = shrinking_sweep(3, 1000000, ShrinkVariant::shrinking, 0.1, true, Workers::hardware());
    EXPECT_LE(vino.fails, shr.fails);
    EXPECT_EQ(vino.evaluated, shr.evaluated);
    EXPECT_GT(shr.fraction_holds(), 0.0);
    EXPECT_LE(shr.fraction_holds(), 1.0);
    ASSERT_TRUE(shr.worst_p);
}

TEST(Audit, Example) {
    const auto a = contradiction_audit(PrimeModulus(23), 20.0);
    EXPECT_EQ(a.n_p, 5u);
    EXPECT_NEAR(a.z, 3.0103860149098343, 1e-12);
    EXPECT_EQ(a.floor_x, 20);
    EXPECT_EQ(a.s0, 10);
    EXPECT_EQ(a.s1, -8);
    EXPECT_EQ(a.lhs, 2);
    EXPECT_TRUE(a.bookkeeping_holds);
    EXPECT_EQ(a.x_log_term, 20.0);
    EXPECT_EQ(a.cancellation, 0.0);
    EXPECT_NEAR(a.gamma_term, (1.0 - kEulerGamma) * (20.0 / std::log(20.0) - a.z / std::log(a.z)), 1e-12);
    EXPECT_EQ(a.asymptotic.lemma_id, "E1234.525");
    EXPECT_EQ(audit_cells(a).size(), audit_columns().size());
}

TEST(Audit, PreconditionAndBookkeeping) {
    EXPECT_THROW(contradiction_audit(PrimeModulus(13), 10.0), precondition_error);  // n_p = 2 <= 10^{1/e}
    EXPECT_THROW(contradiction_audit(PrimeModulus(23), 23.0), std::domain_error);
    for (u64 p : primes_in(3, 3000)) {
        const u64 n = least_nonresidue(PrimeModulus(p)).n_p;
        for (double x : {p / 2.0, static_cast<double>(p - 1)}) {
            if (x < 2.0 || static_cast<double>(n) <= std::pow(x, 1.0 / kE)) continue;
            const auto a = contradiction_audit(PrimeModulus(p), x);
            ASSERT_TRUE(a.bookkeeping_holds);
            const auto d = decompose(PrimeModulus(p), x, a.z);
            ASSERT_EQ(a.floor_x - a.s0 + a.s1 == a.lhs, d.prime_form == d.lhs);
        }
    }
}
