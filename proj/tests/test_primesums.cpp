#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <tuple>
#include <vector>

#include "nrlab/primesums.hpp"

using namespace nrlab;

namespace {

bool trial_division(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

int euler(u64 n, u64 p) {
    const u64 e = pow_mod(n % p, (p - 1) / 2, p);
    return e == 0 ? 0 : (e == 1 ? 1 : -1);
}

// Lambda(n) by trial factorization.
double mangoldt_by_factoring(u64 n) {
    if (n < 2) return 0.0;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            while (n % d == 0) n /= d;
            return n == 1 ? std::log(static_cast<double>(d)) : 0.0;
        }
    }
    return std::log(static_cast<double>(n));
}

} // namespace

TEST(VonMangoldt, Examples) {
    EXPECT_DOUBLE_EQ(von_mangoldt(8), std::log(2.0));
    EXPECT_EQ(von_mangoldt(1), 0.0);
    EXPECT_EQ(von_mangoldt(12), 0.0);
    EXPECT_DOUBLE_EQ(von_mangoldt(7), std::log(7.0));
    EXPECT_DOUBLE_EQ(von_mangoldt(u64{1} << 63), std::log(2.0));
    EXPECT_DOUBLE_EQ(von_mangoldt(4294967291ULL * 4294967291ULL), std::log(4294967291.0));
}

TEST(VonMangoldt, MatchesFactoring) {
    for (u64 n = 1; n < 200000; ++n) ASSERT_EQ(von_mangoldt(n), mangoldt_by_factoring(n)) << n;
}

TEST(VonMangoldt, ChebyshevPsi) {
    // psi(x) = sum Lambda(n) = log lcm(1..x).
    double psi = 0.0;
    for (u64 n = 1; n <= 100; ++n) psi += von_mangoldt(n);
    long double lcm_log = 0.0L;
    for (u64 q = 2; q <= 100; ++q) {
        if (!trial_division(q)) continue;
        u64 pw = q;
        while (pw * q <= 100) pw *= q;
        lcm_log += std::log(static_cast<long double>(pw));
    }
    EXPECT_NEAR(psi, static_cast<double>(lcm_log), 1e-12);
}

TEST(PrimeIndicator, Examples) {
    EXPECT_EQ(prime_indicator(3, 10, 11), 1);
    EXPECT_EQ(prime_indicator(4, 10, 11), 0);
    EXPECT_EQ(prime_indicator(7, 5, 11), 0);
    EXPECT_THROW(prime_indicator(3, 10, 12), std::domain_error);
    EXPECT_THROW(prime_indicator(3, 11, 11), std::domain_error);
    EXPECT_THROW(prime_indicator(0, 5, 11), std::domain_error);
}

TEST(PrimeIndicator, SmallGridAgainstTrialDivision) {
    for (u64 N : primes_in(2, 101)) {
        for (u64 x = 1; x < N; ++x) {
            for (u64 n = 1; n < N; ++n) {
                const int expect = n <= x && trial_division(n) ? 1 : 0;
                ASSERT_EQ(prime_indicator(n, static_cast<double>(x), N), expect) << N << " " << x << " " << n;
            }
        }
    }
}

TEST(PrimeIndicator, FourierSummationMatches) {
    for (u64 N : {11u, 53u, 211u, 997u}) {
        for (double x : {N / 3.0, static_cast<double>(N - 1)}) {
            const FourierPrimeIndicator f(x, N);
            for (u64 n = 1; n < N; ++n) {
                const auto v = f(n);
                const double expect = n <= x && trial_division(n) ? 1.0 : 0.0;
                ASSERT_NEAR(v.real(), expect, 1e-9) << N << " " << n;
                ASSERT_NEAR(v.imag(), 0.0, 1e-9) << N << " " << n;
            }
        }
    }
    EXPECT_NEAR(prime_indicator_fourier(3, 10, 11).real(), 1.0, 1e-12);
}

TEST(PrimeSlice, Examples) {
    const auto s0 = floor_weight_prime_sum(100, 50);
    EXPECT_EQ(s0.exact, 10.0);
    EXPECT_EQ(prime_slice(100, 100).primes, 0u);
    EXPECT_EQ(prime_slice(97, 97).floor_sum, 1u);
    EXPECT_NEAR(frac_part_prime_sum(100, 50).exact, 4.117068403307461, 1e-13);
    EXPECT_NEAR(frac_part_prime_sum(97, 97).exact, 0.0, 0.0);
    const auto m = mertens_slice(100, 10);
    EXPECT_NEAR(m.exact, 0.6266267248583948, 1e-15);
    EXPECT_NEAR(m.exact, std::log(2.0), 0.15);
    EXPECT_NEAR(mertens_slice(97, 97).exact, 1.0 / 97.0, 1e-17);
    EXPECT_THROW(prime_slice(100, 1.5), std::domain_error);
    EXPECT_THROW(prime_slice(10, 20), std::domain_error);
}

TEST(PrimeSlice, FloorEqualsLinearMinusFractional) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 40; ++i) {
        const double x = 10.0 + static_cast<double>(rng() % 1000000) + (i % 3) * 0.25;
        const double z = 2.0 + static_cast<double>(rng() % static_cast<u64>(x - 2.0));
        const auto s = prime_slice(x, z);
        EXPECT_NEAR(static_cast<double>(s.floor_sum), x * s.reciprocal - s.frac, 1e-6) << x << " " << z;
        u64 count = 0, floors = 0;
        for (u64 q : primes_in(static_cast<u64>(std::ceil(z)), static_cast<u64>(x))) {
            ++count;
            floors += static_cast<u64>(x) / q;
        }
        EXPECT_EQ(s.primes, count);
        EXPECT_EQ(s.floor_sum, floors);
    }
}

TEST(PrimeSlice, MertensAtEulerCutoff) {
    const double x = 1e6;
    const double z = std::pow(x, 1.0 / kE);
    const auto m = mertens_slice(x, z);
    EXPECT_NEAR(m.main_term, 1.0, 1e-12);
    EXPECT_NEAR(m.exact, 1.0, 0.05);
    const auto s0 = floor_weight_prime_sum(x, z);
    EXPECT_LT(std::abs(s0.normalized_residual), 10.0);
}

TEST(PrimeSlice, ResidualsStayBoundedOverDecades) {
    for (double x : {1e4, 1e5, 1e6, 1e7}) {
        const double z = std::pow(x, 1.0 / kE);
        EXPECT_LT(std::abs(floor_weight_prime_sum(x, z).normalized_residual), 10.0) << x;
        EXPECT_LT(std::abs(mertens_slice(x, z).normalized_residual), 10.0) << x;
        EXPECT_LT(std::abs(frac_part_prime_sum(x, z).normalized_residual), 10.0) << x;
    }
}

TEST(TwistedFloor, Example) {
    const PrimeModulus p(101);
    PrimeSumParams s{p, 50.0, 5.0, 53};
    i64 expect = 0;
    for (u64 q = 5; q <= 50; ++q) {
        if (trial_division(q)) expect += static_cast<i64>(50 / q) * euler(q, 101);
    }
    const auto r = twisted_floor_prime_sum(s);
    EXPECT_EQ(r.report.exact, expect);
    EXPECT_EQ(expect, 10);
    ASSERT_TRUE(r.route);
    EXPECT_NEAR(std::abs(r.route->total() - std::complex<double>(10.0, 0.0)), 0.0, 1e-9);
}

TEST(TwistedFloor, RouteTermsHaveTheirMeaning) {
    // T_0 = x sum chi(q)/q and T_1 = -sum {x/q} chi(q) over z <= q <= x.
    for (auto [pv, x, z] : std::vector<std::tuple<u64, double, double>>{
             {101, 50.0, 5.0}, {1009, 300.5, 3.0}, {100003, 1000.0, 12.0}, {1000003, 126.0, 2.0}}) {
        const PrimeModulus p(pv);
        const u64 N = next_prime(static_cast<u64>(x) + 1);
        const auto route = indicator_route(p, x, z, N);
        long double t0 = 0, t1 = 0;
        for (u64 q : primes_in(static_cast<u64>(std::ceil(z)), static_cast<u64>(x))) {
            const int c = euler(q, pv);
            t0 += static_cast<long double>(x) * c / q;
            t1 -= std::fmod(static_cast<long double>(x), q) / q * c;
        }
        EXPECT_NEAR(route.t0().real(), static_cast<double>(t0), 1e-8) << pv;
        EXPECT_NEAR(route.t1().real(), static_cast<double>(t1), 1e-8) << pv;
        EXPECT_NEAR(route.t0().imag(), 0.0, 1e-8);
        EXPECT_NEAR(route.t1().imag(), 0.0, 1e-8);
    }
}

TEST(TwistedFloor, EdgeCases) {
    const PrimeModulus p(101);
    EXPECT_EQ(twisted_floor_prime_sum(PrimeSumParams{p, 20.0, 30.0}).report.exact, 0);
    EXPECT_FALSE(twisted_floor_prime_sum(PrimeSumParams{p, 20.0, 3.0}).route);  // no N
    EXPECT_FALSE(twisted_floor_prime_sum(PrimeSumParams{p, 20.0, 3.0, 19}).route);  // N <= x
    EXPECT_THROW(twisted_floor_prime_sum(PrimeSumParams{p, 101.0, 3.0}), std::domain_error);
    EXPECT_THROW(indicator_route(p, 20.0, 3.0, 21), std::domain_error);
    const auto defaults = PrimeSumParams::at(PrimeModulus(1000003), 126.0);
    EXPECT_NEAR(defaults.z, std::pow(126.0, 1.0 / kE), 1e-12);
    EXPECT_EQ(*defaults.N, auxiliary_prime(126.0, burgess_delta(0.1)));
}

TEST(PrimeCharSum, Examples) {
    EXPECT_EQ(prime_char_sum(PrimeSumParams{PrimeModulus(13), 12.0, 2.0}, Regime::long_interval).exact, -3);
    EXPECT_EQ(prime_char_sum(PrimeSumParams{PrimeModulus(13), 1.5, 1.0}, Regime::short_interval).exact, 0);
    const double x = std::ceil(std::pow(10007.0, 0.3));
    EXPECT_EQ(x, 16.0);
    i64 expect = 0;
    for (u64 q : {2u, 3u, 5u, 7u, 11u, 13u}) expect += euler(q, 10007);
    const auto r = prime_char_sum(PrimeSumParams{PrimeModulus(10007), x, 2.0}, Regime::short_interval);
    EXPECT_EQ(r.exact, expect);
    EXPECT_EQ(r.lemma_id, "T4015.300s");
    EXPECT_NEAR(r.claimed_bound, std::pow(16.0, 1.0 - 2.0 * burgess_delta(0.1)), 1e-12);
}

TEST(Asymptotic, CellsMirrorSchema) {
    const auto a = mertens_slice(100, 10);
    const auto cells = asymptotic_cells(a, 101);
    ASSERT_EQ(cells.size(), sum_report_columns().size());
    EXPECT_EQ(cells[0].text, "E1234.515");
    EXPECT_EQ(cells[1].text, "101");
    EXPECT_EQ(cells[10].text, real_cell(a.exact).text);
}
