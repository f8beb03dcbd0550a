#pragma once

/// @file primesums.hpp
/// @brief Sums restricted to primes: von Mangoldt, the additive-character
/// prime indicator, Mertens-type slices, and character sums over primes.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "charsums.hpp"
#include "numeric.hpp"
#include "report.hpp"

namespace nrlab {

// =============================================================================
// Reports
// =============================================================================

struct AsymptoticReport {
    std::string lemma_id;
    double x = 0.0;
    double z = 0.0;
    double exact = 0.0;
    double main_term = 0.0;
    double predicted_error_scale = 1.0;
    double residual = 0.0;             // exact - main_term
    double normalized_residual = 0.0;  // residual / predicted_error_scale
};

inline AsymptoticReport make_asymptotic(std::string lemma, double x, double z, double exact, double main_term,
                                        double scale) {
    AsymptoticReport r{std::move(lemma), x, z, exact, main_term, scale, 0.0, 0.0};
    r.residual = exact - main_term;
    r.normalized_residual = r.residual / scale;
    return r;
}

/// Maps an asymptotic report onto the sum-report CSV schema: re carries the
/// exact value, magnitude |residual|, claimed_bound the predicted error scale.
inline std::vector<Cell> asymptotic_cells(const AsymptoticReport& r, std::optional<u64> p = std::nullopt) {
    return {cell(r.lemma_id), opt_cell(p),   real_cell(r.x), real_cell(r.z), {}, {}, {}, {}, {}, {},
            real_cell(r.exact), real_cell(0.0), real_cell(std::abs(r.residual)),
            real_cell(r.predicted_error_scale), real_cell(std::abs(r.normalized_residual))};
}

// =============================================================================
// Prime indicator identities
// =============================================================================

/// log q when n = q^k for a prime q and k >= 1, else 0.
inline double von_mangoldt(u64 n) {
    if (n < 2) return 0.0;
    if (is_prime(n)) return std::log(static_cast<double>(n));
    for (unsigned k = 2; k < 64; ++k) {
        const u64 r = iroot(n, k);
        if (r < 2) break;
        u64 pw = 1;
        for (unsigned i = 0; i < k; ++i) pw *= r;
        if (pw == n && is_prime(r)) return std::log(static_cast<double>(r));
    }
    return 0.0;
}

namespace detail {

inline void require_indicator_domain(u64 n, double x, u64 N) {
    if (!is_prime(N)) throw std::domain_error("indicator modulus N must be prime");
    if (!(x >= 1.0) || !(x < static_cast<double>(N))) throw std::domain_error("indicator requires 1 <= x < N");
    if (n < 1 || n >= N) throw std::domain_error("indicator requires 1 <= n < N");
}

} // namespace detail

/// (1/N) sum_{q<=x} sum_{0<=a<N} e^{2 pi i a (q-n)/N}, evaluated by
/// orthogonality: each inner sum is N when q = n (mod N) and 0 otherwise.
inline int prime_indicator(u64 n, double x, u64 N) {
    detail::require_indicator_domain(n, x, N);
    u64 hits = 0;
    for_each_prime(2, floor_u64(x), [&](u64 q) {
        if (q % N == n % N) hits += N;
    });
    return static_cast<int>(hits / N);
}

/// The same quantity by explicit complex summation, as
/// (1/N) sum_a e^{-2 pi i a n/N} P(a) with P(a) = sum_{q<=x} e^{2 pi i a q/N}.
/// Construction costs O(N pi(x)); each evaluation O(N).
class FourierPrimeIndicator {
public:
    FourierPrimeIndicator(double x, u64 N) : x_(x), roots_(N), weights_(N) {
        detail::require_indicator_domain(1, x, N);
        std::vector<u64> primes = primes_in(2, floor_u64(x));
        for (u64 a = 0; a < N; ++a) {
            ComplexCompensatedSum acc;
            for (u64 q : primes) acc += roots_.at_product(a, q);
            weights_[a] = acc.value();
        }
    }

    std::complex<double> operator()(u64 n) const {
        const u64 N = roots_.modulus();
        ComplexCompensatedSum acc;
        const u64 neg = (N - n % N) % N;  // e^{-2 pi i a n/N} = e^{2 pi i a (N-n)/N}
        for (u64 a = 0; a < N; ++a) acc += weights_[a] * roots_.at_product(a, neg);
        return acc.value() / static_cast<double>(N);
    }

    double x() const { return x_; }

private:
    double x_;
    RootTable roots_;
    std::vector<std::complex<double>> weights_;
};

inline std::complex<double> prime_indicator_fourier(u64 n, double x, u64 N) {
    detail::require_indicator_domain(n, x, N);
    return FourierPrimeIndicator(x, N)(n);
}

// =============================================================================
// Mertens-type slices over z <= q <= x
// =============================================================================

struct PrimeSlice {
    u64 primes = 0;
    u64 floor_sum = 0;        // sum [x/q]
    double reciprocal = 0.0;  // sum 1/q
    double frac = 0.0;        // sum {x/q}
};

namespace detail {

inline void require_slice(double x, double z) {
    if (!(z >= 2.0) || !(z <= x)) throw std::domain_error("slice requires 2 <= z <= x");
}

} // namespace detail

/// One pass over the primes in [z, x].
inline PrimeSlice prime_slice(double x, double z) {
    detail::require_slice(x, z);
    PrimeSlice s;
    CompensatedSum recip, frac;
    for_each_prime(ceil_u64(z), floor_u64(x), [&](u64 q) {
        ++s.primes;
        s.floor_sum += floor_ratio(x, q);
        recip += 1.0 / static_cast<double>(q);
        frac += frac_ratio(x, q);
    });
    s.reciprocal = recip.value();
    s.frac = frac.value();
    return s;
}

namespace detail {

inline double gamma_term(double x, double z) { return (1.0 - kEulerGamma) * (x / std::log(x) - z / std::log(z)); }

inline double loglog_ratio(double x, double z) { return std::log(std::log(x) / std::log(z)); }

} // namespace detail

/// S_0(x) = sum_{z<=q<=x} [x/q] against x log(log x/log z) - (1-gamma)(x/log x - z/log z).
inline AsymptoticReport floor_weight_prime_sum(double x, double z) {
    const auto s = prime_slice(x, z);
    return make_asymptotic("L1220.500", x, z, static_cast<double>(s.floor_sum),
                           x * detail::loglog_ratio(x, z) - detail::gamma_term(x, z), x / std::pow(std::log(x), 2));
}

/// sum_{z<=q<=x} 1/q against log(log x/log z).
inline AsymptoticReport mertens_slice(double x, double z) {
    const auto s = prime_slice(x, z);
    return make_asymptotic("E1234.515", x, z, s.reciprocal, detail::loglog_ratio(x, z), 1.0 / std::pow(std::log(x), 2));
}

/// sum_{z<=q<=x} {x/q} against (1-gamma)(x/log x - z/log z).
inline AsymptoticReport frac_part_prime_sum(double x, double z) {
    const auto s = prime_slice(x, z);
    return make_asymptotic("E1234.520", x, z, s.frac, detail::gamma_term(x, z), x / std::pow(std::log(x), 2));
}

// =============================================================================
// Character sums over primes
// =============================================================================

struct PrimeSumParams {
    PrimeModulus p;
    double x;
    double z;
    std::optional<u64> N{};
    double epsilon = 0.1;
    double delta = burgess_delta(0.1);

    /// z defaults to x^{1/e}; N to the smallest prime >= x^{1+delta}.
    static PrimeSumParams at(const PrimeModulus& p, double x, std::optional<double> z = std::nullopt,
                             double eps = 0.1) {
        PrimeSumParams s{p, x, z.value_or(std::pow(x, 1.0 / kE))};
        s.epsilon = eps;
        s.delta = burgess_delta(eps);
        s.N = auxiliary_prime(x, s.delta);
        return s;
    }

    ReportParams report_params() const { return {p.value(), x, z, N, epsilon, delta, {}, {}, {}}; }
};

/// Upper limit on x * N for the indicator-rewrite route.
inline constexpr double kIndicatorRouteCap = 1e9;

/// The split of S_1 obtained by inserting the prime indicator and writing
/// [x/n] = x/n - {x/n}. Each T_ij is the a = 0 (j = 0) or a != 0 (j = 1) part.
struct IndicatorRoute {
    u64 N = 0;
    std::complex<double> t00, t01, t10, t11;

    std::complex<double> t0() const { return t00 + t01; }
    std::complex<double> t1() const { return t10 + t11; }
    std::complex<double> total() const { return t0() + t1(); }
};

struct TwistedFloorReport {
    SumReport report;                    // value = direct S_1 (exact integer)
    std::optional<IndicatorRoute> route; // absent when N is missing or x*N exceeds the cap
};

/// Evaluates S_1 by the indicator rewrite:
///   T_0 = (x/N) sum_a Pbar(a) A(a),   T_1 = -(1/N) sum_a Pbar(a) B(a),
/// where Pbar(a) = sum_{q<=x} e^{-2 pi i a q/N},
///       A(a) = sum_{z<=n<=x} chi(n)/n e^{2 pi i a n/N},
///       B(a) = sum_{z<=n<=x} {x/n} chi(n) e^{2 pi i a n/N}.
inline IndicatorRoute indicator_route(const PrimeModulus& p, double x, double z, u64 N) {
    if (!is_prime(N)) throw std::domain_error("indicator modulus N must be prime");
    if (!(static_cast<double>(N) > x)) throw std::domain_error("indicator route requires N > x");
    if (x * static_cast<double>(N) > kIndicatorRouteCap) throw std::domain_error("x * N exceeds the route cap");

    const RootTable roots(N);
    const u64 xf = floor_u64(x);
    const u64 nlo = std::max<u64>(1, ceil_u64(z));
    const auto primes = primes_in(2, xf);

    std::vector<int> chi;
    std::vector<double> recip_w, frac_w;
    for (u64 n = nlo; n <= xf; ++n) {
        chi.push_back(legendre(n, p).value());
        recip_w.push_back(chi.back() / static_cast<double>(n));
        frac_w.push_back(chi.back() * frac_ratio(x, n));
    }

    ComplexCompensatedSum s00, s01, s10, s11;
    for (u64 a = 0; a < N; ++a) {
        ComplexCompensatedSum pbar;
        for (u64 q : primes) pbar += std::conj(roots.at_product(a, q));
        ComplexCompensatedSum A, B;
        u64 idx = static_cast<u64>((static_cast<unsigned __int128>(a) * (nlo % N)) % N);
        for (std::size_t k = 0; k < chi.size(); ++k) {
            if (chi[k] != 0) {
                const auto w = roots(idx);
                A += recip_w[k] * w;
                B += frac_w[k] * w;
            }
            idx += a;
            if (idx >= N) idx -= N;
        }
        const auto pa = pbar.value();
        (a == 0 ? s00 : s01) += pa * A.value();
        (a == 0 ? s10 : s11) += pa * B.value();
    }
    const double Nd = static_cast<double>(N);
    IndicatorRoute r;
    r.N = N;
    r.t00 = (x / Nd) * s00.value();
    r.t01 = (x / Nd) * s01.value();
    r.t10 = -s10.value() / Nd;
    r.t11 = -s11.value() / Nd;
    return r;
}

/// S_1(x) = sum_{z<=q<=x} [x/q] chi(q) against x^{1-delta}; the indicator
/// route is attached when N is set and x*N stays under the cap.
inline TwistedFloorReport twisted_floor_prime_sum(const PrimeSumParams& s) {
    if (!(s.x < static_cast<double>(s.p.value()))) throw std::domain_error("S_1 requires x < p");
    if (!(s.x >= 1.0)) throw std::domain_error("S_1 requires x >= 1");
    i64 total = 0;
    if (s.z <= s.x) {
        for_each_prime(std::max<u64>(2, ceil_u64(s.z)), floor_u64(s.x), [&](u64 q) {
            total += static_cast<i64>(floor_ratio(s.x, q)) * legendre(q, s.p).value();
        });
    }
    TwistedFloorReport out;
    out.report = make_report("L5215.300", static_cast<double>(total), std::pow(s.x, 1.0 - s.delta), s.report_params(),
                             classify(s.x, s.p.value(), s.epsilon));
    out.report.exact = total;
    if (s.N && static_cast<double>(*s.N) > s.x && s.x * static_cast<double>(*s.N) <= kIndicatorRouteCap) {
        out.route = indicator_route(s.p, s.x, s.z, *s.N);
    }
    return out;
}

/// sum_{q<=x} chi(q): against x^{1-2 delta} in the short regime and
/// sqrt(p) log p in the long regime.
inline SumReport prime_char_sum(const PrimeSumParams& s, Regime regime) {
    if (!(s.x < static_cast<double>(s.p.value()))) throw std::domain_error("prime character sum requires x < p");
    i64 total = 0;
    for_each_prime(2, floor_u64(s.x), [&](u64 q) { total += legendre(q, s.p).value(); });
    const double p = static_cast<double>(s.p.value());
    const bool long_form = regime == Regime::long_interval;
    auto r = make_report(long_form ? "T4015.300l" : "T4015.300s", static_cast<double>(total),
                         long_form ? std::sqrt(p) * std::log(p) : std::pow(s.x, 1.0 - 2.0 * s.delta), s.report_params(),
                         regime);
    r.params.z.reset();
    r.exact = total;
    return r;
}

} // namespace nrlab
