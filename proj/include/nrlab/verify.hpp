#pragma once

/// @file verify.hpp
/// @brief Named verification runs. Each check produces a VerificationVerdict
/// and may stream ratio-series rows (sum-report schema) to a sink.
///
/// Only CheckKind::exact verdicts are binding. Tolerance checks report a
/// pass/fail against a pinned threshold; ratio dossiers are data.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "arith.hpp"
#include "charsums.hpp"
#include "nonresidue.hpp"
#include "numeric.hpp"
#include "parallel.hpp"
#include "primesums.hpp"
#include "report.hpp"
#include "shrinking.hpp"

namespace nrlab {

using SeriesSink = std::function<void(const std::vector<Cell>&)>;

struct VerifyConfig {
    std::optional<u64> lo;  // overrides the check's default range when set
    std::optional<u64> hi;
    u64 nmax = 997;         // largest auxiliary prime for the indicator grid
    double epsilon = 0.1;
    unsigned samples = 200; // primes per dossier sweep
    Workers workers{};
};

/// Euler's criterion mapped to {-1, 0, +1}; the reference for legendre().
inline int euler_criterion(u64 n, u64 p) {
    const u64 r = pow_mod(n % p, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

/// Up to `count` primes spread geometrically over [lo, hi], ascending, distinct.
inline std::vector<u64> sampled_primes(u64 lo, u64 hi, unsigned count) {
    std::vector<u64> out;
    if (count == 0 || lo > hi) return out;
    const double a = static_cast<double>(std::max<u64>(lo, 3));
    const double b = static_cast<double>(hi);
    for (unsigned k = 0; k < count; ++k) {
        const double t = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
        const u64 q = next_prime(std::max<u64>(3, ceil_u64(a * std::pow(b / a, t))));
        if (q > hi) break;
        if (out.empty() || q > out.back()) out.push_back(q);
    }
    return out;
}

namespace detail {

inline std::string at_p(u64 p) { return "p=" + std::to_string(p); }

inline VerificationVerdict verdict(std::string id, std::string grid, CheckKind kind) {
    VerificationVerdict v;
    v.lemma_id = std::move(id);
    v.grid = std::move(grid);
    v.kind = kind;
    return v;
}

inline std::string range_text(u64 lo, u64 hi) { return "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]"; }

} // namespace detail

// =============================================================================
// Exact identities
// =============================================================================

/// legendre(n, p) against Euler's criterion for all 0 <= n < p, p <= hi.
inline VerificationVerdict verify_legendre_euler(const VerifyConfig& cfg) {
    const u64 hi = cfg.hi.value_or(10000);
    auto v = detail::verdict("LEG.euler", "primes 3.." + std::to_string(hi) + ", all 0<=n<p", CheckKind::exact);
    const auto primes = primes_in(3, hi);
    auto mismatches = ordered_map<std::vector<std::string>>(primes.size(), cfg.workers, [&](std::size_t i) {
        std::vector<std::string> bad;
        const PrimeModulus p(primes[i]);
        for (u64 n = 0; n < p.value(); ++n) {
            if (legendre(n, p).value() != euler_criterion(n, p.value())) {
                bad.push_back(detail::at_p(p.value()) + " n=" + std::to_string(n));
            }
        }
        return bad;
    });
    for (std::size_t i = 0; i < primes.size(); ++i) {
        v.observe(static_cast<double>(mismatches[i].size()), detail::at_p(primes[i]));
        for (const auto& m : mismatches[i]) v.fail(m);
    }
    return v;
}

/// (2|p) = (-1)^{(p^2-1)/8} for odd primes p <= hi.
inline VerificationVerdict verify_supplementary_law(const VerifyConfig& cfg) {
    const u64 hi = cfg.hi.value_or(100000);
    auto v = detail::verdict("E1221.420", "odd primes 3.." + std::to_string(hi), CheckKind::exact);
    for_each_prime(3, hi, [&](u64 q) {
        const auto e = (static_cast<unsigned __int128>(q) * q - 1) / 8;
        const int expected = (e & 1) ? -1 : 1;
        v.observe(0.0, detail::at_p(q));
        if (legendre(2, PrimeModulus(q)).value() != expected) v.fail(detail::at_p(q));
    });
    return v;
}

/// For every prime in range: n_p is prime, n_p = 2 when p = 3, 5 (mod 8),
/// n_p < 2 sqrt(p) + 1, the exponent lies in (0, 1), and for a fixed n_p the
/// exponent decreases with p.
inline VerificationVerdict verify_nonresidue_structure(const VerifyConfig& cfg) {
    const u64 lo = std::max<u64>(3, cfg.lo.value_or(3));
    const u64 hi = cfg.hi.value_or(1000000);
    auto v = detail::verdict("S1221", "primes in " + detail::range_text(lo, hi), CheckKind::exact);
    std::vector<double> last_exponent;  // indexed by n_p
    ScanOptions opt;
    opt.workers = cfg.workers;
    scan(lo, hi, ExponentThresholds{}, opt, [&](const ScanRow& row) {
        const auto& r = row.record;
        const std::string where = detail::at_p(r.p) + " n_p=" + std::to_string(r.n_p);
        v.observe(static_cast<double>(r.n_p) / (2.0 * std::sqrt(static_cast<double>(r.p)) + 1.0), where);
        if (!is_prime(r.n_p)) v.fail(where + " composite");
        const auto mod8 = r.p & 7;
        if ((mod8 == 3 || mod8 == 5) && r.n_p != 2) v.fail(where + " expected 2");
        const auto m = static_cast<unsigned __int128>(r.n_p - 1);
        if (!(m * m < static_cast<unsigned __int128>(r.p) * 4)) v.fail(where + " exceeds 2 sqrt(p) + 1");
        if (!(r.exponent > 0.0 && r.exponent < 1.0)) v.fail(where + " exponent outside (0,1)");
        if (last_exponent.size() <= r.n_p) last_exponent.resize(r.n_p + 1, 2.0);
        if (!(r.exponent < last_exponent[r.n_p])) v.fail(where + " exponent not decreasing");
        last_exponent[r.n_p] = r.exponent;
    });
    return v;
}

/// max_{x<p} |sum_{n<=x} chi(n)| <= sqrt(p) log p for all primes p <= hi.
inline VerificationVerdict verify_polya_vinogradov(const VerifyConfig& cfg) {
    const u64 hi = cfg.hi.value_or(10000);
    auto v = detail::verdict("T2212.455", "primes 3.." + std::to_string(hi) + ", all x<p", CheckKind::exact);
    for_each_prime(3, hi, [&](u64 q) {
        const PrimeModulus p(q);
        const auto s = char_prefix_sums(p, q - 1);
        i64 worst = 0;
        for (auto val : s) worst = std::max(worst, val < 0 ? -val : val);
        const double bound = std::sqrt(static_cast<double>(q)) * std::log(static_cast<double>(q));
        v.observe(static_cast<double>(worst) / bound, detail::at_p(q) + " max|S|=" + std::to_string(worst));
        if (static_cast<double>(worst) > bound) v.fail(detail::at_p(q));
    });
    return v;
}

/// Prime indicator by orthogonality for every prime N <= nmax, every integer
/// 1 <= x < N and every n <= x, against is_prime; the explicit complex
/// summation is checked on x in {(N-1)/2, N-1}. worst_ratio holds the largest
/// distance of a complex evaluation from its integer value.
inline VerificationVerdict verify_prime_indicator(const VerifyConfig& cfg) {
    const u64 nmax = cfg.nmax;
    auto v = detail::verdict("L5515.200", "primes N<=" + std::to_string(nmax) + ", all x<N, n<=x", CheckKind::exact);
    const auto moduli = primes_in(2, nmax);
    struct Part {
        u64 cases = 0;
        double worst = 0.0;
        std::vector<std::string> bad;
    };
    auto parts = ordered_map<Part>(moduli.size(), cfg.workers, [&](std::size_t i) {
        Part part;
        const u64 N = moduli[i];
        // counts[r] = #{q <= x prime : q = r mod N}, grown with x.
        std::vector<u64> counts(N, 0);
        for (u64 x = 1; x < N; ++x) {
            if (is_prime(x)) ++counts[x % N];
            for (u64 n = 1; n <= x; ++n) {
                ++part.cases;
                const u64 by_orthogonality = counts[n % N];
                if (by_orthogonality != (is_prime(n) ? 1u : 0u)) {
                    part.bad.push_back("N=" + std::to_string(N) + " x=" + std::to_string(x) + " n=" + std::to_string(n));
                }
            }
        }
        for (u64 n = 1; n < N; ++n) {
            ++part.cases;
            if (prime_indicator(n, static_cast<double>(N - 1), N) != (is_prime(n) ? 1 : 0)) {
                part.bad.push_back("indicator N=" + std::to_string(N) + " n=" + std::to_string(n));
            }
        }
        for (u64 x : {(N - 1) / 2, N - 1}) {
            if (x < 1) continue;
            const FourierPrimeIndicator fourier(static_cast<double>(x), N);
            for (u64 n = 1; n <= x; ++n) {
                const auto val = fourier(n);
                const double rounded = std::round(val.real());
                part.worst = std::max({part.worst, std::abs(val.real() - rounded), std::abs(val.imag())});
                const bool ok = std::abs(val - std::complex<double>(rounded, 0.0)) < 1e-6 &&
                                rounded == (is_prime(n) ? 1.0 : 0.0);
                if (!ok) {
                    part.bad.push_back("fourier N=" + std::to_string(N) + " x=" + std::to_string(x) +
                                       " n=" + std::to_string(n));
                }
            }
        }
        return part;
    });
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const auto& part = parts[i];
        v.cases += part.cases;
        if (part.worst > v.worst_ratio || v.worst_case.empty()) {
            v.worst_ratio = std::max(v.worst_ratio, part.worst);
            v.worst_case = "N=" + std::to_string(moduli[i]);
        }
        for (const auto& b : part.bad) v.fail(b);
    }
    return v;
}

/// sum_{n<=x} chi(n) = [x] - 2 #{n <= x : chi(n) = -1} for all primes p <= hi
/// at 10 cutoffs per p, and [x] - S_0 + S_1 equals the prime form.
inline VerificationVerdict verify_decomposition(const VerifyConfig& cfg) {
    const u64 hi = cfg.hi.value_or(10000);
    auto v = detail::verdict("E1234.510", "primes 3.." + std::to_string(hi) + ", 10 cutoffs x<p each, z=x^{1/e}",
                             CheckKind::exact);
    for_each_prime(3, hi, [&](u64 q) {
        const PrimeModulus p(q);
        for (int k = 1; k <= 10; ++k) {
            const u64 xi = std::max<u64>(1, (q - 1) * static_cast<u64>(k) / 10);
            const double x = static_cast<double>(xi);
            const auto d = decompose(p, x, std::min(x, std::max(1.0, std::pow(x, 1.0 / kE))));
            const std::string where = detail::at_p(q) + " x=" + std::to_string(xi);
            v.observe(std::abs(static_cast<double>(d.residual)), where);
            if (d.lhs != d.count_form) v.fail(where + " lhs != count_form");
            if (d.floor_x - d.s0 + d.s1 != d.prime_form) v.fail(where + " [x]-S0+S1 != prime_form");
        }
    });
    return v;
}

/// S_0 = x * sum 1/q - sum {x/q} to 1e-6 on 20 pseudo-random grids with
/// x <= 1e6 (fixed seed), plus normalized-residual series for x = 10^4..10^7.
inline VerificationVerdict verify_floor_bookkeeping(const VerifyConfig& cfg, const SeriesSink& sink) {
    auto v = detail::verdict("L1220.500", "20 grids 2<=z<=x<=1e6 (seed 1220500)", CheckKind::exact);
    std::mt19937_64 rng(1220500);
    std::uniform_real_distribution<double> log_x(std::log(10.0), std::log(1e6));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double x = std::floor(std::exp(log_x(rng))) + (i % 2 ? 0.5 : 0.0);
        const double z = 2.0 + unit(rng) * (x - 2.0) * 0.5;
        const auto s = prime_slice(x, z);
        const double diff = std::abs(static_cast<double>(s.floor_sum) - (x * s.reciprocal - s.frac));
        const std::string where = "x=" + std::to_string(x) + " z=" + std::to_string(z);
        v.observe(diff, where);
        if (!(diff <= 1e-6)) v.fail(where);
    }
    const u64 hi = cfg.hi.value_or(10000000);
    for (double x = 1e4; x <= static_cast<double>(hi) * (1 + 1e-9); x *= std::sqrt(10.0)) {
        const double xr = std::round(x);
        const double z = std::pow(xr, 1.0 / kE);
        const auto s = prime_slice(xr, z);
        const double lx = std::log(xr);
        const double loglog = std::log(lx / std::log(z));
        const double gamma_term = (1.0 - kEulerGamma) * (xr / lx - z / std::log(z));
        sink(asymptotic_cells(make_asymptotic("L1220.500", xr, z, static_cast<double>(s.floor_sum),
                                              xr * loglog - gamma_term, xr / (lx * lx))));
        sink(asymptotic_cells(make_asymptotic("E1234.515", xr, z, s.reciprocal, loglog, 1.0 / (lx * lx))));
        sink(asymptotic_cells(make_asymptotic("E1234.520", xr, z, s.frac, gamma_term, xr / (lx * lx))));
    }
    return v;
}

/// Direct S_1 against the indicator-rewrite T_0 + T_1 to 1e-6 on a grid of
/// (p, x, z) with x N <= 1e7.
inline VerificationVerdict verify_route_equality(const VerifyConfig& cfg, const SeriesSink& sink) {
    auto v = detail::verdict("L5215.310", "p in {101,1009,10007,100003,1000003}, x in {p^(1/4+eps), p^0.4, p^0.5, p/2}, "
                             "z in {2, x^eps, x^(1/e)}, x*N<=1e7",
                             CheckKind::exact);
    struct Case {
        u64 p;
        double x;
        double z;
        u64 N;
    };
    std::vector<Case> cases{{101, 50.0, 5.0, 53}};
    const double eps = cfg.epsilon;
    for (u64 p : {101u, 1009u, 10007u, 100003u, 1000003u}) {
        const double pd = static_cast<double>(p);
        for (double x : {std::pow(pd, 0.25 + eps), std::pow(pd, 0.4), std::pow(pd, 0.5), pd / 2.0}) {
            const u64 N = auxiliary_prime(x, burgess_delta(eps));
            if (x * static_cast<double>(N) > 1e7 || !(x < pd) || x < 2.0) continue;
            for (double z : {2.0, std::pow(x, eps), std::pow(x, 1.0 / kE)}) cases.push_back({p, x, z, N});
        }
    }
    auto results = ordered_map<TwistedFloorReport>(cases.size(), cfg.workers, [&](std::size_t i) {
        const auto& c = cases[i];
        PrimeSumParams s{PrimeModulus(c.p), c.x, c.z, c.N, eps, burgess_delta(eps)};
        return twisted_floor_prime_sum(s);
    });
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        const auto& r = results[i];
        const std::string where = detail::at_p(c.p) + " x=" + std::to_string(c.x) + " z=" + std::to_string(c.z) +
                                  " N=" + std::to_string(c.N);
        if (!r.route) {
            v.fail(where + " route not evaluated");
            continue;
        }
        const double diff = std::abs(r.route->total() - r.report.value);
        v.observe(diff, where);
        if (!(diff <= 1e-6)) v.fail(where);
        sink(sum_report_cells(r.report));
    }
    return v;
}

/// Direct and closed-form geometric sums agree to 1e-9 relative for every
/// prime N <= nmax, 1 <= t < N, x in {N/2, N, 2N}. Parameters where the
/// 2N/(pi t) bound fails go to the sink.
inline VerificationVerdict verify_geometric(const VerifyConfig& cfg, const SeriesSink& sink) {
    auto v = detail::verdict("L9212.550", "primes N<=" + std::to_string(cfg.nmax) + ", 1<=t<N, x in {N/2, N, 2N}",
                             CheckKind::exact);
    const auto moduli = primes_in(2, cfg.nmax);
    struct Part {
        u64 cases = 0;
        double worst = 0.0;
        std::string worst_case;
        std::vector<std::string> bad;
        std::vector<SumReport> violations;
    };
    auto parts = ordered_map<Part>(moduli.size(), cfg.workers, [&](std::size_t i) {
        Part part;
        const u64 N = moduli[i];
        for (u64 t = 1; t < N; ++t) {
            for (double x : {static_cast<double>(N) / 2.0, static_cast<double>(N), 2.0 * static_cast<double>(N)}) {
                if (x < 1.0) continue;
                const auto g = geometric_sum(N, static_cast<i64>(t), x);
                ++part.cases;
                const std::string where = "N=" + std::to_string(N) + " t=" + std::to_string(t) + " x=" + std::to_string(x);
                if (part.cases == 1 || g.relative_difference > part.worst) {
                    part.worst = g.relative_difference;
                    part.worst_case = where;
                }
                if (!(g.relative_difference <= 1e-9)) part.bad.push_back(where);
                if (!g.bound_holds) part.violations.push_back(g.report);
            }
        }
        return part;
    });
    for (const auto& part : parts) {
        v.cases += part.cases;
        if (part.worst > v.worst_ratio || v.worst_case.empty()) {
            v.worst_ratio = part.worst;
            v.worst_case = part.worst_case;
        }
        for (const auto& b : part.bad) v.fail(b);
        for (const auto& r : part.violations) sink(sum_report_cells(r));
    }
    return v;
}

/// |sum_{n<=x} chi(n)| <= x at x = ceil(p^0.3) for primes p <= hi; the
/// ratio |S|/x is the observed value.
inline VerificationVerdict verify_burgess_sanity(const VerifyConfig& cfg) {
    const u64 hi = cfg.hi.value_or(10000);
    auto v = detail::verdict("T1212.450", "primes 3.." + std::to_string(hi) + ", x=ceil(p^0.3)", CheckKind::exact);
    for_each_prime(3, hi, [&](u64 q) {
        const PrimeModulus p(q);
        const double x = std::ceil(std::pow(static_cast<double>(q), 0.3));
        const auto r = char_sum(SumParams{p, x});
        const double ratio = r.magnitude / x;
        v.observe(ratio, detail::at_p(q) + " x=" + std::to_string(static_cast<u64>(x)));
        if (ratio > 1.0) v.fail(detail::at_p(q));
    });
    return v;
}

/// Over every prime in [lo, hi] with x = p^{1/4+eps}: the x^{1/sqrt e}
/// conclusion fails no more often than the x^{1/e} one (small cutoffs
/// included, since the comparison is exact at every scale).
inline VerificationVerdict verify_shrinking_comparison(const VerifyConfig& cfg) {
    const u64 lo = std::max<u64>(3, cfg.lo.value_or(3));
    const u64 hi = cfg.hi.value_or(1000000);
    const auto vino = shrinking_sweep(lo, hi, ShrinkVariant::vinogradov, cfg.epsilon, true, cfg.workers);
    const auto shr = shrinking_sweep(lo, hi, ShrinkVariant::shrinking, cfg.epsilon, true, cfg.workers);
    const auto shr_asym = shrinking_sweep(lo, hi, ShrinkVariant::shrinking, cfg.epsilon, false, cfg.workers);
    auto v = detail::verdict("T1234.000", "primes in " + detail::range_text(lo, hi) + ", x=p^(1/4+eps)", CheckKind::exact);
    v.grid += "; vinogradov fails=" + std::to_string(vino.fails) + "/" + std::to_string(vino.evaluated) +
              ", shrinking fails=" + std::to_string(shr.fails) + "/" + std::to_string(shr.evaluated) +
              ", shrinking fraction holds (x>=100)=" + std::to_string(shr_asym.fraction_holds()) +
              ", c_min(1/4e+eps)=" + std::to_string(shr_asym.c_min);
    v.observe(shr.evaluated ? static_cast<double>(shr.fails) / static_cast<double>(shr.evaluated) : 0.0,
              "shrinking failure fraction");
    if (vino.fails > shr.fails) v.fail("vinogradov variant failed more often");
    return v;
}

// =============================================================================
// Tolerance checks
// =============================================================================

/// |sum_{z<=q<=x} 1/q - 1| <= 0.05 at z = x^{1/e}.
inline VerificationVerdict verify_mertens_slice(const VerifyConfig& cfg) {
    const double x = static_cast<double>(cfg.hi.value_or(1000000));
    auto v = detail::verdict("E1234.515", "x=" + std::to_string(static_cast<u64>(x)) + ", z=x^{1/e}, tol 0.05",
                             CheckKind::tolerance);
    const auto r = mertens_slice(x, std::pow(x, 1.0 / kE));
    const double dev = std::abs(r.exact - 1.0);
    v.observe(dev, "sum=" + std::to_string(r.exact));
    if (!(dev <= 0.05)) v.fail("deviation " + std::to_string(dev));
    return v;
}

/// sum {x/q} / (x/log x - z/log z) within 5% of 1 - gamma at z = x^{1/e}.
inline VerificationVerdict verify_frac_average(const VerifyConfig& cfg) {
    const double x = static_cast<double>(cfg.hi.value_or(10000000));
    auto v = detail::verdict("E1234.520", "x=" + std::to_string(static_cast<u64>(x)) + ", z=x^{1/e}, tol 5% of 1-gamma",
                             CheckKind::tolerance);
    const double z = std::pow(x, 1.0 / kE);
    const auto r = frac_part_prime_sum(x, z);
    const double ratio = r.exact / (x / std::log(x) - z / std::log(z));
    const double rel = std::abs(ratio / (1.0 - kEulerGamma) - 1.0);
    v.observe(rel, "normalized=" + std::to_string(ratio));
    if (!(rel <= 0.05)) v.fail("relative deviation " + std::to_string(rel));
    return v;
}

// =============================================================================
// Ratio dossiers
// =============================================================================

namespace detail {

inline bool populated(const SumReport& r) { return std::isfinite(r.ratio) && r.ratio >= 0.0 && std::isfinite(r.claimed_bound); }

/// Evaluates `rows_for(p)` on sampled primes in [lo, hi] and streams the
/// rows in ascending p.
inline VerificationVerdict run_dossier(std::string id, const VerifyConfig& cfg, const SeriesSink& sink,
                                       const std::function<std::vector<SumReport>(const PrimeModulus&)>& rows_for) {
    const u64 lo = cfg.lo.value_or(1000);
    const u64 hi = cfg.hi.value_or(1000000);
    auto v = verdict(id, std::to_string(cfg.samples) + " sampled primes in " + range_text(lo, hi) +
                             ", eps=" + std::to_string(cfg.epsilon),
                     CheckKind::ratio);
    const auto primes = sampled_primes(lo, hi, cfg.samples);
    auto rows = ordered_map<std::vector<SumReport>>(primes.size(), cfg.workers,
                                                    [&](std::size_t i) { return rows_for(PrimeModulus(primes[i])); });
    for (std::size_t i = 0; i < primes.size(); ++i) {
        for (const auto& r : rows[i]) {
            v.observe(r.ratio, r.lemma_id + " " + at_p(primes[i]));
            if (!populated(r)) v.fail(r.lemma_id + " " + at_p(primes[i]) + " ratio not populated");
            sink(sum_report_cells(r));
        }
    }
    return v;
}

} // namespace detail

/// D(x) for b in {2, (N-1)/2, N-1} with both weights, x = p^{1/4+eps}.
inline VerificationVerdict dossier_equivalent_sums(const VerifyConfig& cfg, const SeriesSink& sink) {
    return detail::run_dossier("L1215.800", cfg, sink, [&](const PrimeModulus& p) {
        std::vector<SumReport> out;
        auto s = SumParams::burgess_point(p, cfg.epsilon);
        const auto N = static_cast<i64>(*s.N);
        for (i64 b : {i64{2}, (N - 1) / 2, N - 1}) {
            if (b % N == 0) continue;
            s.b = b;
            out.push_back(equivalent_sum_difference(s, EquivalentWeight::reciprocal).report);
            out.push_back(equivalent_sum_difference(s, EquivalentWeight::unit).report);
        }
        return out;
    });
}

/// S_1 at x = p^{1/4+eps}, z = x^{1/e}.
inline VerificationVerdict dossier_twisted_floor(const VerifyConfig& cfg, const SeriesSink& sink) {
    return detail::run_dossier("L5215.300", cfg, sink, [&](const PrimeModulus& p) {
        const double x = std::pow(static_cast<double>(p.value()), 0.25 + cfg.epsilon);
        return std::vector<SumReport>{twisted_floor_prime_sum(PrimeSumParams::at(p, x, std::nullopt, cfg.epsilon)).report};
    });
}

/// Premise ratios for both location tests at x = p^{1/4+eps}.
inline VerificationVerdict dossier_shrinking(const VerifyConfig& cfg, const SeriesSink& sink) {
    return detail::run_dossier("T1234.500", cfg, sink, [&](const PrimeModulus& p) {
        const double x = std::pow(static_cast<double>(p.value()), 0.25 + cfg.epsilon);
        const u64 n_p = least_nonresidue(p).n_p;
        auto shr = detail::shrink_verdict(p, x, ShrinkVariant::shrinking, n_p).premise;
        auto vin = detail::shrink_verdict(p, x, ShrinkVariant::vinogradov, n_p).premise;
        shr.params.eps = vin.params.eps = cfg.epsilon;
        return std::vector<SumReport>{shr, vin};
    });
}

/// Prime character sums: short regime at p^{1/4+eps} against x^{1-2 delta}
/// and x^{1-delta}; long regime at p^{1/2+eps}.
inline VerificationVerdict dossier_prime_char(const VerifyConfig& cfg, const SeriesSink& sink) {
    return detail::run_dossier("T4015.300", cfg, sink, [&](const PrimeModulus& p) {
        const double pd = static_cast<double>(p.value());
        const auto short_params = PrimeSumParams::at(p, std::pow(pd, 0.25 + cfg.epsilon), std::nullopt, cfg.epsilon);
        const auto s = prime_char_sum(short_params, Regime::short_interval);
        auto alt = make_report("L4015.750", s.value, std::pow(short_params.x, 1.0 - short_params.delta), s.params,
                               s.regime);
        alt.exact = s.exact;
        std::vector<SumReport> out{s, alt};
        const double x_long = std::pow(pd, 0.5 + cfg.epsilon);
        if (x_long < pd) {
            out.push_back(prime_char_sum(PrimeSumParams::at(p, x_long, std::nullopt, cfg.epsilon), Regime::long_interval));
        }
        return out;
    });
}

/// The short and complete weighted partial sums at x = p^{1/4+eps}, untwisted
/// and twisted with a = 1.
inline VerificationVerdict dossier_weighted(const VerifyConfig& cfg, const SeriesSink& sink) {
    return detail::run_dossier("L7212", cfg, sink, [&](const PrimeModulus& p) {
        std::vector<SumReport> out;
        const auto s = SumParams::burgess_point(p, cfg.epsilon);
        for (auto range : {SumRange::short_range, SumRange::complete}) {
            for (auto w : {Weight::reciprocal, Weight::frac_reciprocal, Weight::frac, Weight::unit}) {
                for (bool tw : {false, true}) out.push_back(weighted_sum(s, w, Twist{tw}, range));
            }
        }
        out.push_back(l_function_partial_sum(s));
        return out;
    });
}

/// Truncation error of the fractional-part Fourier series. Each row carries
/// |error| in magnitude and 1/w as the claimed scale, so ratio = w |error|.
inline VerificationVerdict dossier_fourier_truncation(const VerifyConfig&, const SeriesSink& sink) {
    auto v = detail::verdict("E7212.535", "n in {3,7,10,101}, x in {1, 2.5, 17}, w = 10^k, k=1..4", CheckKind::ratio);
    for (u64 n : {3u, 7u, 10u, 101u}) {
        for (double x : {1.0, 2.5, 17.0}) {
            for (u64 w = 10; w <= 10000; w *= 10) {
                const auto f = frac_fourier_error(n, x, w);
                if (f.at_jump) continue;
                ReportParams params;
                params.x = x;
                params.N = n;
                params.t = static_cast<i64>(w);
                auto r = make_report("E7212.535", f.error, 1.0 / static_cast<double>(w), params);
                v.observe(r.ratio, "n=" + std::to_string(n) + " x=" + std::to_string(x) + " w=" + std::to_string(w));
                sink(sum_report_cells(r));
            }
        }
    }
    return v;
}

// =============================================================================
// Registry
// =============================================================================

struct LemmaCheck {
    std::string_view id;
    std::string_view description;
    std::function<VerificationVerdict(const VerifyConfig&, const SeriesSink&)> run;
};

inline const std::vector<LemmaCheck>& lemma_checks() {
    static const std::vector<LemmaCheck> checks{
        {"LEG.euler", "Legendre symbol against Euler's criterion",
         [](const VerifyConfig& c, const SeriesSink&) { return verify_legendre_euler(c); }},
        {"E1221.420", "supplementary law for (2|p)",
         [](const VerifyConfig& c, const SeriesSink&) { return verify_supplementary_law(c); }},
        {"S1221", "least nonresidue structure and the 2 sqrt(p) + 1 bound",
         [](const VerifyConfig& c, const SeriesSink&) { return verify_nonresidue_structure(c); }},
        {"T2212.455", "Polya-Vinogradov inequality, all cutoffs",
         [](const VerifyConfig& c, const SeriesSink&) { return verify_polya_vinogradov(c); }},
        {"T1212.450", "trivial bound at x = ceil(p^0.3)",
         [](const VerifyConfig& c, const SeriesSink&) { return verify_burgess_sanity(c); }},
        {"L5515.200", "prime indicator by additive characters",
         [](const VerifyConfig& c, const SeriesSink&) { return verify_prime_indicator(c); }},
        {"E1234.510", "nonresidue counting decomposition",
         [](const VerifyConfig& c, const SeriesSink&) { return verify_decomposition(c); }},
        {"L1220.500", "floor = x/q - {x/q} bookkeeping and residual series", verify_floor_bookkeeping},
        {"L5215.310", "S_1 direct vs indicator rewrite", verify_route_equality},
        {"L9212.550", "geometric sum closed form and bound violations", verify_geometric},
        {"T1234.000", "x^{1/sqrt e} vs x^{1/e} location tests",
         [](const VerifyConfig& c, const SeriesSink&) { return verify_shrinking_comparison(c); }},
        {"E1234.515", "Mertens slice at z = x^{1/e}",
         [](const VerifyConfig& c, const SeriesSink&) { return verify_mertens_slice(c); }},
        {"E1234.520", "fractional-part average over primes",
         [](const VerifyConfig& c, const SeriesSink&) { return verify_frac_average(c); }},
        {"L1215.800", "equivalent twisted sums (ratio dossier)", dossier_equivalent_sums},
        {"L5215.300", "floor-weighted character sum over primes (ratio dossier)", dossier_twisted_floor},
        {"T1234.500", "location-test premises (ratio dossier)", dossier_shrinking},
        {"T4015.300", "character sums over primes (ratio dossier)", dossier_prime_char},
        {"L7212", "weighted partial sums (ratio dossier)", dossier_weighted},
        {"E7212.535", "fractional-part Fourier truncation (ratio dossier)", dossier_fourier_truncation},
    };
    return checks;
}

inline const LemmaCheck* find_lemma_check(std::string_view id) {
    for (const auto& c : lemma_checks()) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

} // namespace nrlab
