#pragma once

/// @file charsums.hpp
/// @brief Exact evaluation of quadratic character sums over intervals, with
/// the corresponding published bound carried alongside as a ratio.
///
/// Every implied constant is taken as 1. A report never asserts a bound; it
/// records |value| / claimed_bound so growth trends can be inspected.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "numeric.hpp"
#include "report.hpp"

namespace nrlab {

// =============================================================================
// Parameters
// =============================================================================

/// delta = eps^2 (1 + 4 eps) / (1 + 5 eps), the saving in the Burgess exponent.
constexpr double burgess_delta(double eps) { return eps * eps * (1.0 + 4.0 * eps) / (1.0 + 5.0 * eps); }

/// The common shorthand delta ~ eps^2.
constexpr double shorthand_delta(double eps) { return eps * eps; }

/// Smallest prime >= x^{1+delta}.
inline u64 auxiliary_prime(double x, double delta) {
    return next_prime(ceil_u64(std::pow(x, 1.0 + delta)));
}

struct SumParams {
    PrimeModulus p;
    double x;
    std::optional<double> z{};
    std::optional<u64> N{};
    double epsilon = 0.1;
    double delta = burgess_delta(0.1);
    i64 a = 1;
    i64 b = 1;
    i64 t = 1;

    /// Parameters at cutoff x with default delta and N = auxiliary_prime(x, delta).
    static SumParams at(const PrimeModulus& p, double x, double eps = 0.1) {
        SumParams s{p, x};
        s.epsilon = eps;
        s.delta = burgess_delta(eps);
        s.N = auxiliary_prime(x, s.delta);
        return s;
    }

    /// x = p^{1/4 + eps}, the cutoff used throughout the short-interval lemmas.
    static SumParams burgess_point(const PrimeModulus& p, double eps = 0.1) {
        return at(p, std::pow(static_cast<double>(p.value()), 0.25 + eps), eps);
    }
};

/// Flat parameter record attached to every report (and written as CSV columns).
struct ReportParams {
    std::optional<u64> p;
    std::optional<double> x;
    std::optional<double> z{};
    std::optional<u64> N{};
    std::optional<double> eps;
    std::optional<double> delta;
    std::optional<i64> a;
    std::optional<i64> b;
    std::optional<i64> t;

    static ReportParams from(const SumParams& s) {
        return {s.p.value(), s.x, s.z, s.N, s.epsilon, s.delta, std::nullopt, std::nullopt, std::nullopt};
    }
};

enum class Regime { trivial, short_interval, long_interval };

inline std::string_view to_string(Regime r) {
    switch (r) {
    case Regime::short_interval: return "short";
    case Regime::long_interval: return "long";
    default: return "trivial";
    }
}

/// Long when x >= p^{1/2+eps}, short when x > p^{1/4+eps}, trivial below.
inline Regime classify(double x, u64 p, double eps) {
    const double lp = std::log(static_cast<double>(p));
    if (std::log(x) >= (0.5 + eps) * lp) return Regime::long_interval;
    if (std::log(x) > (0.25 + eps) * lp) return Regime::short_interval;
    return Regime::trivial;
}

struct SumReport {
    std::string lemma_id;
    std::complex<double> value;
    std::optional<i64> exact;  // set for integer-valued sums
    double magnitude = 0.0;
    double claimed_bound = 0.0;
    double ratio = 0.0;
    ReportParams params;
    Regime regime = Regime::trivial;
};

inline SumReport make_report(std::string lemma, std::complex<double> value, double bound, ReportParams params,
                             Regime regime = Regime::trivial) {
    SumReport r;
    r.lemma_id = std::move(lemma);
    r.value = value;
    r.magnitude = std::abs(value);
    r.claimed_bound = bound;
    r.ratio = bound > 0.0 ? r.magnitude / bound : std::numeric_limits<double>::infinity();
    r.params = std::move(params);
    r.regime = regime;
    return r;
}

inline const std::vector<std::string>& sum_report_columns() {
    static const std::vector<std::string> cols{"lemma_id", "p",  "x",  "z",         "N",             "eps",
                                               "delta",    "a",  "b",  "t",         "re",            "im",
                                               "magnitude", "claimed_bound", "ratio"};
    return cols;
}

inline std::vector<Cell> sum_report_cells(const SumReport& r) {
    const auto& q = r.params;
    return {cell(r.lemma_id),        opt_cell(q.p),     opt_cell(q.x),     opt_cell(q.z),
            opt_cell(q.N),           opt_cell(q.eps),   opt_cell(q.delta), opt_cell(q.a),
            opt_cell(q.b),           opt_cell(q.t),     real_cell(r.value.real()), real_cell(r.value.imag()),
            real_cell(r.magnitude),  real_cell(r.claimed_bound), real_cell(r.ratio)};
}

namespace detail {

inline void require_cutoff(const SumParams& s) {
    if (!(s.x >= 1.0) || !(s.x < static_cast<double>(s.p.value()))) {
        throw std::domain_error("cutoff must satisfy 1 <= x < p");
    }
}

/// p^{1/4+eps} <= x < x^{1+delta} <= N < p with N prime.
inline u64 require_frame(const SumParams& s) {
    require_cutoff(s);
    if (!s.N) throw std::domain_error("auxiliary prime N required");
    const u64 N = *s.N;
    const double p = static_cast<double>(s.p.value());
    constexpr double slack = 1e-12;
    if (!is_prime(N)) throw std::domain_error("auxiliary modulus N must be prime");
    if (std::log(s.x) < (0.25 + s.epsilon) * std::log(p) * (1.0 - slack)) {
        throw std::domain_error("x below p^{1/4+eps}");
    }
    if (!(s.x > 1.0) || std::pow(s.x, 1.0 + s.delta) > static_cast<double>(N) * (1.0 + slack)) {
        throw std::domain_error("N below x^{1+delta}");
    }
    if (N >= s.p.value()) throw std::domain_error("N must be below p");
    return N;
}

inline u64 reduce_mod(i64 v, u64 m) {
    const auto mm = static_cast<i64>(m);
    i64 r = v % mm;
    if (r < 0) r += mm;
    return static_cast<u64>(r);
}

} // namespace detail

// =============================================================================
// Plain character sums
// =============================================================================

/// Prefix sums S(k) = sum_{n<=k} (n|p) for 0 <= k <= upto.
inline std::vector<i64> char_prefix_sums(const PrimeModulus& p, u64 upto) {
    std::vector<i64> s(upto + 1, 0);
    for (u64 n = 1; n <= upto; ++n) s[n] = s[n - 1] + legendre(n, p).value();
    return s;
}

/// sum_{n<=x} (n|p), with the bound of the interval's regime: x^{1-delta}
/// (short), sqrt(p) log p (long), or the trivial bound x below p^{1/4+eps}.
inline SumReport char_sum(const SumParams& s) {
    detail::require_cutoff(s);
    const u64 m = floor_u64(s.x);
    i64 total = 0;
    for (u64 n = 1; n <= m; ++n) total += legendre(n, s.p).value();

    const double p = static_cast<double>(s.p.value());
    const Regime regime = classify(s.x, s.p.value(), s.epsilon);
    double bound = s.x;
    std::string lemma = "trivial";
    if (regime == Regime::long_interval) {
        bound = std::sqrt(p) * std::log(p);
        lemma = "T2212.455";
    } else if (regime == Regime::short_interval) {
        bound = std::pow(s.x, 1.0 - s.delta);
        lemma = "T1212.450";
    }
    auto r = make_report(lemma, static_cast<double>(total), bound, ReportParams::from(s), regime);
    r.exact = total;
    return r;
}

/// x^{1 - 1/r} p^{(r+1)/(4 r^2)} log p.
inline double burgess_inequality_bound(double x, u64 p, unsigned r) {
    const double pd = static_cast<double>(p);
    const double rd = r;
    return std::pow(x, 1.0 - 1.0 / rd) * std::pow(pd, (rd + 1.0) / (4.0 * rd * rd)) * std::log(pd);
}

/// sum_{n<=x} (n|p) against the Burgess inequality at integer parameter r.
inline SumReport burgess_sum(const SumParams& s, unsigned r) {
    if (r == 0) throw std::domain_error("Burgess parameter r must be >= 1");
    auto base = char_sum(s);
    auto out = make_report("T1212.430", base.value, burgess_inequality_bound(s.x, s.p.value(), r),
                           ReportParams::from(s), base.regime);
    out.params.t = static_cast<i64>(r);
    out.exact = base.exact;
    return out;
}

/// Partial sum of L(1, chi): sum_{n<=x} (n|p)/n against log p.
inline SumReport l_function_partial_sum(const SumParams& s) {
    detail::require_cutoff(s);
    CompensatedSum acc;
    const u64 m = floor_u64(s.x);
    for (u64 n = 1; n <= m; ++n) acc += legendre(n, s.p).value() / static_cast<double>(n);
    return make_report("T3131.100", acc.value(), std::log(static_cast<double>(s.p.value())), ReportParams::from(s),
                       classify(s.x, s.p.value(), s.epsilon));
}

// =============================================================================
// Weighted and twisted partial sums
// =============================================================================

enum class Weight {
    reciprocal,       // chi(n) / n
    frac_reciprocal,  // {x/n} chi(n) / n
    frac,             // {x/n} chi(n)
    unit              // chi(n)
};

/// short: 1 <= n <= x.  complete: 1 <= n < N.
enum class SumRange { short_range, complete };

struct Twist {
    bool enabled = false;  // multiply by e^{2 pi i a n / N}, a from SumParams
};

namespace detail {

inline std::string weighted_lemma(Weight w, SumRange r, bool twisted) {
    static const char* short_ids[] = {"L7212.500", "L7212.530", "L7212.590", "L7212.580"};
    static const char* complete_ids[] = {"L9212.530", "L9212.540", "L9212.545", "L9212.535"};
    const auto i = static_cast<int>(w);
    return std::string(r == SumRange::short_range ? short_ids[i] : complete_ids[i]) + (twisted ? "ii" : "i");
}

inline double weight_of(Weight w, double x, u64 n) {
    switch (w) {
    case Weight::reciprocal: return 1.0 / static_cast<double>(n);
    case Weight::frac_reciprocal: return frac_ratio(x, n) / static_cast<double>(n);
    case Weight::frac: return frac_ratio(x, n);
    default: return 1.0;
    }
}

} // namespace detail

/// Exact (double, compensated) weighted sum. The 1/n forms are compared to
/// log x, the others to x^{1-delta}.
inline SumReport weighted_sum(const SumParams& s, Weight w, Twist twist = {}, SumRange range = SumRange::short_range) {
    const bool uses_N = twist.enabled || range == SumRange::complete;
    const u64 N = uses_N ? detail::require_frame(s) : (detail::require_cutoff(s), 0);
    const u64 upto = range == SumRange::complete ? N - 1 : floor_u64(s.x);
    const u64 a = twist.enabled ? detail::reduce_mod(s.a, N) : 0;

    ComplexCompensatedSum acc;
    for (u64 n = 1; n <= upto; ++n) {
        const int chi = legendre(n, s.p).value();
        if (chi == 0) continue;
        const double term = chi * detail::weight_of(w, s.x, n);
        if (twist.enabled) {
            acc += term * RootTable::unit(static_cast<u64>((static_cast<unsigned __int128>(a) * n) % N), N);
        } else {
            acc += std::complex<double>(term, 0.0);
        }
    }
    const bool log_form = w == Weight::reciprocal || w == Weight::frac_reciprocal;
    const double bound = log_form ? std::log(s.x) : std::pow(s.x, 1.0 - s.delta);
    auto params = ReportParams::from(s);
    if (twist.enabled) params.a = s.a;
    if (!uses_N) params.N.reset();
    return make_report(detail::weighted_lemma(w, range, twist.enabled), acc.value(), bound, params,
                       classify(s.x, s.p.value(), s.epsilon));
}

// =============================================================================
// Geometric sums of roots of unity
// =============================================================================

struct GeometricReport {
    SumReport report;                   // value = direct summation
    std::complex<double> closed_form;
    double relative_difference = 0.0;   // |direct - closed| / max(1, |closed|)
    bool bound_holds = false;           // |value| <= 2N/(pi t)
};

/// sum_{n<=x} w^{n t} with w = e^{2 pi i / N}, by direct summation and by the
/// geometric-series closed form w^t (1 - w^{t m}) / (1 - w^t), m = [x].
inline GeometricReport geometric_sum(u64 N, i64 t, double x) {
    if (!is_prime(N)) throw std::domain_error("geometric sum modulus must be prime");
    if (t < 1 || static_cast<u64>(t) >= N) throw std::domain_error("frequency must satisfy 1 <= t < N");
    if (!(x >= 1.0)) throw std::domain_error("cutoff must be >= 1");
    const u64 tt = static_cast<u64>(t);
    const u64 m = floor_u64(x);

    const RootTable roots(N);
    ComplexCompensatedSum acc;
    for (u64 n = 1; n <= m; ++n) acc += roots.at_product(n, tt);
    const auto direct = acc.value();

    const auto wt = roots(tt);
    const auto wtm = roots.at_product(tt, m);
    const auto closed = wt * (1.0 - wtm) / (1.0 - wt);

    GeometricReport out;
    ReportParams params;
    params.x = x;
    params.N = N;
    params.t = t;
    out.report = make_report("L9212.550", direct, 2.0 * static_cast<double>(N) / (kPi * static_cast<double>(t)), params);
    out.closed_form = closed;
    out.relative_difference = std::abs(direct - closed) / std::max(1.0, std::abs(closed));
    out.bound_holds = out.report.magnitude <= out.report.claimed_bound;
    return out;
}

// =============================================================================
// Equivalent twisted sums
// =============================================================================

enum class EquivalentWeight { reciprocal, unit };

struct EquivalentReport {
    SumReport report;  // value = D(x) = at_b - at_one
    std::complex<double> at_b;
    std::complex<double> at_one;
};

/// D(x) = sum_{n<=x} w(n) e^{2 pi i b n/N} - sum_{n<=x} w(n) e^{2 pi i n/N}
/// with w(n) = chi(n)/n (against (log x)^2) or chi(n) (against x^{1-delta}).
inline EquivalentReport equivalent_sum_difference(const SumParams& s, EquivalentWeight w) {
    const u64 N = detail::require_frame(s);
    const u64 b = detail::reduce_mod(s.b, N);
    if (b == 0) throw std::domain_error("b must be nonzero mod N");
    const u64 m = floor_u64(s.x);

    ComplexCompensatedSum at_b, at_one;
    for (u64 n = 1; n <= m; ++n) {
        const int chi = legendre(n, s.p).value();
        if (chi == 0) continue;
        const double term = w == EquivalentWeight::reciprocal ? chi / static_cast<double>(n) : chi;
        at_b += term * RootTable::unit(static_cast<u64>((static_cast<unsigned __int128>(b) * n) % N), N);
        at_one += term * RootTable::unit(n % N, N);
    }
    EquivalentReport out;
    out.at_b = at_b.value();
    out.at_one = at_one.value();
    const auto diff = out.at_b - out.at_one;
    const double bound = w == EquivalentWeight::reciprocal ? std::pow(std::log(s.x), 2) : std::pow(s.x, 1.0 - s.delta);
    auto params = ReportParams::from(s);
    params.b = s.b;
    out.report = make_report(w == EquivalentWeight::reciprocal ? "L1215.800" : "L1215.850", diff, bound, params,
                             classify(s.x, s.p.value(), s.epsilon));
    return out;
}

// =============================================================================
// Truncated Fourier series of the fractional part
// =============================================================================

struct FourierTruncation {
    double series = 0.0;  // 1/2 - sum_{m<=w} sin(2 pi m x/n) / (pi m)
    double exact = 0.0;   // {x/n}
    double error = 0.0;   // series - exact
    bool at_jump = false; // x/n integral: the series converges to 1/2 there
};

inline FourierTruncation frac_fourier_error(u64 n, double x, u64 w) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    if (w < 1) throw std::domain_error("truncation length w must be >= 1");
    const bool integral_x = is_integral(x) && x >= 0.0 && x < 9007199254740992.0;
    CompensatedSum acc;
    for (u64 m = 1; m <= w; ++m) {
        double sine = 0.0;
        if (integral_x) {
            const u64 k = static_cast<u64>((static_cast<unsigned __int128>(m) * static_cast<u64>(x)) % n);
            sine = RootTable::unit(k, n).imag();
        } else {
            const double r = static_cast<double>(m) * x / static_cast<double>(n);
            sine = std::sin(2.0 * kPi * (r - std::floor(r)));
        }
        acc += sine / (kPi * static_cast<double>(m));
    }
    FourierTruncation out;
    out.series = 0.5 - acc.value();
    out.exact = frac_ratio(x, n);
    out.error = out.series - out.exact;
    out.at_jump = out.exact == 0.0;
    return out;
}

} // namespace nrlab
