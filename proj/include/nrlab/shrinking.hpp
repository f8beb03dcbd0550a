#pragma once

/// @file shrinking.hpp
/// @brief Exact bookkeeping for the nonresidue-counting decomposition of
/// sum_{n<=x} chi(n), and empirical tests of the "some n <= x^c has
/// chi(n) = -1" conclusions at c = 1/sqrt(e) and c = 1/e.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "charsums.hpp"
#include "nonresidue.hpp"
#include "numeric.hpp"
#include "parallel.hpp"
#include "primesums.hpp"
#include "report.hpp"

namespace nrlab {

/// The theorem's hypothesis is absent, so the audit has nothing to test.
class precondition_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// =============================================================================
// Decomposition
// =============================================================================

struct DecompositionReport {
    u64 p = 0;
    double x = 0.0;
    double z = 0.0;
    i64 floor_x = 0;
    i64 lhs = 0;         // sum_{n<=x} chi(n)
    i64 count_form = 0;  // [x] - 2 #{n <= x : chi(n) = -1}
    i64 prime_form = 0;  // [x] - 2 sum_{z<=q<=x, chi(q)=-1} [x/q]
    i64 s0 = 0;          // sum_{z<=q<=x} [x/q]
    i64 s1 = 0;          // sum_{z<=q<=x} [x/q] chi(q)
    bool hypothesis_holds = false;  // chi(n) = +1 for every n <= z
    i64 residual = 0;    // lhs - prime_form
};

inline DecompositionReport decompose(const PrimeModulus& p, double x, double z) {
    if (!(x >= 1.0) || !(x < static_cast<double>(p.value()))) throw std::domain_error("decompose requires 1 <= x < p");
    if (!(z > 0.0) || !(z <= x)) throw std::domain_error("decompose requires 0 < z <= x");

    DecompositionReport r;
    r.p = p.value();
    r.x = x;
    r.z = z;
    const u64 xf = floor_u64(x);
    const u64 zf = floor_u64(z);
    r.floor_x = static_cast<i64>(xf);

    i64 nonresidues = 0;
    r.hypothesis_holds = true;
    for (u64 n = 1; n <= xf; ++n) {
        const int c = legendre(n, p).value();
        r.lhs += c;
        if (c == -1) {
            ++nonresidues;
            if (n <= zf) r.hypothesis_holds = false;
        }
    }
    r.count_form = r.floor_x - 2 * nonresidues;

    i64 nonresidue_floor = 0;
    for_each_prime(std::max<u64>(2, ceil_u64(z)), xf, [&](u64 q) {
        const auto f = static_cast<i64>(xf / q);
        const int c = legendre(q, p).value();
        r.s0 += f;
        r.s1 += f * c;
        if (c == -1) nonresidue_floor += f;
    });
    r.prime_form = r.floor_x - 2 * nonresidue_floor;
    r.residual = r.lhs - r.prime_form;
    return r;
}

inline const std::vector<std::string>& decomposition_columns() {
    static const std::vector<std::string> cols{"p",          "x",        "z",        "n_p",
                                               "lhs",        "count_form", "prime_form", "residual",
                                               "hypothesis_holds", "conclusion_holds"};
    return cols;
}

/// n_p is passed in so that callers scanning many x for one p compute it once.
inline std::vector<Cell> decomposition_cells(const DecompositionReport& r, u64 n_p) {
    return {cell(r.p),          real_cell(r.x),          real_cell(r.z),          cell(n_p),
            cell(r.lhs),        cell(r.count_form),      cell(r.prime_form),      cell(r.residual),
            cell(r.hypothesis_holds), cell(static_cast<double>(n_p) <= r.z)};
}

// =============================================================================
// Nonresidue-location tests
// =============================================================================

enum class ShrinkVariant {
    vinogradov,  // z = x^{1/sqrt(e)}
    shrinking    // z = x^{1/e}
};

inline double shrink_power(ShrinkVariant v) { return v == ShrinkVariant::vinogradov ? 1.0 / std::sqrt(kE) : 1.0 / kE; }

/// Cutoffs below this are tagged as outside the asymptotic range.
inline constexpr double kAsymptoticFloor = 100.0;

struct ShrinkingVerdict {
    ShrinkVariant variant = ShrinkVariant::shrinking;
    u64 p = 0;
    double x = 0.0;
    double z = 0.0;
    u64 n_p = 0;
    bool conclusion_holds = false;  // n_p <= z
    bool below_asymptotic_range = false;
    SumReport premise;  // sum_{n<=x} chi(n) against x (vinogradov) or x/log x (shrinking)
};

namespace detail {

inline ShrinkingVerdict shrink_verdict(const PrimeModulus& p, double x, ShrinkVariant v, u64 n_p) {
    if (!(x >= 2.0) || !(x < static_cast<double>(p.value()))) throw std::domain_error("test requires 2 <= x < p");
    ShrinkingVerdict out;
    out.variant = v;
    out.p = p.value();
    out.x = x;
    out.z = std::pow(x, shrink_power(v));
    out.n_p = n_p;
    out.conclusion_holds = static_cast<double>(n_p) <= out.z;
    out.below_asymptotic_range = x < kAsymptoticFloor;

    SumParams s{p, x};
    const auto base = char_sum(s);
    const bool vino = v == ShrinkVariant::vinogradov;
    out.premise = make_report(vino ? "T1234.000" : "T1234.500", base.value, vino ? x : x / std::log(x),
                              ReportParams::from(s), base.regime);
    out.premise.params.z = out.z;
    out.premise.exact = base.exact;
    return out;
}

} // namespace detail

inline ShrinkingVerdict vinogradov_test(const PrimeModulus& p, double x) {
    return detail::shrink_verdict(p, x, ShrinkVariant::vinogradov, least_nonresidue(p).n_p);
}

inline ShrinkingVerdict shrinking_test(const PrimeModulus& p, double x) {
    return detail::shrink_verdict(p, x, ShrinkVariant::shrinking, least_nonresidue(p).n_p);
}

struct ShrinkingSweep {
    ShrinkVariant variant = ShrinkVariant::shrinking;
    double epsilon = 0.1;
    u64 primes = 0;
    u64 evaluated = 0;       // primes counted in the aggregates
    u64 excluded_small = 0;  // primes with x below the asymptotic floor
    u64 holds = 0;
    u64 fails = 0;
    double c_min = 0.0;      // max n_p / p^{exponent + eps} over evaluated primes
    std::optional<u64> worst_p;

    double fraction_holds() const { return evaluated ? static_cast<double>(holds) / static_cast<double>(evaluated) : 0.0; }
};

/// Runs the variant over every prime in [lo, hi] with x = p^{1/4+eps}.
/// c_min uses the exponent the variant predicts: 1/(4 sqrt e) or 1/(4e).
inline ShrinkingSweep shrinking_sweep(u64 lo, u64 hi, ShrinkVariant v, double eps = 0.1,
                                      bool include_small = false, Workers workers = {}) {
    ShrinkingSweep out;
    out.variant = v;
    out.epsilon = eps;
    const double power = shrink_power(v) / 4.0 + eps;
    const auto chunks = split_range(std::max<u64>(lo, 3), hi, u64{1} << 16);
    auto parts = ordered_map<ShrinkingSweep>(chunks.size(), workers, [&](std::size_t i) {
        ShrinkingSweep part;
        for_each_prime(chunks[i].lo, chunks[i].hi, [&](u64 q) {
            const PrimeModulus p(q);
            ++part.primes;
            const double x = std::pow(static_cast<double>(q), 0.25 + eps);
            if (x < 2.0) {
                ++part.excluded_small;
                return;
            }
            const u64 n_p = least_nonresidue(p).n_p;
            const double z = std::pow(x, shrink_power(v));
            if (x < kAsymptoticFloor && !include_small) {
                ++part.excluded_small;
                return;
            }
            ++part.evaluated;
            if (static_cast<double>(n_p) <= z) ++part.holds; else ++part.fails;
            const double c = static_cast<double>(n_p) / std::pow(static_cast<double>(q), power);
            if (!part.worst_p || c > part.c_min) {
                part.c_min = c;
                part.worst_p = q;
            }
        });
        return part;
    });
    for (const auto& part : parts) {
        out.primes += part.primes;
        out.evaluated += part.evaluated;
        out.excluded_small += part.excluded_small;
        out.holds += part.holds;
        out.fails += part.fails;
        if (part.worst_p && (!out.worst_p || part.c_min > out.c_min)) {
            out.c_min = part.c_min;
            out.worst_p = part.worst_p;
        }
    }
    return out;
}

// =============================================================================
// Term-by-term audit of the substituted asymptotics
// =============================================================================

struct AuditReport {
    AsymptoticReport asymptotic;  // exact = lhs, main_term = [x] - x + gamma_term
    u64 p = 0;
    double x = 0.0;
    double z = 0.0;  // x^{1/e}
    u64 n_p = 0;
    i64 floor_x = 0;
    i64 s0 = 0;
    i64 s1 = 0;
    i64 lhs = 0;
    i64 prime_form = 0;
    double x_log_term = 0.0;    // x log(log x / log z), identically x at z = x^{1/e}
    double gamma_term = 0.0;    // (1 - gamma)(x/log x - z/log z)
    double cancellation = 0.0;  // [x] - x_log_term
    bool bookkeeping_holds = false;  // [x] - S_0 + S_1 == prime_form
};

/// Requires n_p > x^{1/e}; throws precondition_error otherwise.
inline AuditReport contradiction_audit(const PrimeModulus& p, double x) {
    if (!(x >= 2.0) || !(x < static_cast<double>(p.value()))) throw std::domain_error("audit requires 2 <= x < p");
    const double z = std::pow(x, 1.0 / kE);
    const u64 n_p = least_nonresidue(p).n_p;
    if (static_cast<double>(n_p) <= z) {
        throw precondition_error("hypothesis absent: n_p = " + std::to_string(n_p) + " <= x^{1/e}");
    }
    const auto d = decompose(p, x, z);

    AuditReport a;
    a.p = p.value();
    a.x = x;
    a.z = z;
    a.n_p = n_p;
    a.floor_x = d.floor_x;
    a.s0 = d.s0;
    a.s1 = d.s1;
    a.lhs = d.lhs;
    a.prime_form = d.prime_form;
    a.x_log_term = x;
    a.gamma_term = (1.0 - kEulerGamma) * (x / std::log(x) - z / std::log(z));
    a.cancellation = static_cast<double>(a.floor_x) - a.x_log_term;
    a.bookkeeping_holds = a.floor_x - a.s0 + a.s1 == a.prime_form;
    a.asymptotic = make_asymptotic("E1234.525", x, z, static_cast<double>(a.lhs),
                                   static_cast<double>(a.floor_x) - a.x_log_term + a.gamma_term,
                                   x / std::pow(std::log(x), 2));
    return a;
}

inline const std::vector<std::string>& audit_columns() {
    static const std::vector<std::string> cols{
        "p",          "x",          "z",          "n_p",          "floor_x",  "s0",        "s1",
        "lhs",        "prime_form", "x_log_term", "gamma_term",   "cancellation", "main_term", "residual",
        "error_scale", "normalized_residual", "bookkeeping_holds"};
    return cols;
}

inline std::vector<Cell> audit_cells(const AuditReport& a) {
    return {cell(a.p),         real_cell(a.x),          real_cell(a.z),          cell(a.n_p),
            cell(a.floor_x),   cell(a.s0),              cell(a.s1),              cell(a.lhs),
            cell(a.prime_form), real_cell(a.x_log_term), real_cell(a.gamma_term), real_cell(a.cancellation),
            real_cell(a.asymptotic.main_term),          real_cell(a.asymptotic.residual),
            real_cell(a.asymptotic.predicted_error_scale), real_cell(a.asymptotic.normalized_residual),
            cell(a.bookkeeping_holds)};
}

} // namespace nrlab
