#pragma once

/// @file nonresidue.hpp
/// @brief Least quadratic nonresidues: plain, restricted to an arithmetic
/// progression, and streamed over prime ranges with mergeable summaries.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "numeric.hpp"
#include "parallel.hpp"
#include "report.hpp"

namespace nrlab {

struct ExponentThresholds {
    double burgess = 1.0 / (4.0 * std::sqrt(kE));
    double claimed = 1.0 / (4.0 * kE);

    double gap() const { return burgess - claimed; }
};

struct Progression {
    u64 a = 1;
    u64 q = 1;
    /// Set when the caller supplied b: whether q <= (log p)^b.
    std::optional<bool> within_log_power;
};

struct NonresidueRecord {
    u64 p = 0;
    u64 n_p = 0;
    double exponent = 0.0;  // ln(n_p) / ln(p)
    std::optional<Progression> progression;
};

/// Raised when a progression search walks past p without finding a nonresidue.
class exhaustion_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> table = [] {
        std::vector<std::uint32_t> t{2};
        const auto odd = odd_primes_upto(1u << 16);
        t.insert(t.end(), odd.begin(), odd.end());
        return t;
    }();
    return table;
}

inline double exponent_of(u64 n, u64 p) {
    return std::log(static_cast<double>(n)) / std::log(static_cast<double>(p));
}

} // namespace detail

/// Smallest n >= 2 with (n|p) = -1. Only primes are tried: by complete
/// multiplicativity the least nonresidue is prime.
inline NonresidueRecord least_nonresidue(const PrimeModulus& p) {
    for (std::uint32_t q : detail::small_primes()) {
        if (legendre(u64{q}, p).is_nonresidue()) {
            return {p.value(), q, detail::exponent_of(q, p.value()), std::nullopt};
        }
    }
    for (u64 q = next_prime(detail::small_primes().back() + 1u); q < p.value(); q = next_prime(q + 1)) {
        if (legendre(q, p).is_nonresidue()) return {p.value(), q, detail::exponent_of(q, p.value()), std::nullopt};
    }
    throw exhaustion_error("no nonresidue below p");  // unreachable for prime p
}

/// Smallest n = a (mod q), n >= 2, with (n|p) = -1.
///
/// `log_power` is the optional exponent b of the advisory constraint
/// q <= (log p)^b; it is recorded on the result and never enforced.
inline NonresidueRecord least_nonresidue_in_ap(const PrimeModulus& p, u64 a, u64 q,
                                               std::optional<double> log_power = std::nullopt) {
    if (q == 0) throw std::invalid_argument("progression modulus must be >= 1");
    if (q == 1 ? a != 1 : (a < 1 || a >= q)) {
        throw std::invalid_argument("progression residue must satisfy 1 <= a < q");
    }
    if (gcd(a, q) != 1) throw std::invalid_argument("progression requires gcd(a, q) = 1");

    Progression prog{a, q, std::nullopt};
    if (log_power) {
        prog.within_log_power =
            static_cast<double>(q) <= std::pow(std::log(static_cast<double>(p.value())), *log_power);
    }

    u64 n = a;
    if (n < 2) n += q;
    for (; n < p.value(); n += q) {
        if (legendre(n, p).is_nonresidue()) {
            return {p.value(), n, detail::exponent_of(n, p.value()), prog};
        }
    }
    throw exhaustion_error("no nonresidue = " + std::to_string(a) + " mod " + std::to_string(q) +
                           " below p = " + std::to_string(p.value()));
}

// =============================================================================
// Range scan
// =============================================================================

struct ScanRow {
    NonresidueRecord record;
    bool is_record = false;  // n_p strictly exceeds every earlier n_p in the scan
};

/// Mergeable scan statistics. `merge(left, right)` requires left to cover
/// smaller primes than right; it is associative, so any chunking yields the
/// same summary.
struct ScanSummary {
    u64 count = 0;
    u64 above_burgess = 0;
    u64 above_claimed = 0;
    std::optional<NonresidueRecord> max_exponent;  // ties resolved to the smaller p
    u64 max_n_p = 0;
    std::vector<NonresidueRecord> record_breakers;

    /// Returns whether r breaks the running n_p record.
    bool absorb(const NonresidueRecord& r, const ExponentThresholds& t) {
        ++count;
        if (r.exponent > t.burgess) ++above_burgess;
        if (r.exponent > t.claimed) ++above_claimed;
        if (!max_exponent || r.exponent > max_exponent->exponent) max_exponent = r;
        if (r.n_p > max_n_p) {
            max_n_p = r.n_p;
            record_breakers.push_back(r);
            return true;
        }
        return false;
    }

    static ScanSummary merge(const ScanSummary& left, const ScanSummary& right) {
        ScanSummary out = left;
        out.count += right.count;
        out.above_burgess += right.above_burgess;
        out.above_claimed += right.above_claimed;
        if (right.max_exponent && (!out.max_exponent || right.max_exponent->exponent > out.max_exponent->exponent)) {
            out.max_exponent = right.max_exponent;
        }
        for (const auto& r : right.record_breakers) {
            if (r.n_p > out.max_n_p) {
                out.max_n_p = r.n_p;
                out.record_breakers.push_back(r);
            }
        }
        return out;
    }
};

struct ScanOptions {
    Workers workers{};
    bool records_only = false;  // emit only record-breaking rows
    u64 chunk_width = u64{1} << 18;
};

/// Computes n_p for every prime in [lo, hi]. Rows reach `sink` in ascending p
/// regardless of the worker count; at most one batch of chunks is held in
/// memory at a time.
inline ScanSummary scan(u64 lo, u64 hi, const ExponentThresholds& thresholds, const ScanOptions& options,
                        const std::function<void(const ScanRow&)>& sink) {
    if (lo < 3 || lo > hi) throw std::invalid_argument("scan requires 3 <= lo <= hi");
    const auto chunks = split_range(lo, hi, options.chunk_width);
    const std::size_t batch = std::size_t{options.workers.count()} * 4;

    ScanSummary total;
    for (std::size_t start = 0; start < chunks.size(); start += batch) {
        const std::size_t n = std::min(batch, chunks.size() - start);
        auto parts = ordered_map<std::vector<NonresidueRecord>>(n, options.workers, [&](std::size_t i) {
            std::vector<NonresidueRecord> recs;
            const Chunk c = chunks[start + i];
            for_each_prime(c.lo, c.hi, [&](u64 q) { recs.push_back(least_nonresidue(PrimeModulus(q))); });
            return recs;
        });
        for (const auto& part : parts) {
            for (const auto& r : part) {
                const bool rec = total.absorb(r, thresholds);
                if (!options.records_only || rec) sink(ScanRow{r, rec});
            }
        }
    }
    return total;
}

struct ScanResult {
    std::vector<ScanRow> rows;
    ScanSummary summary;
};

inline ScanResult scan(u64 lo, u64 hi, const ExponentThresholds& thresholds = {}, const ScanOptions& options = {}) {
    ScanResult out;
    out.summary = scan(lo, hi, thresholds, options, [&out](const ScanRow& r) { out.rows.push_back(r); });
    return out;
}

inline const std::vector<std::string>& scan_columns() {
    static const std::vector<std::string> cols{"p", "n_p", "exponent", "is_record"};
    return cols;
}

inline std::vector<Cell> scan_row_cells(const ScanRow& r) {
    return {cell(r.record.p), cell(r.record.n_p), real_cell(r.record.exponent), cell(r.is_record)};
}

// =============================================================================
// Gauss bound
// =============================================================================

/// Checks n_p < 2 sqrt(p) + 1 for every prime in [lo, hi]. The comparison is
/// done in integers as (n_p - 1)^2 < 4p.
inline VerificationVerdict gauss_bound_check(u64 lo, u64 hi, Workers workers = {}) {
    VerificationVerdict v;
    v.lemma_id = "S1221.gauss";
    v.grid = "primes in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    v.kind = CheckKind::exact;
    ScanOptions opt;
    opt.workers = workers;
    scan(lo, hi, ExponentThresholds{}, opt, [&v](const ScanRow& row) {
        const auto& r = row.record;
        const double bound = 2.0 * std::sqrt(static_cast<double>(r.p)) + 1.0;
        v.observe(static_cast<double>(r.n_p) / bound, "p=" + std::to_string(r.p) + " n_p=" + std::to_string(r.n_p));
        const auto m = static_cast<unsigned __int128>(r.n_p - 1);
        if (!(m * m < static_cast<unsigned __int128>(r.p) * 4)) {
            v.fail("p=" + std::to_string(r.p) + " n_p=" + std::to_string(r.n_p));
        }
    });
    return v;
}

} // namespace nrlab
