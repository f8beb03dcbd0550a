// nrlab: range scans, character-sum reports, lemma verification and
// decomposition audits.
//
// Exit codes: 0 success, 1 an exact invariant failed, 2 configuration or
// domain error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nrlab/nrlab.hpp"

namespace {

using namespace nrlab;

struct Options {
    std::optional<u64> lo;
    std::optional<u64> hi;
    std::optional<u64> p;
    std::optional<double> x;
    std::optional<double> z;
    std::optional<double> eps;
    std::optional<double> delta;
    std::optional<i64> a;
    std::optional<i64> b;
    std::optional<i64> t;
    std::optional<u64> N;
    u64 nmax = 997;
    unsigned samples = 200;
    std::vector<std::string> lemmas;
    bool all = false;
    bool records_only = false;
    std::string out;
    std::string series;
    std::string format = "csv";
    unsigned workers = Workers::hardware().count();
};

/// A config problem detected after parsing; reported with usage text.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw config_error("cannot open output file: " + path);
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

template <class T>
T need(const std::optional<T>& v, const char* flag) {
    if (!v) throw config_error(std::string("missing required flag ") + flag);
    return *v;
}

PrimeModulus modulus(const Options& o) {
    const u64 p = need(o.p, "--p");
    if (p < 3 || !is_prime(p)) throw config_error("--p must be an odd prime");
    return PrimeModulus(p);
}

double epsilon(const Options& o) { return o.eps.value_or(0.1); }

int report_violation(const std::string& what) {
    std::cerr << "invariant violated: " << what << "\n";
    return 1;
}

// -----------------------------------------------------------------------------

int run_scan(const Options& o) {
    const u64 lo = o.lo.value_or(3);
    const u64 hi = need(o.hi, "--hi");
    if (lo < 3 || lo > hi) throw config_error("scan requires 3 <= --lo <= --hi");
    Output out(o.out);
    RecordWriter writer(out.stream(), parse_format(o.format), scan_columns());
    ScanOptions opt;
    opt.workers = Workers(o.workers);
    opt.records_only = o.records_only;

    std::optional<std::string> violation;
    const auto summary = scan(lo, hi, ExponentThresholds{}, opt, [&](const ScanRow& row) {
        writer.write(scan_row_cells(row));
        const auto& r = row.record;
        const auto m = static_cast<unsigned __int128>(r.n_p - 1);
        if (!violation && (!is_prime(r.n_p) || !(m * m < static_cast<unsigned __int128>(r.p) * 4))) {
            violation = "p=" + std::to_string(r.p) + " n_p=" + std::to_string(r.n_p);
        }
    });
    out.stream().flush();

    const ExponentThresholds t;
    std::cerr << "primes=" << summary.count << " above_1/(4sqrt(e))=" << summary.above_burgess
              << " above_1/(4e)=" << summary.above_claimed << " max_n_p=" << summary.max_n_p;
    if (summary.max_exponent) {
        std::cerr << " max_exponent=" << summary.max_exponent->exponent << " at p=" << summary.max_exponent->p;
    }
    std::cerr << " record_breakers=" << summary.record_breakers.size() << " threshold_gap=" << t.gap() << "\n";
    return violation ? report_violation(*violation) : 0;
}

SumParams sum_params(const Options& o) {
    const auto p = modulus(o);
    SumParams s = SumParams::at(p, need(o.x, "--x"), epsilon(o));
    if (o.delta) s.delta = *o.delta;
    if (o.delta && !o.N) s.N = auxiliary_prime(s.x, s.delta);
    if (o.N) s.N = *o.N;
    s.z = o.z;
    if (o.a) s.a = *o.a;
    if (o.b) s.b = *o.b;
    if (o.t) s.t = *o.t;
    return s;
}

int run_sums(const Options& o) {
    const auto s = sum_params(o);
    const auto plain = char_sum(s);
    Output out(o.out);
    RecordWriter writer(out.stream(), parse_format(o.format), sum_report_columns());
    writer.write(sum_report_cells(plain));
    writer.write(sum_report_cells(burgess_sum(s, 2)));

    // Rows that need the auxiliary-prime frame are skipped when it does not hold.
    auto framed = [&](auto&& make) {
        try {
            writer.write(sum_report_cells(make()));
        } catch (const std::domain_error& e) {
            if (o.N) throw;
            std::cerr << "skipped: " << e.what() << "\n";
        }
    };
    framed([&] { return l_function_partial_sum(s); });
    for (auto range : {SumRange::short_range, SumRange::complete}) {
        for (auto w : {Weight::reciprocal, Weight::frac_reciprocal, Weight::frac, Weight::unit}) {
            for (bool tw : {false, true}) framed([&] { return weighted_sum(s, w, Twist{tw}, range); });
        }
    }
    framed([&] { return equivalent_sum_difference(s, EquivalentWeight::reciprocal).report; });
    framed([&] { return equivalent_sum_difference(s, EquivalentWeight::unit).report; });

    bool exact_ok = true;
    if (s.N && s.t >= 1 && static_cast<u64>(s.t) < *s.N) {
        const auto g = geometric_sum(*s.N, s.t, s.x);
        writer.write(sum_report_cells(g.report));
        exact_ok = g.relative_difference <= 1e-9;
    }
    out.stream().flush();
    if (!exact_ok) return report_violation("geometric closed form differs from direct sum");
    return 0;
}

int run_prime_sums(const Options& o) {
    const auto p = modulus(o);
    auto s = PrimeSumParams::at(p, need(o.x, "--x"), o.z, epsilon(o));
    if (o.delta) {
        s.delta = *o.delta;
        s.N = auxiliary_prime(s.x, s.delta);
    }
    if (o.N) s.N = *o.N;

    const auto floor_sum = twisted_floor_prime_sum(s);
    const auto regime = classify(s.x, p.value(), s.epsilon) == Regime::long_interval ? Regime::long_interval
                                                                                     : Regime::short_interval;
    const auto over_primes = prime_char_sum(s, regime);
    Output out(o.out);
    RecordWriter writer(out.stream(), parse_format(o.format), sum_report_columns());
    writer.write(sum_report_cells(floor_sum.report));
    writer.write(sum_report_cells(over_primes));
    if (s.z >= 2.0 && s.z <= s.x) {
        writer.write(asymptotic_cells(floor_weight_prime_sum(s.x, s.z), p.value()));
        writer.write(asymptotic_cells(mertens_slice(s.x, s.z), p.value()));
        writer.write(asymptotic_cells(frac_part_prime_sum(s.x, s.z), p.value()));
    }
    out.stream().flush();
    if (floor_sum.route) {
        const double diff = std::abs(floor_sum.route->total() - floor_sum.report.value);
        std::cerr << "indicator route: T0=" << floor_sum.route->t0() << " T1=" << floor_sum.route->t1()
                  << " |direct - (T0+T1)|=" << diff << "\n";
        if (!(diff <= 1e-6)) return report_violation("S_1 direct and indicator routes differ by " + std::to_string(diff));
    }
    return 0;
}

int run_verify(const Options& o) {
    if (o.all == !o.lemmas.empty()) throw config_error("verify needs exactly one of --lemma or --all");
    std::vector<const LemmaCheck*> checks;
    if (o.all) {
        for (const auto& c : lemma_checks()) checks.push_back(&c);
    } else {
        for (const auto& id : o.lemmas) {
            const auto* c = find_lemma_check(id);
            if (!c) throw config_error("unknown lemma id: " + id);
            checks.push_back(c);
        }
    }

    VerifyConfig cfg;
    cfg.lo = o.lo;
    cfg.hi = o.hi;
    cfg.nmax = o.nmax;
    cfg.epsilon = epsilon(o);
    cfg.samples = o.samples;
    cfg.workers = Workers(o.workers);

    const Format fmt = parse_format(o.format);
    Output out(o.out);
    RecordWriter writer(out.stream(), fmt, verdict_columns());
    std::unique_ptr<std::ofstream> series_file;
    std::unique_ptr<RecordWriter> series;
    if (!o.series.empty()) {
        series_file = std::make_unique<std::ofstream>(o.series, std::ios::binary);
        if (!*series_file) throw config_error("cannot open series file: " + o.series);
        series = std::make_unique<RecordWriter>(*series_file, fmt, sum_report_columns());
    }
    const SeriesSink sink = [&](const std::vector<Cell>& row) {
        if (series) series->write(row);
    };

    int status = 0;
    for (const auto* c : checks) {
        const auto v = c->run(cfg, sink);
        writer.write(verdict_row(v));
        if (v.kind == CheckKind::exact && !v.passed()) {
            status = 1;
            for (const auto& what : v.violations) report_violation(v.lemma_id + " " + what);
        }
    }
    out.stream().flush();
    return status;
}

int run_decompose(const Options& o) {
    const auto p = modulus(o);
    const double x = need(o.x, "--x");
    const auto d = decompose(p, x, o.z.value_or(std::pow(x, 1.0 / kE)));
    Output out(o.out);
    RecordWriter writer(out.stream(), parse_format(o.format), decomposition_columns());
    writer.write(decomposition_cells(d, least_nonresidue(p).n_p));
    out.stream().flush();
    if (d.lhs != d.count_form) return report_violation("lhs != count_form at p=" + std::to_string(d.p));
    return 0;
}

int run_audit(const Options& o) {
    if (o.p) {
        const auto a = contradiction_audit(modulus(o), need(o.x, "--x"));
        Output out(o.out);
        RecordWriter writer(out.stream(), parse_format(o.format), audit_columns());
        writer.write(audit_cells(a));
        out.stream().flush();
        return a.bookkeeping_holds ? 0 : report_violation("bookkeeping at p=" + std::to_string(a.p));
    }

    // Sweep: x = p^{1/4+eps}; primes without the hypothesis are skipped.
    const u64 lo = std::max<u64>(3, o.lo.value_or(3));
    const u64 hi = need(o.hi, "--hi or --p");
    if (lo > hi) throw config_error("audit requires --lo <= --hi");
    Output out(o.out);
    RecordWriter writer(out.stream(), parse_format(o.format), audit_columns());
    const double eps = epsilon(o);
    const auto primes = primes_in(lo, hi);
    auto rows = ordered_map<std::optional<AuditReport>>(primes.size(), Workers(o.workers), [&](std::size_t i) {
        const PrimeModulus p(primes[i]);
        const double x = std::pow(static_cast<double>(p.value()), 0.25 + eps);
        if (x < 2.0) return std::optional<AuditReport>{};
        try {
            return std::optional<AuditReport>{contradiction_audit(p, x)};
        } catch (const precondition_error&) {
            return std::optional<AuditReport>{};
        }
    });
    u64 audited = 0;
    std::optional<std::string> violation;
    for (const auto& a : rows) {
        if (!a) continue;
        ++audited;
        writer.write(audit_cells(*a));
        if (!a->bookkeeping_holds && !violation) violation = "bookkeeping at p=" + std::to_string(a->p);
    }
    out.stream().flush();
    std::cerr << "primes=" << primes.size() << " audited=" << audited << " hypothesis_absent=" << primes.size() - audited
              << "\n";
    return violation ? report_violation(*violation) : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Least quadratic nonresidues and character-sum measurements"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "Output file (default stdout)");
        sub->add_option("--format", o.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
        sub->add_option("--workers", o.workers, "Worker threads")->envname("NRLAB_WORKERS")->check(CLI::Range(1u, 1024u));
    };
    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--p", o.p, "Odd prime modulus");
        sub->add_option("--x", o.x, "Cutoff");
        sub->add_option("--z", o.z, "Lower cutoff");
        sub->add_option("--eps", o.eps, "epsilon (default 0.1)");
        sub->add_option("--delta", o.delta, "delta (default eps^2(1+4eps)/(1+5eps))");
        sub->add_option("--N", o.N, "Auxiliary prime (default smallest prime >= x^(1+delta))");
    };
    auto add_range = [&](CLI::App* sub) {
        sub->add_option("--lo", o.lo, "Range start");
        sub->add_option("--hi", o.hi, "Range end");
    };

    auto* scan_cmd = app.add_subcommand("scan", "Least nonresidue for every prime in [lo, hi]");
    add_range(scan_cmd);
    scan_cmd->add_flag("--records-only", o.records_only, "Only rows that raise the running n_p record");
    add_common(scan_cmd);

    auto* sums_cmd = app.add_subcommand("sums", "Character sums at one parameter point");
    add_params(sums_cmd);
    sums_cmd->add_option("--a", o.a, "Twist a");
    sums_cmd->add_option("--b", o.b, "Twist b");
    sums_cmd->add_option("--t", o.t, "Geometric-sum frequency");
    add_common(sums_cmd);

    auto* prime_cmd = app.add_subcommand("prime-sums", "Sums over primes at one parameter point");
    add_params(prime_cmd);
    add_common(prime_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Run lemma verification grids");
    verify_cmd->add_option("--lemma", o.lemmas, "Lemma id (repeatable)");
    verify_cmd->add_flag("--all", o.all, "Run every registered check");
    add_range(verify_cmd);
    verify_cmd->add_option("--eps", o.eps, "epsilon for dossiers (default 0.1)");
    verify_cmd->add_option("--nmax", o.nmax, "Largest auxiliary prime for grids over N");
    verify_cmd->add_option("--samples", o.samples, "Primes per dossier sweep");
    verify_cmd->add_option("--series", o.series, "Write ratio-series rows to this file");
    add_common(verify_cmd);
    std::string lemma_list = "Registered lemma ids:\n";
    for (const auto& c : lemma_checks()) lemma_list += "  " + std::string(c.id) + "  " + std::string(c.description) + "\n";
    verify_cmd->footer(lemma_list);

    auto* decompose_cmd = app.add_subcommand("decompose", "Nonresidue-counting decomposition at (p, x, z)");
    add_params(decompose_cmd);
    add_common(decompose_cmd);

    auto* audit_cmd = app.add_subcommand("audit", "Term-by-term audit at z = x^(1/e)");
    add_params(audit_cmd);
    add_range(audit_cmd);
    add_common(audit_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        if (active == scan_cmd) return run_scan(o);
        if (active == sums_cmd) return run_sums(o);
        if (active == prime_cmd) return run_prime_sums(o);
        if (active == verify_cmd) return run_verify(o);
        if (active == decompose_cmd) return run_decompose(o);
        return run_audit(o);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n\n" << active->help();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n\n" << active->help();
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n\n" << active->help();
    } catch (const exhaustion_error& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
