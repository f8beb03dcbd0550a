#pragma once

/// @file report.hpp
/// @brief Flat-file emission (CSV with header row, or JSON lines with the same
/// field names) and the verdict record produced by verification runs.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace nrlab {

enum class Format { csv, jsonl };

inline Format parse_format(std::string_view s) {
    if (s == "csv") return Format::csv;
    if (s == "jsonl") return Format::jsonl;
    throw std::invalid_argument("unknown format: " + std::string(s));
}

/// One formatted field. `quoted` marks strings, which JSON needs to quote.
/// An empty, unquoted cell is written as an empty CSV field / JSON null.
struct Cell {
    std::string text;
    bool quoted = false;
};

inline Cell cell(std::string_view s) { return {std::string(s), true}; }
inline Cell cell(const char* s) { return {std::string(s), true}; }
inline Cell cell(bool b) { return {b ? "true" : "false", false}; }
inline Cell cell(std::uint64_t v) { return {std::to_string(v), false}; }
inline Cell cell(std::int64_t v) { return {std::to_string(v), false}; }
inline Cell cell(int v) { return {std::to_string(v), false}; }
inline Cell cell(unsigned v) { return {std::to_string(v), false}; }

/// Real number with 15 significant digits; non-finite values become null.
inline Cell real_cell(double v) {
    if (!std::isfinite(v)) return {};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v == 0.0 ? 0.0 : v);
    return {buf, false};
}

template <class T>
Cell opt_cell(const std::optional<T>& v) {
    if (!v) return {};
    if constexpr (std::is_floating_point_v<T>) {
        return real_cell(*v);
    } else {
        return cell(*v);
    }
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
            out += buf;
        } else {
            out += c;
        }
    }
    return out;
}

} // namespace detail

class RecordWriter {
public:
    RecordWriter(std::ostream& out, Format format, std::vector<std::string> columns)
        : out_(out), format_(format), columns_(std::move(columns)) {
        if (format_ == Format::csv) {
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                if (i) out_ << ',';
                out_ << columns_[i];
            }
            out_ << '\n';
        }
    }

    void write(const std::vector<Cell>& row) {
        if (row.size() != columns_.size()) {
            throw std::logic_error("row width does not match header");
        }
        if (format_ == Format::csv) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out_ << ',';
                out_ << (row[i].quoted ? detail::csv_escape(row[i].text) : row[i].text);
            }
        } else {
            out_ << '{';
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out_ << ',';
                out_ << '"' << columns_[i] << "\":";
                if (row[i].quoted) {
                    out_ << '"' << detail::json_escape(row[i].text) << '"';
                } else if (row[i].text.empty()) {
                    out_ << "null";
                } else {
                    out_ << row[i].text;
                }
            }
            out_ << '}';
        }
        out_ << '\n';
        ++rows_;
    }

    std::size_t rows() const { return rows_; }

private:
    std::ostream& out_;
    Format format_;
    std::vector<std::string> columns_;
    std::size_t rows_ = 0;
};

// =============================================================================
// Verification verdicts
// =============================================================================

/// How a verdict may be used: exact identities gate exit codes; tolerance
/// checks carry a pass/fail that is reported only; ratio series are data.
enum class CheckKind { exact, tolerance, ratio };

inline std::string_view to_string(CheckKind k) {
    switch (k) {
    case CheckKind::exact: return "exact";
    case CheckKind::tolerance: return "tolerance";
    default: return "ratio";
    }
}

struct VerificationVerdict {
    std::string lemma_id;
    std::string grid;
    CheckKind kind = CheckKind::exact;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    double worst_ratio = 0.0;
    std::string worst_case;
    std::vector<std::string> violations;  // first few, for diagnostics

    bool passed() const { return failures == 0; }

    /// Records one case; keeps the largest ratio seen.
    void observe(double ratio, const std::string& where) {
        ++cases;
        if (cases == 1 || ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_case = where;
        }
    }

    void fail(const std::string& what) {
        ++failures;
        if (violations.size() < 8) violations.push_back(what);
    }
};

inline const std::vector<std::string>& verdict_columns() {
    static const std::vector<std::string> cols{"lemma_id", "kind",       "status",     "cases",
                                               "failures", "worst_ratio", "worst_case", "grid"};
    return cols;
}

inline std::vector<Cell> verdict_row(const VerificationVerdict& v) {
    return {cell(v.lemma_id),
            cell(to_string(v.kind)),
            cell(v.passed() ? std::string_view("pass") : std::string_view("fail")),
            cell(v.cases),
            cell(v.failures),
            real_cell(v.worst_ratio),
            cell(v.worst_case),
            cell(v.grid)};
}

} // namespace nrlab
