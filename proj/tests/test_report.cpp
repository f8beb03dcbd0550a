#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "json.hpp"
#include "nrlab/report.hpp"

using namespace nrlab;

namespace {

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST(Format, Parse) {
    EXPECT_EQ(parse_format("csv"), Format::csv);
    EXPECT_EQ(parse_format("jsonl"), Format::jsonl);
    EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(Cells, Formatting) {
    EXPECT_EQ(cell("abc").text, "abc");
    EXPECT_TRUE(cell("abc").quoted);
    EXPECT_EQ(cell(true).text, "true");
    EXPECT_EQ(cell(std::uint64_t{18446744073709551615ULL}).text, "18446744073709551615");
    EXPECT_EQ(cell(std::int64_t{-5}).text, "-5");
    EXPECT_EQ(real_cell(0.1).text, "0.1");
    EXPECT_EQ(real_cell(-0.0).text, "0");
    EXPECT_EQ(real_cell(1.0 / 3.0).text, "0.333333333333333");
    EXPECT_TRUE(real_cell(std::numeric_limits<double>::infinity()).text.empty());
    EXPECT_TRUE(real_cell(std::nan("")).text.empty());
    EXPECT_TRUE(opt_cell(std::optional<double>{}).text.empty());
    EXPECT_EQ(opt_cell(std::optional<std::int64_t>{7}).text, "7");
}

TEST(RecordWriter, CsvHeaderEscapingAndLf) {
    std::ostringstream out;
    RecordWriter w(out, Format::csv, {"a", "b", "c"});
    w.write({cell("x,y"), cell("say \"hi\""), real_cell(std::nan(""))});
    w.write({cell(std::uint64_t{1}), cell(false), real_cell(2.5)});
    EXPECT_EQ(out.str(), "a,b,c\n\"x,y\",\"say \"\"hi\"\"\",\n1,false,2.5\n");
    EXPECT_EQ(w.rows(), 2u);
    EXPECT_THROW(w.write({cell("only one")}), std::logic_error);
}

TEST(RecordWriter, JsonlParsesAndMirrorsCsv) {
    std::ostringstream csv, jsonl;
    const std::vector<std::string> cols{"id", "n", "x", "flag", "missing"};
    RecordWriter wc(csv, Format::csv, cols), wj(jsonl, Format::jsonl, cols);
    const std::vector<std::vector<Cell>> rows{
        {cell("L1\"\\\n\t"), cell(std::uint64_t{3}), real_cell(0.25), cell(true), real_cell(std::nan(""))},
        {cell("plain"), cell(std::int64_t{-4}), real_cell(1e-300), cell(false), opt_cell(std::optional<int>{})},
    };
    for (const auto& r : rows) {
        wc.write(r);
        wj.write(r);
    }
    const auto jl = lines(jsonl.str());
    ASSERT_EQ(jl.size(), rows.size());
    const auto first = nlohmann::json::parse(jl[0]);
    EXPECT_EQ(first["id"], "L1\"\\\n\t");
    EXPECT_EQ(first["n"], 3);
    EXPECT_EQ(first["x"], 0.25);
    EXPECT_EQ(first["flag"], true);
    EXPECT_TRUE(first["missing"].is_null());
    const auto second = nlohmann::json::parse(jl[1]);
    EXPECT_EQ(second["n"], -4);
    EXPECT_DOUBLE_EQ(second["x"].get<double>(), 1e-300);
    // Header, two records, and one physical break inside the quoted field.
    EXPECT_EQ(lines(csv.str()).size(), rows.size() + 2);
}

TEST(Verdict, ObserveKeepsMaximumAndFailuresAreCapped) {
    VerificationVerdict v;
    v.observe(0.5, "a");
    v.observe(0.9, "b");
    v.observe(0.7, "c");
    EXPECT_EQ(v.cases, 3u);
    EXPECT_EQ(v.worst_ratio, 0.9);
    EXPECT_EQ(v.worst_case, "b");
    EXPECT_TRUE(v.passed());
    for (int i = 0; i < 20; ++i) v.fail(std::to_string(i));
    EXPECT_FALSE(v.passed());
    EXPECT_EQ(v.failures, 20u);
    EXPECT_EQ(v.violations.size(), 8u);
    EXPECT_EQ(verdict_row(v).size(), verdict_columns().size());
    EXPECT_EQ(verdict_row(v)[2].text, "fail");
}
