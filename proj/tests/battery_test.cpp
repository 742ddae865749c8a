#include "ciprng/battery.hpp"

#include <sstream>

#include "ciprng/ci.hpp"
#include "ciprng/logistic.hpp"
#include "ciprng/old_ci.hpp"
#include "ciprng/xorshift.hpp"
#include "gtest/gtest.h"

using ciprng::bit_sequence;
using ciprng::bit_state;
using ciprng::collect_bits;
using ciprng::run_battery;
using ciprng::seed_ci_generator;
using ciprng::variance_ratio;

TEST(Battery, FiveTestsInTableOrder) {
    auto gen = seed_ci_generator(bit_state(0xCAFEBABEu, 32), 2718u, 3141u);
    const auto bits = collect_bits(gen, 200000);
    const auto reports = run_battery(bits);
    ASSERT_EQ(reports.size(), 5u);
    EXPECT_EQ(reports[0].name, "monobit");
    EXPECT_EQ(reports[1].name, "serial");
    EXPECT_EQ(reports[2].name, "poker");
    EXPECT_EQ(reports[3].name, "runs");
    EXPECT_EQ(reports[4].name, "autocorrelation");
    for (const auto& r : reports)
        EXPECT_TRUE(r.pass) << r.name << " p=" << r.p_value;
}

TEST(Battery, AllZeroStreamFailsHard) {
    const bit_sequence zeros(20000, 0);
    const auto reports = run_battery(zeros);
    EXPECT_FALSE(reports[0].pass);
    EXPECT_LT(reports[0].p_value, 1e-10);
}

TEST(Battery, VarianceRatioEdgeCases) {
    auto gen_a = seed_ci_generator(bit_state(7u, 16), 11u, 22u);
    auto gen_b = seed_ci_generator(bit_state(7u, 16), 11u, 22u);
    EXPECT_DOUBLE_EQ(ciprng::key_sensitivity(gen_a, gen_b, 10000), 0.0);

    bit_sequence s(1000, 0);
    bit_sequence t(1000, 1);
    EXPECT_DOUBLE_EQ(variance_ratio(s, t), 1.0);
    EXPECT_THROW(variance_ratio({}, {}), std::invalid_argument);
}

TEST(Battery, OneBitSeedFlipDecorrelates) {
    auto gen_a = seed_ci_generator(bit_state(7u, 32), 0x1234u, 0x9876u);
    auto gen_b = seed_ci_generator(bit_state(7u, 32), 0x1234u ^ 1u, 0x9876u);
    const double p = ciprng::key_sensitivity(gen_a, gen_b, 200000);
    EXPECT_GE(p, 0.48);
    EXPECT_LE(p, 0.52);
}

TEST(Battery, ComparisonRowsAndCsvShape) {
    std::vector<ciprng::generator_spec> specs = {
        {"xorshift",
         [](bit_sequence& out, std::size_t n) {
             ciprng::xorshift32 g(42u);
             out.clear();
             ciprng::append_bits(g, out, n);
         }},
        {"new-ci",
         [](bit_sequence& out, std::size_t n) {
             auto g = seed_ci_generator(bit_state(5u, 32), 42u, 43u);
             out.clear();
             ciprng::append_bits(g, out, n);
         }},
    };
    const auto rows = ciprng::compare_generators(specs, 20000, {}, 3);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].name, "xorshift");
    EXPECT_GT(rows[0].time_s, 0.0);
    EXPECT_GT(rows[1].time_s, 0.0);

    std::ostringstream os;
    ciprng::write_comparison_csv(os, rows);
    const auto text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')),
              "method,monobit,serial,poker,runs,autocorrelation,time_s");
}

TEST(Battery, ReportTableMentionsEveryTest) {
    auto gen = seed_ci_generator(bit_state(1u, 16), 5u, 6u);
    const auto reports = run_battery(collect_bits(gen, 20000));
    std::ostringstream os;
    ciprng::write_reports_table(os, reports);
    const auto text = os.str();
    for (const char* name : {"monobit", "serial", "poker", "runs", "autocorrelation"})
        EXPECT_NE(text.find(name), std::string::npos) << name;
}
