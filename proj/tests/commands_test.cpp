#include <gtest/gtest.h>

#include <filesystem>

#include "rootstring/commands.hpp"

using namespace rootstring;

namespace {

cartan_datum sample(const char* name) { return load_cartan(std::filesystem::path(ROOTSTRING_SAMPLES_DIR) / name); }

std::set<std::uint64_t> b_values_of(const json& field_entry) { return field_entry["b_values"].get<std::set<std::uint64_t>>(); }

} // namespace

TEST(CmdBkj, PrimeFieldExample) {
    const auto r = cmd_bkj(sample("f3_swap.yaml"), 1, 2);
    EXPECT_EQ(r.status, exit_code::success);
    EXPECT_EQ(r.report["closed"], 2);
    EXPECT_EQ(r.report["recursive"], 2);
    EXPECT_EQ(r.report["agree"], true);
}

TEST(CmdBkj, CharacteristicZeroInfinity) {
    const auto r = cmd_bkj(sample("q_infinite.yaml"), 1, 2);
    EXPECT_EQ(r.report["closed"], "inf");
    EXPECT_EQ(r.report["recursive"], "inf");
    EXPECT_EQ(r.status, exit_code::success);
}

TEST(CmdBkj, IndexValidation) {
    const auto datum = sample("f3_swap.yaml");
    EXPECT_THROW((void)cmd_bkj(datum, 1, 1), error);
    EXPECT_THROW((void)cmd_bkj(datum, 0, 1), error);
    EXPECT_THROW((void)cmd_bkj(datum, 1, 3), error);
}

TEST(CmdDseq, CharacteristicTwoListing) {
    const auto datum = parse_cartan("characteristic: 2\nmatrix: [[1, 1], [0, 0]]\nparities: [ev, ev]\n");
    const auto r = cmd_dseq(datum, 1, 2, 3);
    EXPECT_EQ(r.report["values"], json::parse("[0, 1, 1, 0, 0]"));
    EXPECT_EQ(r.report["first_index"], -1);
    EXPECT_EQ(r.report["first_zero"], 2);
}

TEST(CmdTable, DiagonalIsNull) {
    const auto r = cmd_table(sample("q_g2.yaml"));
    EXPECT_EQ(r.report["b_table"], json::parse("[[null, 1], [3, null]]"));
}

TEST(CmdReflect, CharacteristicZeroInfiniteB) {
    try {
        (void)cmd_reflect(sample("q_infinite.yaml"), 1);
        FAIL() << "expected reflection-undefined";
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::reflection_undefined);
        EXPECT_EQ(exit_status_for(e.code()), exit_code::reflection_undefined);
        EXPECT_NE(std::string(e.what()).find("B is infinite at j=2"), std::string::npos);
    }
}

TEST(CmdReflect, ReportsDeterminant) {
    const auto r = cmd_reflect(sample("f3_swap.yaml"), 1);
    EXPECT_EQ(r.report["sigma"], json::parse("[[-1, 0], [2, 1]]"));
    EXPECT_EQ(r.report["determinant"], -1);
    EXPECT_EQ(r.report["unimodular"], true);
}

TEST(CmdSelfcheck, PrimeFields) {
    const auto r = cmd_selfcheck({2, 3, 5, 7}, {1});
    EXPECT_EQ(r.status, exit_code::success);
    EXPECT_EQ(r.report["total_cases"], 2 * (4 + 9 + 25 + 49));
    EXPECT_EQ(r.report["total_mismatches"], 0);
    EXPECT_EQ(r.report["ok"], true);
    // F_2 cannot reach B = 3: that needs A_kj outside {0, A_kk}
    EXPECT_EQ(b_values_of(r.report["fields"][0]), (std::set<std::uint64_t>{0, 1, 2}));
}

TEST(CmdSelfcheck, ExtensionFields) {
    const auto r = cmd_selfcheck({3}, {2});
    EXPECT_EQ(r.report["total_cases"], 2 * 81);
    EXPECT_EQ(r.report["fields"][0]["modulus"], json::parse("[1, 0, 1]"));
    EXPECT_EQ(r.report["ok"], true);

    const auto f4 = cmd_selfcheck({2}, {2});
    EXPECT_EQ(f4.report["fields"][0]["modulus"], json::parse("[1, 1, 1]"));
    EXPECT_EQ(b_values_of(f4.report["fields"][0]), (std::set<std::uint64_t>{0, 1, 2, 3}));
}

TEST(CmdSelfcheck, Validation) {
    EXPECT_THROW((void)cmd_selfcheck({4}, {1}), error);
    EXPECT_THROW((void)cmd_selfcheck({3}, {0}), error);
    EXPECT_THROW((void)cmd_selfcheck({3}, {9}), error);
    EXPECT_THROW((void)cmd_selfcheck({11}, {3}), error);
    EXPECT_THROW((void)cmd_selfcheck({}, {1}), error);
}

TEST(CommandResult, TextIsStable) {
    const auto datum = sample("f9_odd.yaml");
    EXPECT_EQ(cmd_table(datum).text(), cmd_table(datum).text());
    EXPECT_EQ(cmd_table(datum).text().back(), '\n');
}
