#include "stockdata/csv.hpp"

#include "stockdata/errors.hpp"

#include <gtest/gtest.h>

using namespace stockdata;

TEST(ParseCsv, HeaderAndRows) {
    CsvTable table = parse_csv("A,B,C\n1,2,3\n4,5,6\n");
    EXPECT_EQ(table.header, (std::vector<std::string>{"A", "B", "C"}));
    ASSERT_EQ(table.rows.size(), 2u);
    EXPECT_EQ(table.rows[0], (std::vector<std::string>{"1", "2", "3"}));
    EXPECT_EQ(table.rows[1], (std::vector<std::string>{"4", "5", "6"}));
    EXPECT_EQ(table.skipped_rows, 0u);
}

TEST(ParseCsv, MissingFinalNewline) {
    CsvTable table = parse_csv("A,B\n1,2");
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_EQ(table.rows[0][1], "2");
}

TEST(ParseCsv, QuotedFields) {
    CsvTable table = parse_csv(
        "Symbol,Company Name\n"
        "AAPL,\"Apple, Inc.\"\n"
        "X,\"He said \"\"hi\"\"\"\n"
        "Y,\"multi\nline\"\n");
    ASSERT_EQ(table.rows.size(), 3u);
    EXPECT_EQ(table.rows[0][1], "Apple, Inc.");
    EXPECT_EQ(table.rows[1][1], "He said \"hi\"");
    EXPECT_EQ(table.rows[2][1], "multi\nline");
}

TEST(ParseCsv, CrLfLineEndings) {
    CsvTable table = parse_csv("A,B\r\n1,2\r\n");
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_EQ(table.rows[0], (std::vector<std::string>{"1", "2"}));
}

TEST(ParseCsv, BlankLinesAreIgnored) {
    CsvTable table = parse_csv("A,B\n\n1,2\n\n\n3,4\n");
    EXPECT_EQ(table.rows.size(), 2u);
    EXPECT_EQ(table.skipped_rows, 0u);
}

TEST(ParseCsv, MismatchedRowsAreSkippedAndCounted) {
    CsvTable table = parse_csv("A,B\n1,2\nonly-one\n3,4,5\n6,7\n");
    ASSERT_EQ(table.rows.size(), 2u);
    EXPECT_EQ(table.rows[0], (std::vector<std::string>{"1", "2"}));
    EXPECT_EQ(table.rows[1], (std::vector<std::string>{"6", "7"}));
    EXPECT_EQ(table.skipped_rows, 2u);
}

TEST(ParseCsv, StrictModeThrowsOnMismatch) {
    EXPECT_THROW(parse_csv("A,B\n1,2,3\n", {.strict = true}), CsvParseError);
}

TEST(ParseCsv, UnterminatedQuoteThrows) {
    EXPECT_THROW(parse_csv("A,B\n1,\"unterminated\n"), CsvParseError);
}

TEST(ParseCsv, EmptyFieldsSurvive) {
    CsvTable table = parse_csv("A,B,C\n,,\n");
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_EQ(table.rows[0], (std::vector<std::string>{"", "", ""}));
}

TEST(ParseCsv, ColumnIndexLookup) {
    CsvTable table = parse_csv("Date,Adj Close,Volume\n");
    EXPECT_EQ(table.column_index("Adj Close"), std::optional<size_t>(1));
    EXPECT_EQ(table.column_index("Close"), std::nullopt);
}

TEST(CsvEscape, QuotesOnlyWhenNeeded) {
    EXPECT_EQ(csv_escape("plain"), "plain");
    EXPECT_EQ(csv_escape("has,comma"), "\"has,comma\"");
    EXPECT_EQ(csv_escape("has\"quote"), "\"has\"\"quote\"");
    EXPECT_EQ(csv_escape("has\nnewline"), "\"has\nnewline\"");
    EXPECT_EQ(csv_escape(""), "");
}

TEST(CsvEscape, RoundTripsThroughParser) {
    std::string body = "A\n" + csv_escape("x,\"y\"\nz") + "\n";
    CsvTable table = parse_csv(body);
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_EQ(table.rows[0][0], "x,\"y\"\nz");
}
