// End-to-end acceptance checks. Each test covers one criterion and prints
// a single PASS/FAIL line; the e2e criteria drive the installed CLI binary
// through replayed HTTP fixtures.

#include "stockdata/client.hpp"
#include "stockdata/errors.hpp"
#include "stockdata/registry.hpp"
#include "stockdata/runner.hpp"
#include "stockdata/sink.hpp"
#include "stockdata/symbols.hpp"
#include "stockdata/timeframe.hpp"
#include "stockdata/transport.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace stockdata;
using testsupport::CommandResult;
using testsupport::TempDir;
namespace oracle = testsupport::oracle;

namespace {

// Prints the verdict even when an assertion returns from the test early.
class Reporter {
public:
    Reporter(int number, const char* description) : number_(number), description_(description) {}
    ~Reporter() {
        std::printf("CRITERION %2d [%s] %s\n", number_,
                    ::testing::Test::HasFailure() ? "FAIL" : "PASS", description_);
        std::fflush(stdout);
    }

private:
    int number_;
    const char* description_;
};

std::string quotes_replay() {
    return "replay:" + (testsupport::fixtures_dir() / "quotes").string();
}

// The high rate limit keeps replay runs free of throttle sleeps; pacing is
// covered separately against a fake clock.
std::string base_cli_args(const std::string& out_dir) {
    return "--symbols AAPL,MSFT,NVDA,QQQQ,YYYY --start 2020-01-02 --end 2020-01-10 "
           "--rate-limit 1000 --transport " +
           quotes_replay() + " --out " + out_dir;
}

bool contains(const std::vector<Ticker>& tickers, const std::string& symbol) {
    return std::any_of(tickers.begin(), tickers.end(),
                       [&](const Ticker& t) { return t.symbol() == symbol; });
}

nlohmann::json summary_without_timestamp(const std::filesystem::path& out_dir) {
    auto doc = nlohmann::json::parse(testsupport::slurp(out_dir / "_summary.json"));
    doc.erase("generated_at");
    return doc;
}

}  // namespace

TEST(Acceptance, C01_EpochSecondRangeBounds) {
    Reporter reporter(1, "calendar dates map to the provider's epoch-second query bounds");

    DateRange known_range = make_range({2018, 1, 1}, {2020, 12, 31});
    EXPECT_EQ(known_range.period1, 1514764800);
    EXPECT_EQ(known_range.period2, 1609459140);
    EXPECT_EQ(make_range({2018, 1, 1}, {2022, 12, 31}).period2, 1672531140);

    for (int year = 1971; year <= 2035; year += 3) {
        for (int month : {1, 2, 6, 12}) {
            int day = oracle::days_in_month(year, month);
            DateRange range = make_range({year, month, 1}, {year, month, day});
            EXPECT_EQ(range.period1, oracle::epoch_seconds(year, month, 1, 0, 0, 0));
            EXPECT_EQ(range.period2, oracle::epoch_seconds(year, month, day, 23, 59, 0));
        }
    }
}

TEST(Acceptance, C02_DownloadUrlShape) {
    Reporter reporter(2, "download URLs match the v7 endpoint byte for byte");

    QuoteRequest request{.ticker = normalize_symbol("AAPL"),
                         .range = make_range({2018, 1, 1}, {2020, 12, 31}),
                         .interval = Interval::Day1};
    EXPECT_EQ(build_download_url("https://query1.finance.yahoo.com", request),
              "https://query1.finance.yahoo.com/v7/finance/download/AAPL"
              "?period1=1514764800&period2=1609459140&interval=1d"
              "&events=history&includeAdjustedClose=true");

    request.ticker = normalize_symbol("BRK.B");
    EXPECT_EQ(build_download_url("https://query1.finance.yahoo.com", request),
              "https://query1.finance.yahoo.com/v7/finance/download/BRK-B"
              "?period1=1514764800&period2=1609459140&interval=1d"
              "&events=history&includeAdjustedClose=true");
}

TEST(Acceptance, C03_ListingPageConstituents) {
    Reporter reporter(3, "listing pages yield full constituent lists with class shares normalized");

    ReplayTransport sp500(testsupport::fixtures_dir() / "sp500");
    ConstituentList sp = load_constituents("sp500", builtin_sources().at("sp500"), sp500);
    EXPECT_EQ(sp.tickers.size(), 503u);
    EXPECT_TRUE(contains(sp.tickers, "BRK-B"));
    EXPECT_TRUE(contains(sp.tickers, "BF-B"));
    EXPECT_FALSE(contains(sp.tickers, "BRK.B"));
    EXPECT_FALSE(contains(sp.tickers, "BF.B"));

    ReplayTransport nasdaq(testsupport::fixtures_dir() / "nasdaq100");
    ConstituentList n100 =
        load_constituents("nasdaq100", builtin_sources().at("nasdaq100"), nasdaq);
    EXPECT_EQ(n100.tickers.size(), 101u);
    EXPECT_TRUE(contains(n100.tickers, "AAPL"));
}

TEST(Acceptance, C04_RegistryCsvConstituents) {
    Reporter reporter(4, "the CSV symbol registry yields the full exchange listing");

    ReplayTransport transport(testsupport::fixtures_dir() / "nasdaq_all");
    ConstituentList list =
        load_constituents("nasdaq-all", builtin_sources().at("nasdaq-all"), transport);
    EXPECT_EQ(list.tickers.size(), 2967u);
}

TEST(Acceptance, C05_AdjustedCloseSubstitution) {
    Reporter reporter(5, "the adjusted close replaces the raw close in the output layout");

    ReplayTransport transport(testsupport::fixtures_dir() / "quotes");
    QuoteClient client(transport);
    auto body = client.fetch_history_csv({.ticker = normalize_symbol("AAPL"),
                                          .range = make_range({2020, 1, 2}, {2020, 1, 10}),
                                          .interval = Interval::Day1});
    ASSERT_TRUE(body.has_value());

    CsvTable raw = parse_quote_csv(*body);
    auto adj_index = raw.column_index("Adj Close");
    ASSERT_TRUE(adj_index.has_value());

    CsvTable table = substitute_adjusted_close(raw);
    EXPECT_EQ(table.header,
              (std::vector<std::string>{"Date", "Open", "High", "Low", "Close", "Volume"}));
    auto close_index = table.column_index("Close");
    ASSERT_TRUE(close_index.has_value());
    ASSERT_EQ(table.rows.size(), raw.rows.size());
    for (size_t i = 0; i < table.rows.size(); ++i) {
        EXPECT_EQ(table.rows[i][*close_index], raw.rows[i][*adj_index]);
    }

    BarSeries series = to_bar_series(normalize_symbol("AAPL"), table);
    ASSERT_FALSE(series.bars.empty());
    EXPECT_EQ(series.bars[0].close_text, round_half_even("73.449394", 2));
}

TEST(Acceptance, C06_HalfEvenRounding) {
    Reporter reporter(6, "price rounding is decimal half-even and idempotent");

    EXPECT_EQ(round_half_even("2.675", 2), "2.68");
    EXPECT_EQ(round_half_even("2.665", 2), "2.66");
    EXPECT_EQ(round_half_even("74.125", 2), "74.12");

    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> digit(0, 9);
    std::uniform_int_distribution<int> frac_len(0, 7);
    for (int i = 0; i < 5000; ++i) {
        std::string token = std::to_string(digit(rng)) + std::to_string(digit(rng)) + ".";
        int flen = frac_len(rng);
        for (int k = 0; k < flen; ++k) token += static_cast<char>('0' + digit(rng));
        if (token.back() == '.') token += '0';
        for (int places : {0, 2, 4}) {
            std::string got = round_half_even(token, places);
            EXPECT_EQ(got, oracle::round_half_even(token, places)) << token << " @ " << places;
            EXPECT_EQ(round_half_even(got, places), got) << token << " @ " << places;
        }
    }
}

TEST(Acceptance, C07_EndToEndReplayRun) {
    Reporter reporter(7, "a full replay run writes per-ticker CSVs, skip lines and the summary");

    TempDir root("acceptance");
    auto out_dir = (root.path() / "out").string();
    CommandResult result = testsupport::run_cli(base_cli_args(out_dir));

    EXPECT_EQ(result.exit_code, 0);
    EXPECT_TRUE(std::filesystem::exists(root.path() / "out" / "AAPL.csv"));
    EXPECT_TRUE(std::filesystem::exists(root.path() / "out" / "MSFT.csv"));
    EXPECT_TRUE(std::filesystem::exists(root.path() / "out" / "NVDA.csv"));
    EXPECT_FALSE(std::filesystem::exists(root.path() / "out" / "QQQQ.csv"));
    EXPECT_FALSE(std::filesystem::exists(root.path() / "out" / "YYYY.csv"));

    EXPECT_NE(result.out.find("QQQQ didn't exist in this entire time period."),
              std::string::npos);
    EXPECT_NE(result.out.find("YYYY didn't exist in this entire time period."),
              std::string::npos);
    EXPECT_NE(result.out.find("Total no. of companies whose data has been collected: 3"),
              std::string::npos);

    EXPECT_EQ(testsupport::slurp(root.path() / "out" / "AAPL.csv"),
              "Date,Open,High,Low,Close,Volume,Name\n"
              "2020-01-02,74.06,75.15,73.80,73.45,135480400,AAPL\n"
              "2020-01-03,74.29,75.14,74.12,72.74,146322800,AAPL\n"
              "2020-01-06,73.45,74.99,73.19,73.31,118387200,AAPL\n"
              "2020-01-08,74.29,76.11,74.29,74.14,132079200,AAPL\n"
              "2020-01-09,76.81,77.61,76.55,75.72,170108400,AAPL\n"
              "2020-01-10,77.65,78.17,77.06,75.89,140644800,AAPL\n");

    auto doc = nlohmann::json::parse(testsupport::slurp(root.path() / "out" / "_summary.json"));
    EXPECT_EQ(doc["counts"]["collected"], 3);
    EXPECT_EQ(doc["counts"]["ignored"], 2);
    EXPECT_EQ(doc["counts"]["failed"], 0);
    EXPECT_EQ(doc["tickers"]["AAPL"]["rows"], 6);
    EXPECT_EQ(doc["tickers"]["QQQQ"]["status"], "ignored");
}

TEST(Acceptance, C08_ConcurrencyDeterminism) {
    Reporter reporter(8, "serial and concurrent runs produce identical bytes");

    TempDir root("acceptance");
    auto serial_dir = root.path() / "serial";
    auto parallel_dir = root.path() / "parallel";

    CommandResult serial =
        testsupport::run_cli(base_cli_args(serial_dir.string()) + " --concurrency 1 --quiet");
    CommandResult parallel =
        testsupport::run_cli(base_cli_args(parallel_dir.string()) + " --concurrency 8 --quiet");
    EXPECT_EQ(serial.exit_code, 0);
    EXPECT_EQ(parallel.exit_code, 0);

    for (const char* name : {"AAPL.csv", "MSFT.csv", "NVDA.csv"}) {
        EXPECT_EQ(testsupport::slurp(serial_dir / name), testsupport::slurp(parallel_dir / name))
            << name;
        EXPECT_FALSE(testsupport::slurp(serial_dir / name).empty()) << name;
    }
    EXPECT_EQ(summary_without_timestamp(serial_dir), summary_without_timestamp(parallel_dir));
}

TEST(Acceptance, C09_PersistentServerErrors) {
    Reporter reporter(9, "a ticker that keeps failing is reported without sinking the run");

    TempDir root("acceptance");
    auto out_dir = root.path() / "out";
    std::string args = "--symbols AAPL,ERRT --start 2020-01-02 --end 2020-01-10 "
                       "--rate-limit 1000 --transport replay:" +
                       (testsupport::fixtures_dir() / "quotes_err").string() + " --out " +
                       out_dir.string();
    CommandResult result = testsupport::run_cli(args);

    EXPECT_EQ(result.exit_code, 2);
    EXPECT_TRUE(std::filesystem::exists(out_dir / "AAPL.csv"));
    EXPECT_FALSE(std::filesystem::exists(out_dir / "ERRT.csv"));
    EXPECT_NE(result.err.find("ERRT"), std::string::npos);

    auto doc = nlohmann::json::parse(testsupport::slurp(out_dir / "_summary.json"));
    EXPECT_EQ(doc["counts"]["collected"], 1);
    EXPECT_EQ(doc["counts"]["failed"], 1);
    std::string reason = doc["tickers"]["ERRT"]["reason"];
    EXPECT_NE(reason.find("4 attempts"), std::string::npos) << reason;
}

TEST(Acceptance, C10_OutputDirectorySafety) {
    Reporter reporter(10, "an occupied output directory is refused unless overwrite is asked");

    TempDir root("acceptance");
    auto out_dir = (root.path() / "out").string();

    EXPECT_EQ(testsupport::run_cli(base_cli_args(out_dir) + " --quiet").exit_code, 0);

    CommandResult refused = testsupport::run_cli(base_cli_args(out_dir) + " --quiet");
    EXPECT_EQ(refused.exit_code, 1);
    EXPECT_NE(refused.err.find("--overwrite"), std::string::npos);

    CommandResult replaced =
        testsupport::run_cli(base_cli_args(out_dir) + " --quiet --overwrite");
    EXPECT_EQ(replaced.exit_code, 0);
    EXPECT_TRUE(std::filesystem::exists(root.path() / "out" / "AAPL.csv"));
}
