#pragma once

#include "stockdata/csv.hpp"
#include "stockdata/rate_limiter.hpp"
#include "stockdata/symbols.hpp"
#include "stockdata/timeframe.hpp"
#include "stockdata/transport.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stockdata {

struct QuoteRequest {
    Ticker ticker;
    DateRange range;
    Interval interval = Interval::Day1;
};

// {base}/v7/finance/download/{symbol}?period1=..&period2=..&interval=..
// &events=history&includeAdjustedClose=true. The symbol is percent-encoded
// as a path segment; the query parameter order is fixed.
std::string build_download_url(const std::string& base_url, const QuoteRequest& request);

// Rounds a decimal token half-to-even at `places` fractional digits. The
// digits are rounded as written; binary representation never enters, so
// "2.675" at two places is "2.68". Idempotent. Throws CsvParseError on
// non-decimal input (exponent forms included).
std::string round_half_even(std::string_view token, int places);

struct RetryPolicy {
    int max_attempts = 4;
    std::chrono::milliseconds initial_backoff{500};
    double multiplier = 2.0;
    std::chrono::milliseconds max_backoff{8000};
};

class QuoteClient {
public:
    struct Options {
        std::string base_url = "https://query1.finance.yahoo.com";
        RetryPolicy retry;
        RateLimiter* limiter = nullptr;  // shared across workers when set
        Clock* clock = nullptr;          // defaults to system_clock()
    };

    explicit QuoteClient(Transport& transport) : QuoteClient(transport, Options{}) {}
    QuoteClient(Transport& transport, Options options);

    // Downloads one ticker's history CSV. Returns nullopt when the provider
    // has no data for the range (404 or a "No data found" body); the caller
    // skips such tickers. 400/403 raise PermanentFetchError immediately.
    // 429, 5xx and transport failures are retried with exponential backoff,
    // honoring Retry-After, until the attempt budget raises RetriesExhausted.
    std::optional<std::string> fetch_history_csv(const QuoteRequest& request);

private:
    Transport& transport_;
    Options options_;
};

// Parses a provider response body and checks the v7 download schema
// (Date, Open, High, Low, Close, Adj Close, Volume). Throws EmptyBody or
// SchemaError.
CsvTable parse_quote_csv(const std::string& body, bool strict = false);

// Replaces the raw close with the adjusted close and drops the extra
// column, yielding the six-column layout every later stage assumes:
// Date, Open, High, Low, Close, Volume.
CsvTable substitute_adjusted_close(const CsvTable& table);

struct Bar {
    CivilDate date;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    std::int64_t volume = 0;
    // Exact tokens destined for the output CSV: the rounded decimals, or
    // the upstream text verbatim when rounding is off.
    std::string open_text;
    std::string high_text;
    std::string low_text;
    std::string close_text;
};

struct BarSeries {
    Ticker ticker;
    std::vector<Bar> bars;
    std::size_t dropped_rows = 0;
    std::vector<std::string> warnings;
};

struct RoundSpec {
    bool enabled = true;
    int places = 2;
};

struct SeriesOptions {
    RoundSpec round;
    bool strict = false;
};

// Converts a substituted six-column table into bars sorted by date.
// Rows with "null" or unparseable cells are dropped and counted. Bars
// whose high/low fail to bound the open are flagged in warnings, and
// additionally dropped in strict mode; the close is exempt because the
// adjusted value may sit outside the day's raw range. Throws DuplicateDate
// when two rows share a date and SchemaError when a column is missing.
BarSeries to_bar_series(const Ticker& ticker, const CsvTable& table,
                        const SeriesOptions& options = {});

}  // namespace stockdata
