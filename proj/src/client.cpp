#include "stockdata/client.hpp"

#include "stockdata/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>

namespace stockdata {

namespace {

std::string encode_path_segment(std::string_view s) {
    static const char hex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        }
    }
    return out;
}

}  // namespace

std::string build_download_url(const std::string& base_url, const QuoteRequest& request) {
    std::string base = base_url;
    while (!base.empty() && base.back() == '/') base.pop_back();
    std::string url = base + "/v7/finance/download/" + encode_path_segment(request.ticker.symbol());
    url += "?period1=" + std::to_string(request.range.period1);
    url += "&period2=" + std::to_string(request.range.period2);
    url += "&interval=";
    url += to_token(request.interval);
    url += "&events=history&includeAdjustedClose=true";
    return url;
}

std::string round_half_even(std::string_view token, int places) {
    if (places < 0) throw UsageError("rounding places must be non-negative");

    std::string_view s = token;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto dot = s.find('.');
    std::string_view int_part = dot == std::string_view::npos ? s : s.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view() : s.substr(dot + 1);

    auto all_digits = [](std::string_view v) {
        return std::all_of(v.begin(), v.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if ((int_part.empty() && frac_part.empty()) || !all_digits(int_part) || !all_digits(frac_part)) {
        throw CsvParseError("not a plain decimal: '" + std::string(token) + "'");
    }

    std::string digits(int_part);
    std::string frac(frac_part);

    bool round_up = false;
    if (frac.size() > static_cast<size_t>(places)) {
        char first_dropped = frac[static_cast<size_t>(places)];
        bool rest_nonzero = frac.find_first_not_of('0', static_cast<size_t>(places) + 1) !=
                            std::string::npos;
        std::string kept = frac.substr(0, static_cast<size_t>(places));
        char last_kept = !kept.empty() ? kept.back() : (!digits.empty() ? digits.back() : '0');
        if (first_dropped > '5' || (first_dropped == '5' && rest_nonzero)) {
            round_up = true;
        } else if (first_dropped == '5' && !rest_nonzero) {
            round_up = (last_kept - '0') % 2 != 0;
        }
        frac = std::move(kept);
    }
    frac.resize(static_cast<size_t>(places), '0');

    if (round_up) {
        std::string combined = digits + frac;
        size_t i = combined.size();
        while (i > 0 && combined[i - 1] == '9') combined[--i] = '0';
        if (i == 0) {
            combined.insert(combined.begin(), '1');
        } else {
            ++combined[i - 1];
        }
        digits = combined.substr(0, combined.size() - static_cast<size_t>(places));
        frac = combined.substr(combined.size() - static_cast<size_t>(places));
    }

    size_t first = digits.find_first_not_of('0');
    digits = first == std::string::npos ? "0" : digits.substr(first);

    bool zero = digits == "0" && frac.find_first_not_of('0') == std::string::npos;
    std::string out;
    if (negative && !zero) out.push_back('-');
    out += digits;
    if (places > 0) {
        out.push_back('.');
        out += frac;
    }
    return out;
}

QuoteClient::QuoteClient(Transport& transport, Options options)
    : transport_(transport), options_(std::move(options)) {
    if (options_.retry.max_attempts < 1) throw UsageError("retry budget must be at least 1");
}

std::optional<std::string> QuoteClient::fetch_history_csv(const QuoteRequest& request) {
    const std::string url = build_download_url(options_.base_url, request);
    Clock& clock = options_.clock ? *options_.clock : system_clock();
    const RetryPolicy& retry = options_.retry;

    auto backoff = retry.initial_backoff;
    std::string last_error;
    for (int attempt = 1; attempt <= retry.max_attempts; ++attempt) {
        std::optional<std::chrono::milliseconds> wait;
        try {
            if (options_.limiter) options_.limiter->acquire();
            HttpResponse response = transport_.execute({.url = url});
            if (response.status == 200) return std::move(response.body);
            if (response.status == 404 ||
                response.body.find("No data found") != std::string::npos) {
                return std::nullopt;
            }
            if (response.status == 400 || response.status == 403) {
                throw PermanentFetchError("GET " + url + " returned status " +
                                          std::to_string(response.status));
            }
            if (response.status == 429 || response.status >= 500) {
                last_error = "status " + std::to_string(response.status);
                wait = backoff;
                if (auto it = response.headers.find("Retry-After"); it != response.headers.end()) {
                    errno = 0;
                    char* end = nullptr;
                    long seconds = std::strtol(it->second.c_str(), &end, 10);
                    if (errno == 0 && end != it->second.c_str() && *end == '\0' && seconds >= 0) {
                        wait = std::chrono::seconds(seconds);
                    }
                }
            } else {
                throw PermanentFetchError("GET " + url + " returned unexpected status " +
                                          std::to_string(response.status));
            }
        } catch (const TransportError& e) {
            last_error = e.what();
            wait = backoff;
        }
        if (attempt == retry.max_attempts) break;
        clock.sleep_for(*wait);
        backoff = std::min(
            std::chrono::milliseconds(
                static_cast<std::int64_t>(static_cast<double>(backoff.count()) * retry.multiplier)),
            retry.max_backoff);
    }
    throw RetriesExhausted("GET " + url + " failed after " +
                           std::to_string(retry.max_attempts) + " attempts (" + last_error + ")");
}

namespace {

const std::array<const char*, 7> kQuoteColumns = {"Date",  "Open",      "High",  "Low",
                                                  "Close", "Adj Close", "Volume"};

}  // namespace

CsvTable parse_quote_csv(const std::string& body, bool strict) {
    if (body.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw EmptyBody("quote response body is empty");
    }
    CsvTable table = parse_csv(body, {.strict = strict});
    for (const char* column : kQuoteColumns) {
        if (!table.column_index(column)) {
            throw SchemaError(std::string("quote CSV missing column '") + column + "'");
        }
    }
    return table;
}

CsvTable substitute_adjusted_close(const CsvTable& table) {
    std::array<size_t, 7> idx{};
    for (size_t i = 0; i < kQuoteColumns.size(); ++i) {
        auto found = table.column_index(kQuoteColumns[i]);
        if (!found) {
            throw SchemaError(std::string("quote CSV missing column '") + kQuoteColumns[i] + "'");
        }
        idx[i] = *found;
    }

    CsvTable out;
    out.header = {"Date", "Open", "High", "Low", "Close", "Volume"};
    out.skipped_rows = table.skipped_rows;
    out.rows.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        // idx[5] is Adj Close; it stands in for the raw close from here on.
        out.rows.push_back({row[idx[0]], row[idx[1]], row[idx[2]], row[idx[3]], row[idx[5]],
                            row[idx[6]]});
    }
    return out;
}

namespace {

bool parse_price(const std::string& cell, const RoundSpec& round, double& value,
                 std::string& text) {
    if (cell.empty() || cell == "null") return false;
    errno = 0;
    char* end = nullptr;
    double parsed = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || !std::isfinite(parsed)) return false;
    if (round.enabled) {
        try {
            text = round_half_even(cell, round.places);
        } catch (const CsvParseError&) {
            return false;
        }
        value = std::strtod(text.c_str(), nullptr);
    } else {
        text = cell;
        value = parsed;
    }
    return true;
}

bool parse_volume(const std::string& cell, std::int64_t& value) {
    if (cell.empty() || cell == "null") return false;
    errno = 0;
    char* end = nullptr;
    long long integral = std::strtoll(cell.c_str(), &end, 10);
    if (errno == 0 && end == cell.c_str() + cell.size()) {
        value = integral;
        return true;
    }
    errno = 0;
    double parsed = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || !std::isfinite(parsed)) return false;
    value = static_cast<std::int64_t>(std::floor(parsed));
    return true;
}

}  // namespace

BarSeries to_bar_series(const Ticker& ticker, const CsvTable& table,
                        const SeriesOptions& options) {
    std::array<size_t, 6> idx{};
    const std::array<const char*, 6> columns = {"Date", "Open", "High",
                                                "Low",  "Close", "Volume"};
    for (size_t i = 0; i < columns.size(); ++i) {
        auto found = table.column_index(columns[i]);
        if (!found) {
            throw SchemaError(std::string("bar table missing column '") + columns[i] + "'");
        }
        idx[i] = *found;
    }

    BarSeries series;
    series.ticker = ticker;
    series.bars.reserve(table.rows.size());

    for (const auto& row : table.rows) {
        Bar bar;
        try {
            bar.date = parse_civil_date(row[idx[0]]);
        } catch (const Error&) {
            ++series.dropped_rows;
            continue;
        }
        if (!parse_price(row[idx[1]], options.round, bar.open, bar.open_text) ||
            !parse_price(row[idx[2]], options.round, bar.high, bar.high_text) ||
            !parse_price(row[idx[3]], options.round, bar.low, bar.low_text) ||
            !parse_price(row[idx[4]], options.round, bar.close, bar.close_text) ||
            !parse_volume(row[idx[5]], bar.volume)) {
            ++series.dropped_rows;
            continue;
        }

        // The close is an adjusted value and may legitimately sit outside
        // the day's raw range, so only the open is checked against it.
        if (bar.low > bar.high || bar.low > bar.open || bar.high < bar.open) {
            series.warnings.push_back(ticker.symbol() + " " + to_string(bar.date) +
                                      ": OHLC bounds violated (open=" + bar.open_text +
                                      " high=" + bar.high_text + " low=" + bar.low_text +
                                      " close=" + bar.close_text + ")");
            if (options.strict) {
                ++series.dropped_rows;
                continue;
            }
        }
        series.bars.push_back(std::move(bar));
    }

    std::sort(series.bars.begin(), series.bars.end(),
              [](const Bar& a, const Bar& b) { return a.date < b.date; });
    for (size_t i = 1; i < series.bars.size(); ++i) {
        if (series.bars[i].date == series.bars[i - 1].date) {
            throw DuplicateDate(ticker.symbol() + ": duplicate date " +
                                to_string(series.bars[i].date));
        }
    }
    return series;
}

}  // namespace stockdata
