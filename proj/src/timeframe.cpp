#include "stockdata/timeframe.hpp"

#include "stockdata/errors.hpp"

#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>

namespace stockdata {

namespace {

struct TokenEntry {
    Interval interval;
    std::string_view token;
};

constexpr std::array<TokenEntry, 13> kTokens{{
    {Interval::Min1, "1m"},
    {Interval::Min2, "2m"},
    {Interval::Min5, "5m"},
    {Interval::Min15, "15m"},
    {Interval::Min30, "30m"},
    {Interval::Min60, "60m"},
    {Interval::Min90, "90m"},
    {Interval::Hour1, "1h"},
    {Interval::Day1, "1d"},
    {Interval::Day5, "5d"},
    {Interval::Week1, "1wk"},
    {Interval::Month1, "1mo"},
    {Interval::Month3, "3mo"},
}};

bool all_digits(std::string_view s) {
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return !s.empty();
}

}  // namespace

std::string_view to_token(Interval interval) {
    for (const auto& entry : kTokens) {
        if (entry.interval == interval) {
            return entry.token;
        }
    }
    return "1d";
}

Interval parse_interval(std::string_view text) {
    for (const auto& entry : kTokens) {
        if (entry.token == text) {
            return entry.interval;
        }
    }
    throw UnknownInterval("unknown interval token: \"" + std::string(text) + "\"");
}

CivilDate parse_civil_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw BadDateFormat("expected yyyy-mm-dd, got \"" + std::string(text) + "\"");
    }
    const auto y = text.substr(0, 4);
    const auto m = text.substr(5, 2);
    const auto d = text.substr(8, 2);
    if (!all_digits(y) || !all_digits(m) || !all_digits(d)) {
        throw BadDateFormat("expected yyyy-mm-dd, got \"" + std::string(text) + "\"");
    }
    CivilDate date;
    date.year = (y[0] - '0') * 1000 + (y[1] - '0') * 100 + (y[2] - '0') * 10 + (y[3] - '0');
    date.month = (m[0] - '0') * 10 + (m[1] - '0');
    date.day = (d[0] - '0') * 10 + (d[1] - '0');
    if (!is_valid_date(date)) {
        throw InvalidCalendarDate("no such calendar date: \"" + std::string(text) + "\"");
    }
    return date;
}

std::string to_string(CivilDate date) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", date.year, date.month, date.day);
    return buf;
}

bool is_valid_date(CivilDate date) {
    namespace chr = std::chrono;
    const chr::year_month_day ymd{chr::year{date.year},
                                  chr::month{static_cast<unsigned>(date.month)},
                                  chr::day{static_cast<unsigned>(date.day)}};
    return ymd.ok();
}

std::int64_t to_epoch_seconds(CivilDate date, int hour, int minute, int second) {
    namespace chr = std::chrono;
    const chr::year_month_day ymd{chr::year{date.year},
                                  chr::month{static_cast<unsigned>(date.month)},
                                  chr::day{static_cast<unsigned>(date.day)}};
    const auto days = static_cast<chr::sys_days>(ymd).time_since_epoch().count();
    return static_cast<std::int64_t>(days) * 86400 + hour * 3600 + minute * 60 + second;
}

DateRange make_range(CivilDate start, CivilDate end) {
    if (start > end) {
        throw EmptyRange("start date " + to_string(start) + " is after end date " +
                         to_string(end));
    }
    DateRange range;
    range.start = start;
    range.end = end;
    range.period1 = to_epoch_seconds(start, 0, 0, 0);
    range.period2 = to_epoch_seconds(end, 23, 59, 0);
    return range;
}

}  // namespace stockdata
