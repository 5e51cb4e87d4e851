#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace stockdata {

// Bar spacing accepted by the download endpoint. Tokens serialize to the
// exact lowercase strings the endpoint expects ("1m", "1d", "1wk", ...).
enum class Interval {
    Min1,
    Min2,
    Min5,
    Min15,
    Min30,
    Min60,
    Min90,
    Hour1,
    Day1,
    Day5,
    Week1,
    Month1,
    Month3,
};

std::string_view to_token(Interval interval);

// Exact match against the token set, no aliases. Throws UnknownInterval.
Interval parse_interval(std::string_view text);

// A calendar date with no timezone attached.
struct CivilDate {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const CivilDate&) const = default;
};

// Strict "yyyy-mm-dd": exactly 10 characters, zero padded, real calendar
// date. Throws BadDateFormat or InvalidCalendarDate.
CivilDate parse_civil_date(std::string_view text);

std::string to_string(CivilDate date);

bool is_valid_date(CivilDate date);

// Seconds since 1970-01-01T00:00:00Z, computed in UTC on the proleptic
// Gregorian calendar. Leap seconds do not exist here (POSIX epoch).
std::int64_t to_epoch_seconds(CivilDate date, int hour, int minute, int second);

// Half-open query window as the endpoint's period1/period2 parameters.
// period1 is start-of-day on `start`, period2 is 23:59:00 on `end` so the
// end date is inclusive.
struct DateRange {
    CivilDate start;
    CivilDate end;
    std::int64_t period1 = 0;
    std::int64_t period2 = 0;
};

// Throws EmptyRange when start > end.
DateRange make_range(CivilDate start, CivilDate end);

}  // namespace stockdata
