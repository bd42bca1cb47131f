#pragma once

#include "prft/time_series.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace prft::calendar {

/// `t` shifted by `years` calendar years; Feb 29 maps to Feb 28 in common years.
UtcTime add_years(UtcTime t, int years);

/// Calendar year and month (1..12) of a UTC instant.
struct YearMonth {
    int year;
    unsigned month;
};
YearMonth year_month(UtcTime t);

/// Year/month labels of every sample of a series. Requires an anchor.
std::vector<YearMonth> sample_months(const TimeSeries& ts);

/// Parses ISO-8601 (`YYYY-MM-DD`, `YYYY-MM-DDTHH:MM[:SS[.fff]]` with an
/// optional `Z` or `+HH[:MM]` suffix) into seconds since the epoch. When no
/// suffix is present `has_offset` is false and the value is the naive wall
/// time read as UTC.
struct ParsedTimestamp {
    double seconds = 0.0;
    bool has_offset = false;
    int offset_minutes = 0;
};
bool parse_iso8601(std::string_view text, ParsedTimestamp& out);

/// `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_iso8601(UtcTime t);

} // namespace prft::calendar
