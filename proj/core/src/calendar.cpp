#include "prft/calendar.hpp"

#include "prft/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace prft::calendar {

using namespace std::chrono;

UtcTime add_years(UtcTime t, int years) {
    const auto day = floor<days>(t);
    const auto tod = t - day;
    year_month_day ymd{day};
    year_month_day shifted = ymd + std::chrono::years{years};
    if (!shifted.ok()) shifted = shifted.year() / shifted.month() / last;
    return sys_days{shifted} + tod;
}

YearMonth year_month(UtcTime t) {
    const year_month_day ymd{floor<days>(t)};
    return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month())};
}

std::vector<YearMonth> sample_months(const TimeSeries& ts) {
    if (!ts.start) throw ContractViolation("series has no calendar anchor");
    std::vector<YearMonth> out;
    out.reserve(ts.size());
    const double t0 = static_cast<double>(ts.start->time_since_epoch().count());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = t0 + static_cast<double>(i) * ts.dt;
        out.push_back(year_month(UtcTime{seconds{static_cast<long long>(std::floor(t))}}));
    }
    return out;
}

namespace {

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    for (std::size_t i = pos; i < pos + len; ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    auto [p, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
    return ec == std::errc{} && p == s.data() + pos + len;
}

} // namespace

bool parse_iso8601(std::string_view s, ParsedTimestamp& out) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    if (!read_int(s, 0, 4, y) || s.size() < 10 || s[4] != '-' || !read_int(s, 5, 2, mo) || s[7] != '-' ||
        !read_int(s, 8, 2, d))
        return false;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return false;

    std::size_t pos = 10;
    double frac = 0.0;
    if (pos < s.size() && (s[pos] == 'T' || s[pos] == ' ')) {
        if (!read_int(s, pos + 1, 2, h) || pos + 3 >= s.size() || s[pos + 3] != ':' || !read_int(s, pos + 4, 2, mi))
            return false;
        pos += 6;
        if (pos < s.size() && s[pos] == ':') {
            if (!read_int(s, pos + 1, 2, sec)) return false;
            pos += 3;
            if (pos < s.size() && s[pos] == '.') {
                std::size_t end = pos + 1;
                while (end < s.size() && s[end] >= '0' && s[end] <= '9') ++end;
                if (end == pos + 1) return false;
                std::from_chars(s.data() + pos, s.data() + end, frac);
                pos = end;
            }
        }
        if (h > 23 || mi > 59 || sec > 60) return false;
    }

    out.has_offset = false;
    out.offset_minutes = 0;
    if (pos < s.size()) {
        if (s[pos] == 'Z' && pos + 1 == s.size()) {
            out.has_offset = true;
        } else if (s[pos] == '+' || s[pos] == '-') {
            const int sign = s[pos] == '-' ? -1 : 1;
            int oh = 0, om = 0;
            if (!read_int(s, pos + 1, 2, oh)) return false;
            std::size_t p = pos + 3;
            if (p < s.size()) {
                if (s[p] == ':') ++p;
                if (!read_int(s, p, 2, om) || p + 2 != s.size()) return false;
            }
            out.has_offset = true;
            out.offset_minutes = sign * (oh * 60 + om);
        } else {
            return false;
        }
    }

    const auto local = sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
    out.seconds = static_cast<double>(local.time_since_epoch().count()) + frac -
                  static_cast<double>(out.offset_minutes) * 60.0;
    return true;
}

std::string format_iso8601(UtcTime t) {
    const auto day = floor<days>(t);
    const year_month_day ymd{day};
    const hh_mm_ss hms{t - day};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                  static_cast<long>(hms.seconds().count()));
    return buf;
}

} // namespace prft::calendar
