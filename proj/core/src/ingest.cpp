#include "prft/ingest.hpp"

#include "prft/calendar.hpp"
#include "prft/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace prft {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    bool quoted = false;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        else if (line[i] == ',' && !quoted) {
            out.push_back(trim(line.substr(begin, i - begin)));
            begin = i + 1;
        }
    }
    out.push_back(trim(line.substr(begin)));
    return out;
}

bool parse_number(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

bool is_missing_token(std::string_view s) {
    if (s.empty() || s == "-") return true;
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    return lower == "nan" || lower == "na" || lower == "n/a" || lower == "null";
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::size_t find_column(const std::vector<std::string_view>& header, const std::string& name) {
    const auto want = lowercase(name);
    for (std::size_t i = 0; i < header.size(); ++i)
        if (lowercase(header[i]) == want) return i;
    throw FormatError("column '" + name + "' not found in header");
}

struct Row {
    double t;
    double v;
};

std::vector<Row> read_rows(std::istream& in, const IngestConfig& cfg) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) throw FormatError("empty file");
    if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const std::string header_line = line;
    const auto header = split(header_line);
    const std::size_t tcol = find_column(header, cfg.timestamp_column);
    const std::size_t vcol = find_column(header, cfg.value_column);

    std::vector<Row> rows;
    std::optional<int> seen_offset;
    bool offsets_vary = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        if (fields.size() <= std::max(tcol, vcol))
            throw FormatError("line " + std::to_string(line_no) + ": expected at least " +
                              std::to_string(std::max(tcol, vcol) + 1) + " fields");
        Row row{};
        const auto ts = fields[tcol];
        calendar::ParsedTimestamp parsed;
        if (parse_number(ts, row.t)) {
            if (!std::isfinite(row.t)) throw FormatError("line " + std::to_string(line_no) + ": bad timestamp");
        } else if (calendar::parse_iso8601(ts, parsed)) {
            row.t = parsed.seconds;
            if (parsed.has_offset) {
                if (seen_offset && *seen_offset != parsed.offset_minutes) offsets_vary = true;
                seen_offset = parsed.offset_minutes;
            } else if (cfg.timezone == TimezonePolicy::ExplicitOffset) {
                row.t -= static_cast<double>(cfg.offset_minutes) * 60.0;
            }
        } else {
            throw FormatError("line " + std::to_string(line_no) + ": unparseable timestamp '" + std::string(ts) + "'");
        }
        const auto vs = fields[vcol];
        if (is_missing_token(vs)) row.v = kNaN;
        else if (!parse_number(vs, row.v))
            throw FormatError("line " + std::to_string(line_no) + ": unparseable value '" + std::string(vs) + "'");
        if (!std::isfinite(row.v)) row.v = kNaN;
        rows.push_back(row);
    }
    if (offsets_vary && cfg.timezone == TimezonePolicy::AssumeUtc)
        throw FormatError("timestamps change UTC offset within the file (daylight saving?); configure an explicit offset");
    if (rows.empty()) throw FormatError("file has a header but no data rows");
    return rows;
}

// Places rows on the uniform grid; absent grid points become NaN.
std::vector<double> regularize(const std::vector<Row>& rows, double& dt) {
    if (rows.size() < 2) throw FormatError("need at least two rows to infer the sampling interval");
    dt = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double step = rows[i].t - rows[i - 1].t;
        if (!(step > 0.0))
            throw FormatError("timestamps are not strictly increasing at data row " + std::to_string(i + 1));
        dt = std::min(dt, step);
    }
    std::vector<double> values{rows[0].v};
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double step = rows[i].t - rows[i - 1].t;
        const double m = std::round(step / dt);
        if (std::abs(step - m * dt) > 0.01 * dt)
            throw FormatError("nonuniform spacing at data row " + std::to_string(i + 1) + ": step " +
                              std::to_string(step) + " s is not a multiple of " + std::to_string(dt) + " s");
        for (double k = 1; k < m; ++k) values.push_back(kNaN);
        values.push_back(rows[i].v);
    }
    return values;
}

} // namespace

TimeSeries parse_series(std::istream& in, const IngestConfig& cfg, std::string label) {
    const auto rows = read_rows(in, cfg);
    double dt = 0.0;
    auto values = regularize(rows, dt);

    std::size_t first = 0;
    while (first < values.size() && std::isnan(values[first])) ++first;
    if (first == values.size()) throw DataQualityError("every value is missing");
    std::size_t last = values.size();
    while (std::isnan(values[last - 1])) --last;

    TimeSeries ts;
    ts.dt = dt;
    ts.label = std::move(label);
    ts.meta.dropped = first + (values.size() - last);
    const double t0 = rows.front().t + static_cast<double>(first) * dt;
    ts.start = UtcTime{std::chrono::seconds{static_cast<long long>(std::llround(t0))}};

    std::vector<double> body(values.begin() + static_cast<std::ptrdiff_t>(first),
                             values.begin() + static_cast<std::ptrdiff_t>(last));
    std::size_t missing = 0, longest = 0;
    for (std::size_t i = 0; i < body.size();) {
        if (!std::isnan(body[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (std::isnan(body[j])) ++j;
        ++ts.meta.gaps;
        missing += j - i;
        longest = std::max(longest, j - i);
        i = j;
    }

    switch (cfg.missing) {
        case MissingPolicy::Fail:
            if (missing > 0)
                throw DataQualityError(std::to_string(missing) + " missing values and missing-value policy is 'fail'");
            break;
        case MissingPolicy::Drop: {
            const double frac = static_cast<double>(missing) / static_cast<double>(body.size());
            if (frac > cfg.max_drop_fraction)
                throw DataQualityError(std::to_string(missing) + " of " + std::to_string(body.size()) +
                                       " values missing, above the drop limit");
            std::erase_if(body, [](double v) { return std::isnan(v); });
            ts.meta.dropped += missing;
            break;
        }
        case MissingPolicy::Interpolate:
            if (longest > cfg.max_interp_gap)
                throw DataQualityError("gap of " + std::to_string(longest) + " samples exceeds the interpolation limit of " +
                                       std::to_string(cfg.max_interp_gap));
            for (std::size_t i = 0; i < body.size(); ++i) {
                if (!std::isnan(body[i])) continue;
                std::size_t j = i;
                while (std::isnan(body[j])) ++j;
                const double a = body[i - 1], b = body[j];
                const double span = static_cast<double>(j - i + 1);
                for (std::size_t k = i; k < j; ++k) body[k] = a + (b - a) * static_cast<double>(k - i + 1) / span;
                ts.meta.filled += j - i;
                i = j;
            }
            break;
    }

    ts.values = std::move(body);
    if (ts.values.size() < 2) throw InsufficientDataError("fewer than two samples after cleaning");
    ts.validate();
    if (cfg.trim != TrimPolicy::None) ts = trim_to_calendar(ts, cfg.trim);
    return ts;
}

TimeSeries load_series(const std::filesystem::path& path, const IngestConfig& cfg) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    return parse_series(in, cfg, path.filename().string());
}

namespace {

void append_double(std::string& out, double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, p);
}

} // namespace

void write_series(const TimeSeries& ts, std::ostream& out) {
    const bool whole_seconds = ts.dt == std::round(ts.dt);
    std::string text = "timestamp,speed\n";
    const double t0 = ts.start ? static_cast<double>(ts.start->time_since_epoch().count()) : 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts.start && whole_seconds) {
            const auto step = std::chrono::seconds{static_cast<long long>(ts.dt) * static_cast<long long>(i)};
            text += calendar::format_iso8601(*ts.start + step);
        } else {
            append_double(text, t0 + static_cast<double>(i) * ts.dt);
        }
        text += ',';
        append_double(text, ts.values[i]);
        text += '\n';
    }
    out << text;
}

void write_series(const TimeSeries& ts, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path.string());
    write_series(ts, out);
    if (!out) throw FormatError("write failed for " + path.string());
}

TimeSeries trim_to_calendar(const TimeSeries& ts, TrimPolicy policy) {
    ts.validate();
    if (policy == TrimPolicy::None) return ts;
    if (!ts.start) throw ContractViolation("calendar trimming needs an anchored series");
    const double per_day = 86400.0 / ts.dt;
    if (std::abs(per_day - std::round(per_day)) > 1e-9 * per_day)
        throw ContractViolation("sampling interval does not divide a day");
    const auto samples_per_day = static_cast<std::size_t>(std::llround(per_day));

    std::size_t keep = 0;
    if (policy == TrimPolicy::IntegerDays) {
        keep = ts.size() / samples_per_day * samples_per_day;
        if (keep == 0) throw InsufficientDataError("series is shorter than one day");
    } else {
        const auto end = *ts.start + std::chrono::seconds{std::llround(ts.duration())};
        int years = 0;
        while (calendar::add_years(*ts.start, years + 1) <= end) ++years;
        if (years == 0) throw InsufficientDataError("series is shorter than one calendar year");
        const auto span = calendar::add_years(*ts.start, years) - *ts.start;
        keep = static_cast<std::size_t>(std::llround(static_cast<double>(span.count()) / ts.dt));
    }

    TimeSeries out = ts;
    out.values.resize(keep);
    out.meta.trimmed = ts.size() - keep;
    out.meta.calendar_trim = policy;
    out.validate();
    return out;
}

} // namespace prft
