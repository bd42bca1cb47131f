#pragma once

#include "prft/time_series.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace prft {

enum class MissingPolicy { Drop, Interpolate, Fail };
enum class TimezonePolicy { AssumeUtc, ExplicitOffset };

struct IngestConfig {
    std::string timestamp_column = "timestamp";
    std::string value_column = "speed";
    MissingPolicy missing = MissingPolicy::Interpolate;
    /// Longest run of missing samples the interpolate policy will fill.
    std::size_t max_interp_gap = 3;
    /// Largest missing fraction tolerated by the drop policy.
    double max_drop_fraction = 0.05;
    TrimPolicy trim = TrimPolicy::None;
    TimezonePolicy timezone = TimezonePolicy::AssumeUtc;
    /// Offset applied to naive timestamps under TimezonePolicy::ExplicitOffset.
    int offset_minutes = 0;
};

/// Reads a `timestamp,speed` CSV (column names per `cfg`) into a uniform series.
///
/// The sampling interval is the smallest timestamp step. Every step must be an
/// integer multiple of it (within 1% of dt); skipped grid points count as
/// missing samples. Empty, `NaN`, `NA`, `null` and `-` fields are missing.
/// Leading and trailing missing runs are always cut; interior runs follow
/// `cfg.missing`. Calendar trimming per `cfg.trim` runs last.
TimeSeries load_series(const std::filesystem::path& path, const IngestConfig& cfg = {});
TimeSeries parse_series(std::istream& in, const IngestConfig& cfg = {}, std::string label = {});

/// Writes `timestamp,speed`. Anchored series with whole-second steps get
/// ISO-8601 UTC timestamps, anything else epoch seconds. Values use the
/// shortest representation that reads back bit-identically.
void write_series(const TimeSeries& ts, const std::filesystem::path& path);
void write_series(const TimeSeries& ts, std::ostream& out);

/// Longest prefix spanning a whole number of days or calendar years from
/// `ts.start`. Years follow the real calendar, leap days included.
TimeSeries trim_to_calendar(const TimeSeries& ts, TrimPolicy policy);

} // namespace prft
