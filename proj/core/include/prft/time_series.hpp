#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace prft {

using UtcTime = std::chrono::sys_seconds;

enum class TrimPolicy { None, IntegerDays, IntegerYears };

/// Bookkeeping about how a series was cleaned on its way in.
struct SeriesMeta {
    std::size_t gaps = 0;            ///< runs of consecutive missing samples
    std::size_t filled = 0;          ///< samples produced by interpolation
    std::size_t dropped = 0;         ///< samples removed (drop policy or edge gaps)
    std::size_t trimmed = 0;         ///< samples removed by calendar trimming
    TrimPolicy calendar_trim = TrimPolicy::None;

    bool operator==(const SeriesMeta&) const = default;
};

/// Uniformly sampled real-valued record.
///
/// `dt` is the sampling interval in seconds; `start`, when present, anchors
/// sample 0 to a UTC timestamp so calendar-aware operations can map sample
/// indices to dates.
struct TimeSeries {
    std::vector<double> values;
    double dt = 1.0;
    std::optional<UtcTime> start;
    std::string label;
    SeriesMeta meta;

    std::size_t size() const noexcept { return values.size(); }
    double sampling_frequency() const noexcept { return 1.0 / dt; }
    double duration() const noexcept { return static_cast<double>(values.size()) * dt; }

    /// Throws ContractViolation when an invariant does not hold.
    void validate() const;

    /// Copy of this series' grid (dt, start, label) carrying new samples.
    TimeSeries with_values(std::vector<double> v, std::string new_label = {}) const;
};

} // namespace prft
