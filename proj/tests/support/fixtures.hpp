#pragma once

#include "prft/time_series.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace prft::fixtures {

/// 2005-01-01T00:00:00Z, a common (non-leap) year.
UtcTime year_2005();

/// One year of hourly wind-like speeds (N = 8760) from 2005-01-01:
/// 2.5 m/s offset + Weibull(k=2, lambda=6) marginal noise with AR(1)
/// correlation 0.9 + a 1.0 m/s diurnal cosine peaking at 15:00 + a 1.5 m/s
/// annual cosine peaking on Jan 1.
TimeSeries wind_year(std::uint64_t seed = 2005);

/// Gaussian white noise, unit variance, mean 8, hourly, anchored at 2005-01-01.
TimeSeries white_noise(std::size_t n, std::uint64_t seed);

std::vector<double> weibull_sample(std::size_t n, double shape, double scale, std::uint64_t seed);

/// Writes an NDAWN-style hourly export with columns
/// `station,timestamp,speed,flag`. Rows start 2003-01-01T00:00:00Z and are
/// hourly; leap days are present like any other day and no hours are
/// skipped, so `rows` rows cover rows/24 consecutive calendar days.
void write_ndawn_style(const std::filesystem::path& path, std::size_t rows, std::uint64_t seed);

/// Scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

} // namespace prft::fixtures
