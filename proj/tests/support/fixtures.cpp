#include "fixtures.hpp"

#include "prft/calendar.hpp"
#include "prft/rng.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

namespace prft::fixtures {

using namespace std::chrono;

UtcTime year_2005() { return sys_days{2005y / January / 1}; }

TimeSeries wind_year(std::uint64_t seed) {
    constexpr std::size_t n = 8760;
    Rng rng(seed);
    TimeSeries ts;
    ts.dt = 3600.0;
    ts.start = year_2005();
    ts.label = "wind-year fixture";
    ts.values.resize(n);
    double g = rng.normal();
    const double phi = 0.9;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) g = phi * g + std::sqrt(1.0 - phi * phi) * rng.normal();
        const double u = 0.5 * std::erfc(-g / std::numbers::sqrt2);
        const double weibull = 6.0 * std::sqrt(-std::log1p(-std::min(u, 1.0 - 1e-16)));
        const double t = static_cast<double>(i);
        const double diurnal = std::cos(2.0 * std::numbers::pi * (t - 15.0) / 24.0);
        const double annual = 1.5 * std::cos(2.0 * std::numbers::pi * t / static_cast<double>(n));
        ts.values[i] = 2.5 + weibull + diurnal + annual;
    }
    return ts;
}

TimeSeries white_noise(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    TimeSeries ts;
    ts.dt = 3600.0;
    ts.start = year_2005();
    ts.label = "white noise";
    ts.values.resize(n);
    for (auto& v : ts.values) v = 8.0 + rng.normal();
    return ts;
}

std::vector<double> weibull_sample(std::size_t n, double shape, double scale, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = scale * std::pow(-std::log(1.0 - rng.uniform01()), 1.0 / shape);
    return out;
}

void write_ndawn_style(const std::filesystem::path& path, std::size_t rows, std::uint64_t seed) {
    std::ofstream out(path);
    out << "station,timestamp,speed,flag\n";
    Rng rng(seed);
    const UtcTime t0 = sys_days{2003y / January / 1};
    for (std::size_t i = 0; i < rows; ++i) {
        const double v = 4.0 + 3.0 * rng.uniform01();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", v);
        out << "Crosby," << calendar::format_iso8601(t0 + hours{i}) << ',' << buf << ",\n";
    }
}

TempDir::TempDir() {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("prft-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

} // namespace prft::fixtures
