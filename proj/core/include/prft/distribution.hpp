#pragma once

#include "prft/time_series.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace prft {

/// Target marginal distribution with an invertible CDF.
class TargetDistribution {
public:
    enum class Kind { Empirical, Weibull, CustomTable };

    struct Empirical {
        std::vector<double> sorted;  ///< ascending, ties kept
    };
    struct Weibull {
        double shape;  ///< k > 0
        double scale;  ///< lambda > 0
    };
    struct CustomTable {
        std::vector<double> u;      ///< strictly increasing in [0, 1]
        std::vector<double> value;  ///< nondecreasing
    };

    static TargetDistribution empirical(std::vector<double> samples);
    static TargetDistribution weibull(double shape, double scale);
    static TargetDistribution custom_table(std::vector<std::pair<double, double>> pairs);

    Kind kind() const noexcept;
    const Empirical* as_empirical() const noexcept { return std::get_if<Empirical>(&rep_); }
    const Weibull* as_weibull() const noexcept { return std::get_if<Weibull>(&rep_); }
    const CustomTable* as_custom_table() const noexcept { return std::get_if<CustomTable>(&rep_); }

private:
    using Rep = std::variant<Empirical, Weibull, CustomTable>;
    explicit TargetDistribution(Rep rep) : rep_(std::move(rep)) {}
    Rep rep_;
};

/// u_n = (1 + 2n) / (2N), n = 0..N-1.
std::vector<double> uniform_grid(std::size_t n);

/// Inverse CDF at u in (0, 1).
///
/// Empirical: linear interpolation between order statistics at 0-based
/// fractional rank u N - 1/2, clamped to the sample range. This places
/// u_n of a grid of the sample's own size exactly on the n-th order
/// statistic. Weibull: lambda (-ln(1-u))^(1/k). Custom table: piecewise
/// linear in (u, value), flat outside the tabulated range.
double quantile(const TargetDistribution& dist, double u);

/// CDF at x. Empirical: fraction of samples <= x. Custom table: piecewise
/// linear inverse of the quantile table.
double cdf(const TargetDistribution& dist, double x);

/// y_n = quantile(u_n) on uniform_grid(n); ascending and deterministic.
std::vector<double> sample_target(const TargetDistribution& dist, std::size_t n);

TargetDistribution fit_empirical(const TimeSeries& ts);
TargetDistribution fit_empirical(std::span<const double> values);

/// Maximum-likelihood Weibull fit.
///
/// Solves the shape profile equation by safeguarded Newton iteration from
/// the method-of-moments starting point, then sets the scale in closed form.
/// Exact zeros (calm periods) carry no information for a continuous Weibull
/// likelihood and are excluded.
TargetDistribution fit_weibull(const TimeSeries& ts);
TargetDistribution fit_weibull(std::span<const double> values);

/// Weibull log-likelihood of the strictly positive `values`.
double weibull_log_likelihood(std::span<const double> values, double shape, double scale);

/// Two-column CSV `u,value` with an optional header row.
TargetDistribution load_custom_table(const std::filesystem::path& path);

} // namespace prft
