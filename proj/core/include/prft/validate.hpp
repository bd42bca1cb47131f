#pragma once

#include "prft/engine.hpp"
#include "prft/spectral.hpp"
#include "prft/time_series.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace prft {

struct CdfFit {
    double r2 = 1.0;
    double rmse = 0.0;
};

/// Compares the two ECDFs on the merged, sorted, de-duplicated values of
/// both samples. r2 = 1 - SS_res / SS_tot with the observed ECDF as the
/// reference curve.
CdfFit cdf_fit(std::span<const double> obs, std::span<const double> syn);
CdfFit cdf_fit(const TimeSeries& obs, const TimeSeries& syn);

enum class AcfErrorMode {
    Window,     ///< rmse over every integer lag in [0, L]
    Pointwise,  ///< |rho_obs(L) - rho_syn(L)|
};

/// ACF error per requested lag, lags given in hours and converted to
/// samples with each series' dt. Keys are the requested hours.
std::map<double, double> acf_error(const TimeSeries& obs, const TimeSeries& syn,
                                   std::span<const double> lags_hours,
                                   AcfErrorMode mode = AcfErrorMode::Window);

enum class PsdErrorMode {
    SqrtPsd,        ///< rmse of sqrt(P) with the linear periodogram, (m/s) s^(1/2)
    PeriodogramDb,  ///< rmse of the dB/(cycles/hour) periodogram
};

double psd_error(const TimeSeries& obs, const TimeSeries& syn, PsdErrorMode mode);

struct QuantilePair {
    double probability;
    double observed;
    double surrogate;
};

/// Empirical quantiles of both samples on uniform_grid(n_quantiles).
std::vector<QuantilePair> qq_pairs(std::span<const double> obs, std::span<const double> syn,
                                   std::size_t n_quantiles);

struct AsvRow {
    double mean = 0.0;
    std::optional<double> interannual_std;  ///< sample std of per-year monthly means; needs 2 years
    std::size_t years = 0;                   ///< distinct years contributing to the month
    std::optional<double> ensemble_mean;
    std::optional<double> ensemble_std;      ///< population std across realisations
};

/// Average seasonal variation, rows January..December.
struct AsvTable {
    std::array<AsvRow, 12> months{};
};

/// Month means pool every sample stamped with that calendar month (UTC).
/// Requires an anchored series spanning at least one calendar year.
AsvTable asv(const TimeSeries& ts);

/// Ensemble statistics of the realisations' month means. `anchor` replaces
/// each surrogate's own start. The plain `mean` and `interannual_std`
/// columns hold the ensemble mean and the average member inter-annual std.
AsvTable asv_ensemble(std::span<const SurrogateResult> results, UtcTime anchor);
AsvTable asv_ensemble(std::span<const TimeSeries> series, UtcTime anchor);

/// Accepts iff max over months of |mean - target mean| <= tol.
bool asv_filter(const AsvTable& candidate, const AsvTable& target, double tol);
bool asv_filter(const SurrogateResult& result, const AsvTable& target, double tol);

/// Kendall tau-b, O(N log N).
double kendall_tau(std::span<const double> a, std::span<const double> b);

/// Density histogram over the joint range of both samples.
struct PdfOverlay {
    std::vector<double> centers;
    std::vector<double> obs_density;
    std::vector<double> syn_density;
};
PdfOverlay pdf_overlay(std::span<const double> obs, std::span<const double> syn, std::size_t bins = 50);

struct ValidationOptions {
    std::vector<double> lags_hours{12, 24, 48, 100};
    AcfErrorMode acf_mode = AcfErrorMode::Window;
    std::size_t n_quantiles = 100;
    std::size_t peaks = 3;
};

struct ValidationReport {
    double r2_cdf = 1.0;
    double rmse_cdf = 0.0;
    std::map<double, double> rmse_acf_at;
    AcfErrorMode acf_mode = AcfErrorMode::Window;
    double rmse_psd = 0.0;
    double rmse_per = 0.0;
    std::vector<QuantilePair> qq;
    std::optional<AsvTable> asv_obs;  ///< present when the series is anchored and long enough
    std::optional<AsvTable> asv_syn;
    std::vector<double> obs_peak_freqs;  ///< Hz, largest linear periodogram peaks
    std::vector<double> syn_peak_freqs;
};

/// Full battery for one surrogate against the observed record.
ValidationReport validate_pair(const TimeSeries& obs, const TimeSeries& syn,
                               const ValidationOptions& opts = {});

} // namespace prft
