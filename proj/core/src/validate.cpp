#include "prft/validate.hpp"

#include "prft/calendar.hpp"
#include "prft/distribution.hpp"
#include "prft/error.hpp"
#include "prft/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace prft {

CdfFit cdf_fit(std::span<const double> obs, std::span<const double> syn) {
    if (obs.size() < 2 || syn.size() < 2 || stats::is_constant(obs) || stats::is_constant(syn))
        throw DegenerateInputError("CDF comparison needs two nonconstant samples");
    std::vector<double> so(obs.begin(), obs.end()), ss(syn.begin(), syn.end());
    std::sort(so.begin(), so.end());
    std::sort(ss.begin(), ss.end());
    std::vector<double> grid;
    grid.reserve(so.size() + ss.size());
    std::merge(so.begin(), so.end(), ss.begin(), ss.end(), std::back_inserter(grid));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const double no = static_cast<double>(so.size()), ns = static_cast<double>(ss.size());
    std::vector<double> fo(grid.size()), fs(grid.size());
    std::size_t io = 0, is = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        while (io < so.size() && so[io] <= grid[g]) ++io;
        while (is < ss.size() && ss[is] <= grid[g]) ++is;
        fo[g] = static_cast<double>(io) / no;
        fs[g] = static_cast<double>(is) / ns;
    }
    const double mo = stats::mean(fo);
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        ss_res += (fs[g] - fo[g]) * (fs[g] - fo[g]);
        ss_tot += (fo[g] - mo) * (fo[g] - mo);
    }
    return {1.0 - ss_res / ss_tot, std::sqrt(ss_res / static_cast<double>(grid.size()))};
}

CdfFit cdf_fit(const TimeSeries& obs, const TimeSeries& syn) { return cdf_fit(obs.values, syn.values); }

std::map<double, double> acf_error(const TimeSeries& obs, const TimeSeries& syn, std::span<const double> lags_hours,
                                   AcfErrorMode mode) {
    if (obs.dt != syn.dt) throw ContractViolation("ACF comparison needs equal sampling intervals");
    std::vector<std::size_t> lags;
    std::size_t max_lag = 0;
    for (double h : lags_hours) {
        if (!(h > 0.0)) throw ContractViolation("ACF lags must be positive");
        const auto lag = static_cast<std::size_t>(std::llround(h * 3600.0 / obs.dt));
        lags.push_back(lag);
        max_lag = std::max(max_lag, lag);
    }
    std::map<double, double> out;
    if (lags.empty()) return out;
    const auto ro = acf(obs.values, max_lag);
    const auto rs = acf(syn.values, max_lag);
    for (std::size_t i = 0; i < lags.size(); ++i) {
        const std::size_t lag = lags[i];
        double err = 0.0;
        if (mode == AcfErrorMode::Pointwise) {
            err = std::abs(ro[lag] - rs[lag]);
        } else {
            for (std::size_t l = 0; l <= lag; ++l) err += (ro[l] - rs[l]) * (ro[l] - rs[l]);
            err = std::sqrt(err / static_cast<double>(lag + 1));
        }
        out[lags_hours[i]] = err;
    }
    return out;
}

double psd_error(const TimeSeries& obs, const TimeSeries& syn, PsdErrorMode mode) {
    if (obs.size() != syn.size() || obs.dt != syn.dt)
        throw ContractViolation("PSD comparison needs equal lengths and sampling intervals");
    const auto units = mode == PsdErrorMode::SqrtPsd ? PeriodogramUnits::Linear : PeriodogramUnits::DbPerCyclePerHour;
    const auto po = periodogram(obs, units);
    const auto ps = periodogram(syn, units);
    if (po.values.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < po.values.size(); ++i) {
        const double d = mode == PsdErrorMode::SqrtPsd ? std::sqrt(po.values[i]) - std::sqrt(ps.values[i])
                                                       : po.values[i] - ps.values[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(po.values.size()));
}

std::vector<QuantilePair> qq_pairs(std::span<const double> obs, std::span<const double> syn, std::size_t n_quantiles) {
    if (n_quantiles < 2) throw ContractViolation("Q-Q comparison needs at least two quantiles");
    const auto fo = fit_empirical(obs);
    const auto fs = fit_empirical(syn);
    std::vector<QuantilePair> out;
    out.reserve(n_quantiles);
    for (double u : uniform_grid(n_quantiles)) out.push_back({u, quantile(fo, u), quantile(fs, u)});
    return out;
}

namespace {

struct MonthStats {
    std::array<double, 12> mean{};
    std::array<std::optional<double>, 12> interannual{};
    std::array<std::size_t, 12> years{};
};

void require_full_year(const TimeSeries& ts) {
    if (!ts.start) throw ContractViolation("seasonal statistics need an anchored series");
    const auto end = *ts.start + std::chrono::seconds{std::llround(ts.duration())};
    if (calendar::add_years(*ts.start, 1) > end)
        throw ContractViolation("seasonal statistics need at least one calendar year of data");
}

MonthStats month_stats(std::span<const double> values, const std::vector<calendar::YearMonth>& labels) {
    struct Cell {
        int year;
        double sum = 0.0;
        std::size_t count = 0;
    };
    std::array<std::vector<Cell>, 12> cells;
    std::array<double, 12> sum{};
    std::array<std::size_t, 12> count{};
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto m = labels[i].month - 1;
        sum[m] += values[i];
        ++count[m];
        auto& row = cells[m];
        if (row.empty() || row.back().year != labels[i].year) row.push_back({labels[i].year});
        row.back().sum += values[i];
        ++row.back().count;
    }
    MonthStats out;
    for (std::size_t m = 0; m < 12; ++m) {
        out.mean[m] = count[m] ? sum[m] / static_cast<double>(count[m]) : std::nan("");
        // samples arrive in time order, so each year occupies one contiguous cell
        std::vector<double> yearly;
        for (const auto& c : cells[m]) yearly.push_back(c.sum / static_cast<double>(c.count));
        out.years[m] = yearly.size();
        if (yearly.size() >= 2) out.interannual[m] = stats::sample_stddev(yearly);
    }
    return out;
}

} // namespace

AsvTable asv(const TimeSeries& ts) {
    require_full_year(ts);
    const auto s = month_stats(ts.values, calendar::sample_months(ts));
    AsvTable out;
    for (std::size_t m = 0; m < 12; ++m) {
        out.months[m].mean = s.mean[m];
        out.months[m].interannual_std = s.interannual[m];
        out.months[m].years = s.years[m];
    }
    return out;
}

AsvTable asv_ensemble(std::span<const TimeSeries> series, UtcTime anchor) {
    if (series.empty()) throw ContractViolation("ensemble seasonal statistics need at least one realisation");
    TimeSeries grid = series.front();
    grid.start = anchor;
    require_full_year(grid);
    for (const auto& s : series)
        if (s.size() != grid.size() || s.dt != grid.dt)
            throw ContractViolation("ensemble realisations differ in length or sampling interval");
    const auto labels = calendar::sample_months(grid);

    std::vector<MonthStats> members;
    members.reserve(series.size());
    for (const auto& s : series) members.push_back(month_stats(s.values, labels));

    AsvTable out;
    const double count = static_cast<double>(members.size());
    for (std::size_t m = 0; m < 12; ++m) {
        std::vector<double> means;
        double std_sum = 0.0;
        std::size_t std_count = 0;
        for (const auto& ms : members) {
            means.push_back(ms.mean[m]);
            if (ms.interannual[m]) {
                std_sum += *ms.interannual[m];
                ++std_count;
            }
        }
        const double mean = stats::mean(means);
        auto& row = out.months[m];
        row.mean = mean;
        row.years = members.front().years[m];
        row.ensemble_mean = mean;
        row.ensemble_std = std::sqrt(stats::variance(means, mean));
        if (std_count == members.size()) row.interannual_std = std_sum / count;
    }
    return out;
}

AsvTable asv_ensemble(std::span<const SurrogateResult> results, UtcTime anchor) {
    std::vector<TimeSeries> series;
    series.reserve(results.size());
    for (const auto& r : results) series.push_back(r.surrogate);
    return asv_ensemble(std::span<const TimeSeries>(series), anchor);
}

bool asv_filter(const AsvTable& candidate, const AsvTable& target, double tol) {
    double worst = 0.0;
    for (std::size_t m = 0; m < 12; ++m)
        worst = std::max(worst, std::abs(candidate.months[m].mean - target.months[m].mean));
    return worst <= tol;
}

bool asv_filter(const SurrogateResult& result, const AsvTable& target, double tol) {
    return asv_filter(asv(result.surrogate), target, tol);
}

namespace {

// Sorts v ascending and returns the number of strictly inverted pairs.
std::int64_t count_inversions(std::vector<double>& v) {
    std::vector<double> buf(v.size());
    std::int64_t swaps = 0;
    for (std::size_t width = 1; width < v.size(); width *= 2) {
        for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, v.size());
            const std::size_t hi = std::min(lo + 2 * width, v.size());
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (v[i] <= v[j]) buf[k++] = v[i++];
                else {
                    swaps += static_cast<std::int64_t>(mid - i);
                    buf[k++] = v[j++];
                }
            }
            while (i < mid) buf[k++] = v[i++];
            while (j < hi) buf[k++] = v[j++];
        }
        std::swap(v, buf);
    }
    return swaps;
}

std::int64_t tied_pairs(const std::vector<double>& sorted) {
    std::int64_t ties = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const auto run = static_cast<std::int64_t>(j - i);
        ties += run * (run - 1) / 2;
        i = j;
    }
    return ties;
}

} // namespace

double kendall_tau(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ContractViolation("Kendall tau: length mismatch");
    if (a.size() < 2) throw ContractViolation("Kendall tau needs at least two pairs");
    const std::size_t n = a.size();
    std::vector<std::pair<double, double>> pairs(n);
    for (std::size_t i = 0; i < n; ++i) pairs[i] = {a[i], b[i]};
    std::sort(pairs.begin(), pairs.end());

    std::int64_t ties_a = 0, ties_ab = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && pairs[j].first == pairs[i].first) ++j;
        const auto run = static_cast<std::int64_t>(j - i);
        ties_a += run * (run - 1) / 2;
        for (std::size_t p = i; p < j;) {
            std::size_t q = p;
            while (q < j && pairs[q].second == pairs[p].second) ++q;
            const auto r = static_cast<std::int64_t>(q - p);
            ties_ab += r * (r - 1) / 2;
            p = q;
        }
        i = j;
    }
    std::vector<double> bs(n);
    for (std::size_t i = 0; i < n; ++i) bs[i] = pairs[i].second;
    const std::int64_t swaps = count_inversions(bs);
    const std::int64_t ties_b = tied_pairs(bs);

    const auto total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
    const double num = static_cast<double>(total - ties_a - ties_b + ties_ab - 2 * swaps);
    const double den = std::sqrt(static_cast<double>(total - ties_a) * static_cast<double>(total - ties_b));
    if (den == 0.0) throw DegenerateInputError("Kendall tau of a constant sequence");
    return num / den;
}

PdfOverlay pdf_overlay(std::span<const double> obs, std::span<const double> syn, std::size_t bins) {
    if (bins < 1 || obs.empty() || syn.empty()) throw ContractViolation("histogram needs samples and bins");
    const auto [omin, omax] = std::minmax_element(obs.begin(), obs.end());
    const auto [smin, smax] = std::minmax_element(syn.begin(), syn.end());
    const double lo = std::min(*omin, *smin), hi = std::max(*omax, *smax);
    if (!(hi > lo)) throw DegenerateInputError("histogram of constant samples");
    const double width = (hi - lo) / static_cast<double>(bins);
    PdfOverlay out;
    out.centers.resize(bins);
    out.obs_density.assign(bins, 0.0);
    out.syn_density.assign(bins, 0.0);
    for (std::size_t i = 0; i < bins; ++i) out.centers[i] = lo + (static_cast<double>(i) + 0.5) * width;
    auto fill = [&](std::span<const double> x, std::vector<double>& dens) {
        for (double v : x) {
            auto idx = static_cast<std::size_t>((v - lo) / width);
            dens[std::min(idx, bins - 1)] += 1.0;
        }
        for (auto& d : dens) d /= static_cast<double>(x.size()) * width;
    };
    fill(obs, out.obs_density);
    fill(syn, out.syn_density);
    return out;
}

namespace {

bool spans_a_year(const TimeSeries& ts) {
    if (!ts.start) return false;
    const auto end = *ts.start + std::chrono::seconds{std::llround(ts.duration())};
    return calendar::add_years(*ts.start, 1) <= end;
}

std::vector<double> peak_freqs(const TimeSeries& ts, std::size_t count) {
    const auto p = periodogram(ts);
    std::vector<double> out;
    for (std::size_t i : largest_peaks(p.values, count)) out.push_back(p.freqs[i]);
    return out;
}

} // namespace

ValidationReport validate_pair(const TimeSeries& obs, const TimeSeries& syn, const ValidationOptions& opts) {
    obs.validate();
    syn.validate();
    ValidationReport r;
    const auto fit = cdf_fit(obs, syn);
    r.r2_cdf = fit.r2;
    r.rmse_cdf = fit.rmse;
    r.acf_mode = opts.acf_mode;
    r.rmse_acf_at = acf_error(obs, syn, opts.lags_hours, opts.acf_mode);
    r.rmse_psd = psd_error(obs, syn, PsdErrorMode::SqrtPsd);
    r.rmse_per = psd_error(obs, syn, PsdErrorMode::PeriodogramDb);
    r.qq = qq_pairs(obs.values, syn.values, opts.n_quantiles);
    if (spans_a_year(obs)) r.asv_obs = asv(obs);
    if (spans_a_year(syn)) r.asv_syn = asv(syn);
    r.obs_peak_freqs = peak_freqs(obs, opts.peaks);
    r.syn_peak_freqs = peak_freqs(syn, opts.peaks);
    return r;
}

} // namespace prft
