#include "prft/distribution.hpp"

#include "prft/error.hpp"
#include "prft/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>
#include <string>

namespace prft {

TargetDistribution TargetDistribution::empirical(std::vector<double> samples) {
    if (samples.empty()) throw ContractViolation("empirical distribution needs samples");
    for (double v : samples)
        if (!std::isfinite(v)) throw DomainError("empirical distribution sample is not finite");
    std::sort(samples.begin(), samples.end());
    return TargetDistribution(Empirical{std::move(samples)});
}

TargetDistribution TargetDistribution::weibull(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale))
        throw DomainError("Weibull shape and scale must be positive and finite");
    return TargetDistribution(Weibull{shape, scale});
}

TargetDistribution TargetDistribution::custom_table(std::vector<std::pair<double, double>> pairs) {
    if (pairs.size() < 2) throw ContractViolation("custom quantile table needs at least two rows");
    CustomTable t;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [u, v] = pairs[i];
        if (!std::isfinite(u) || !std::isfinite(v) || u < 0.0 || u > 1.0)
            throw DomainError("custom table row " + std::to_string(i) + " is out of range");
        if (i > 0 && !(u > t.u.back())) throw DomainError("custom table probabilities must increase strictly");
        if (i > 0 && v < t.value.back()) throw DomainError("custom table values must be nondecreasing");
        t.u.push_back(u);
        t.value.push_back(v);
    }
    return TargetDistribution(std::move(t));
}

TargetDistribution::Kind TargetDistribution::kind() const noexcept {
    switch (rep_.index()) {
        case 0: return Kind::Empirical;
        case 1: return Kind::Weibull;
        default: return Kind::CustomTable;
    }
}

std::vector<double> uniform_grid(std::size_t n) {
    if (n == 0) throw ContractViolation("uniform grid needs at least one point");
    std::vector<double> u(n);
    const double two_n = 2.0 * static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = (1.0 + 2.0 * static_cast<double>(i)) / two_n;
    return u;
}

namespace {

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + w * (ys[hi] - ys[lo]);
}

double empirical_quantile(const std::vector<double>& sorted, double u) {
    const double n = static_cast<double>(sorted.size());
    const double rank = std::clamp(u * n - 0.5, 0.0, n - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const double frac = rank - static_cast<double>(lo);
    if (frac == 0.0 || lo + 1 >= sorted.size()) return sorted[lo];
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

} // namespace

double quantile(const TargetDistribution& dist, double u) {
    if (!(u > 0.0 && u < 1.0)) throw ContractViolation("quantile probability must lie in (0, 1)");
    if (const auto* e = dist.as_empirical()) return empirical_quantile(e->sorted, u);
    if (const auto* w = dist.as_weibull()) return w->scale * std::pow(-std::log1p(-u), 1.0 / w->shape);
    const auto* t = dist.as_custom_table();
    return interpolate(t->u, t->value, u);
}

double cdf(const TargetDistribution& dist, double x) {
    if (const auto* e = dist.as_empirical()) {
        const auto it = std::upper_bound(e->sorted.begin(), e->sorted.end(), x);
        return static_cast<double>(it - e->sorted.begin()) / static_cast<double>(e->sorted.size());
    }
    if (const auto* w = dist.as_weibull()) {
        if (x <= 0.0) return 0.0;
        return -std::expm1(-std::pow(x / w->scale, w->shape));
    }
    const auto* t = dist.as_custom_table();
    if (x < t->value.front()) return 0.0;
    if (x >= t->value.back()) return 1.0;
    // last row whose value is <= x, then walk the rising segment
    const auto it = std::upper_bound(t->value.begin(), t->value.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - t->value.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - t->value[lo]) / (t->value[hi] - t->value[lo]);
    return t->u[lo] + w * (t->u[hi] - t->u[lo]);
}

std::vector<double> sample_target(const TargetDistribution& dist, std::size_t n) {
    if (const auto* e = dist.as_empirical()) {
        // Same Hazen rank as quantile(), but in integers: the rank of grid
        // point i is ((2i+1) m - n) / (2n), which avoids landing one ulp off
        // an order statistic when n divides evenly into the sample.
        const auto& ys = e->sorted;
        const std::uint64_t m = ys.size(), den = 2 * static_cast<std::uint64_t>(n);
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto num = static_cast<std::int64_t>((2 * i + 1) * m) - static_cast<std::int64_t>(n);
            if (num <= 0) {
                out[i] = ys.front();
                continue;
            }
            const std::uint64_t lo = static_cast<std::uint64_t>(num) / den, rem = static_cast<std::uint64_t>(num) % den;
            if (lo + 1 >= m || rem == 0) out[i] = ys[std::min<std::uint64_t>(lo, m - 1)];
            else out[i] = ys[lo] + (static_cast<double>(rem) / static_cast<double>(den)) * (ys[lo + 1] - ys[lo]);
        }
        return out;
    }
    auto u = uniform_grid(n);
    for (auto& v : u) v = quantile(dist, v);
    return u;
}

TargetDistribution fit_empirical(std::span<const double> values) {
    if (values.size() < 2 || stats::is_constant(values))
        throw DegenerateInputError("empirical fit needs a nonconstant series");
    return TargetDistribution::empirical(std::vector<double>(values.begin(), values.end()));
}

TargetDistribution fit_empirical(const TimeSeries& ts) {
    ts.validate();
    return fit_empirical(ts.values);
}

double weibull_log_likelihood(std::span<const double> values, double shape, double scale) {
    double ll = 0.0;
    const double log_k = std::log(shape);
    const double log_l = std::log(scale);
    for (double x : values) {
        if (!(x > 0.0)) continue;
        const double lz = std::log(x) - log_l;
        ll += log_k - log_l + (shape - 1.0) * lz - std::exp(shape * lz);
    }
    return ll;
}

TargetDistribution fit_weibull(std::span<const double> values) {
    std::vector<double> x;
    x.reserve(values.size());
    for (double v : values) {
        if (!std::isfinite(v)) throw DomainError("Weibull fit input is not finite");
        if (v < 0.0) throw DomainError("Weibull fit needs nonnegative values");
        if (v > 0.0) x.push_back(v);
    }
    if (x.size() < 2 || stats::is_constant(x)) throw FitError("Weibull fit needs at least two distinct positive values");

    const double xmax = *std::max_element(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    std::vector<double> ls(x.size());
    double lbar = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        ls[i] = std::log(x[i] / xmax);
        lbar += ls[i];
    }
    lbar /= n;

    // profile equation g(k) = sum s^k ln s / sum s^k - 1/k - mean ln s, increasing in k
    auto eval = [&](double k, double& g, double& dg, double& b) {
        double a = 0.0, c = 0.0;
        b = 0.0;
        for (double l : ls) {
            const double p = std::exp(k * l);
            b += p;
            a += p * l;
            c += p * l * l;
        }
        const double r = a / b;
        g = r - 1.0 / k - lbar;
        dg = c / b - r * r + 1.0 / (k * k);
    };

    const double cv = stats::stddev(x) / stats::mean(x);
    double k = std::clamp(std::pow(cv, -1.086), 0.05, 100.0);
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    double b = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        double g, dg;
        eval(k, g, dg, b);
        if (g < 0.0) lo = std::max(lo, k);
        else hi = std::min(hi, k);
        double next = k - g / dg;
        if (!(next > lo && next < hi) || !std::isfinite(next))
            next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * k;
        if (std::abs(next - k) <= 1e-13 * k) {
            eval(next, g, dg, b);
            const double scale = xmax * std::pow(b / n, 1.0 / next);
            return TargetDistribution::weibull(next, scale);
        }
        k = next;
    }
    throw FitError("Weibull maximum-likelihood iteration did not converge in 200 steps");
}

TargetDistribution fit_weibull(const TimeSeries& ts) {
    ts.validate();
    return fit_weibull(ts.values);
}

TargetDistribution load_custom_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open quantile table " + path.string());
    std::vector<std::pair<double, double>> rows;
    std::string line;
    std::size_t line_no = 0;
    auto parse = [](std::string_view s, double& out) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc{} && p == s.data() + s.size() && !s.empty();
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        double u = 0.0, v = 0.0;
        const bool ok = comma != std::string::npos && parse(std::string_view(line).substr(0, comma), u) &&
                        parse(std::string_view(line).substr(comma + 1), v);
        if (!ok) {
            if (rows.empty() && line_no == 1) continue;  // header
            throw FormatError("quantile table line " + std::to_string(line_no) + " is not 'u,value'");
        }
        rows.emplace_back(u, v);
    }
    if (rows.empty()) throw FormatError("quantile table " + path.string() + " has no rows");
    return TargetDistribution::custom_table(std::move(rows));
}

} // namespace prft
