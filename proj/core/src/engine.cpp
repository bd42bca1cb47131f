#include "prft/engine.hpp"

#include "prft/error.hpp"
#include "prft/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <thread>
#include <utility>

namespace prft {

void PrftOptions::validate() const {
    if (!(tol > 0.0)) throw ContractViolation("convergence tolerance must be positive");
    if (max_iter < 1) throw ContractViolation("max_iter must be at least 1");
}

std::vector<double> impose_moments(std::span<const double> z, std::span<const double> y) {
    if (z.size() != y.size()) throw ContractViolation("impose_moments: length mismatch");
    if (z.empty()) throw ContractViolation("impose_moments: empty input");
    const double mz = stats::mean(z);
    const double sz = std::sqrt(stats::variance(z, mz));
    if (!(sz > 0.0)) throw DegenerateInputError("cannot rescale a constant sequence to the target moments");
    const double my = stats::mean(y);
    const double sy = std::sqrt(stats::variance(y, my));
    if (!(sy > 0.0)) throw DegenerateInputError("target sample is constant");
    const double a = sy / sz;
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = a * (z[i] - mz) + my;
    return out;
}

namespace {

// Writes the rank-ordered permutation of y into `out`; `order` is scratch.
void reorder_into(std::span<const double> y_sorted, std::span<const double> z,
                  std::vector<std::pair<double, std::size_t>>& order, std::vector<double>& out) {
    const std::size_t n = z.size();
    order.resize(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = {z[i], i};
    std::sort(order.begin(), order.end());
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[order[i].second] = y_sorted[i];
}

} // namespace

std::vector<double> rank_reorder(std::span<const double> y_sorted, std::span<const double> z) {
    if (y_sorted.size() != z.size()) throw ContractViolation("rank_reorder: length mismatch");
    if (!std::is_sorted(y_sorted.begin(), y_sorted.end()))
        throw ContractViolation("rank_reorder: target sample must be sorted ascending");
    std::vector<std::pair<double, std::size_t>> order;
    std::vector<double> out;
    reorder_into(y_sorted, z, order, out);
    return out;
}

double discrepancy(std::span<const double> z, std::span<const double> y_sorted, ConvergenceMetric metric) {
    if (z.size() != y_sorted.size()) throw ContractViolation("discrepancy: length mismatch");
    const double sy = stats::stddev(y_sorted);
    if (!(sy > 0.0)) throw DegenerateInputError("discrepancy: target sample is constant");
    std::vector<double> zs(z.begin(), z.end());
    std::sort(zs.begin(), zs.end());
    double acc = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const double d = std::abs(zs[i] - y_sorted[i]);
        acc = metric == ConvergenceMetric::SortedRmse ? acc + d * d : std::max(acc, d);
    }
    if (metric == ConvergenceMetric::SortedRmse) acc = std::sqrt(acc / static_cast<double>(zs.size()));
    return acc / sy;
}

Initialization initialize(const TimeSeries& ts, const TargetDistribution& dist, std::uint64_t seed) {
    const auto target = target_amplitudes(ts);
    const auto multisine = random_phase_multisine(target, seed);
    Initialization init;
    init.y = sample_target(dist, ts.size());
    init.z0 = impose_moments(multisine, init.y);
    init.stored.n = ts.size();
    init.stored.df = target.df;
    init.stored.mags = magnitudes(init.z0);
    return init;
}

SurrogateResult generate(const TimeSeries& ts, const TargetDistribution& dist, const PrftOptions& opts) {
    opts.validate();
    auto init = initialize(ts, dist, opts.seed);
    const auto& y = init.y;
    const auto& stored = init.stored;

    SurrogateResult result;
    result.seed = opts.seed;

    std::vector<std::pair<double, std::size_t>> order;
    std::vector<double> z = std::move(init.z0);
    std::vector<double> reordered, prev_reordered;
    std::vector<double> kept_restored, kept_reordered;
    double kept = std::numeric_limits<double>::infinity();
    result.termination = Termination::IterationCap;

    for (std::size_t it = 1; it <= opts.max_iter; ++it) {
        reorder_into(y, z, order, reordered);
        if (it > 1 && reordered == prev_reordered) {
            result.termination = Termination::FixedPoint;
            break;
        }
        auto restored = restore_amplitudes(stored, spectral_phases(reordered));
        const double d = discrepancy(restored, y, opts.metric);
        result.trace.push_back(d);

        if (it > 2 && d > kept) {
            result.termination = Termination::Increase;
            break;
        }
        kept = d;
        kept_restored = restored;
        kept_reordered = reordered;
        if (d <= opts.tol) {
            result.termination = Termination::Tolerance;
            break;
        }
        z = std::move(restored);
        std::swap(prev_reordered, reordered);
    }

    result.iterations_used = result.trace.size();
    result.discrepancy = kept;
    result.converged = kept <= opts.tol;
    auto& chosen = opts.variant == OutputVariant::PsdExact ? kept_restored : kept_reordered;
    result.surrogate = ts.with_values(std::move(chosen), "surrogate");
    result.stored_amps = std::move(init.stored);
    return result;
}

std::vector<EnsembleMember> generate_ensemble(const TimeSeries& ts, const TargetDistribution& dist,
                                              const PrftOptions& opts, std::size_t count, SeedStream seeds,
                                              std::size_t threads) {
    if (count < 1) throw ContractViolation("ensemble size must be at least 1");
    opts.validate();
    std::vector<EnsembleMember> members(count);
    for (auto& m : members) m.seed = seeds.next();

    auto run_slot = [&](std::size_t i) {
        PrftOptions o = opts;
        o.seed = members[i].seed;
        try {
            members[i].result = generate(ts, dist, o);
        } catch (const std::exception& e) {
            members[i].error = e.what();
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) run_slot(i);
        return members;
    }
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) run_slot(i);
            });
    }
    return members;
}

const char* to_string(Termination t) noexcept {
    switch (t) {
        case Termination::Tolerance: return "tolerance";
        case Termination::FixedPoint: return "fixed-point";
        case Termination::Increase: return "increase";
        case Termination::IterationCap: return "iteration-cap";
    }
    return "unknown";
}

const char* to_string(ConvergenceMetric m) noexcept {
    return m == ConvergenceMetric::SortedRmse ? "sorted-rmse" : "max-abs";
}

const char* to_string(OutputVariant v) noexcept { return v == OutputVariant::PsdExact ? "psd-exact" : "pdf-exact"; }

} // namespace prft
