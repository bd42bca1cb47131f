#include "prft/distribution.hpp"
#include "prft/engine.hpp"
#include "prft/rng.hpp"

#include "fixtures.hpp"

#include <algorithm>
#include <benchmark/benchmark.h>

namespace {

void BM_RankReorder(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    prft::Rng rng(2);
    std::vector<double> z(n), y(n);
    for (auto& v : z) v = rng.normal();
    for (auto& v : y) v = rng.uniform01();
    std::sort(y.begin(), y.end());
    for (auto _ : state) benchmark::DoNotOptimize(prft::rank_reorder(y, z));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RankReorder)->Arg(8760)->Arg(87648)->Complexity(benchmark::oNLogN);

void BM_GenerateOneYear(benchmark::State& state) {
    const auto ts = prft::fixtures::wind_year();
    const auto dist = prft::fit_empirical(ts);
    prft::PrftOptions o;
    std::size_t iterations = 0;
    for (auto _ : state) {
        o.seed = static_cast<std::uint64_t>(state.iterations());
        const auto r = prft::generate(ts, dist, o);
        iterations += r.iterations_used;
        benchmark::DoNotOptimize(r.surrogate.values.data());
    }
    state.counters["prft_iters"] = benchmark::Counter(static_cast<double>(iterations), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_GenerateOneYear)->Unit(benchmark::kMillisecond);

void BM_FitWeibull(benchmark::State& state) {
    const auto x = prft::fixtures::weibull_sample(87648, 2.0, 7.0, 3);
    for (auto _ : state) benchmark::DoNotOptimize(prft::fit_weibull(x));
}
BENCHMARK(BM_FitWeibull)->Unit(benchmark::kMillisecond);

} // namespace
