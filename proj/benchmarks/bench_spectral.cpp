#include "prft/rng.hpp"
#include "prft/spectral.hpp"

#include <benchmark/benchmark.h>

namespace {

std::vector<double> noise(std::size_t n) {
    prft::Rng rng(1);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal();
    return x;
}

void BM_Dft(benchmark::State& state) {
    const auto x = noise(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(prft::dft(x));
    state.SetComplexityN(state.range(0));
}
// powers of two and the awkward lengths real records come in (one year, ten years hourly)
BENCHMARK(BM_Dft)->Arg(4096)->Arg(8760)->Arg(65536)->Arg(87648)->Complexity();

void BM_PhaseRoundTrip(benchmark::State& state) {
    const auto x = noise(static_cast<std::size_t>(state.range(0)));
    prft::AmplitudeSpectrum amps;
    amps.n = x.size();
    amps.df = 1.0;
    amps.mags = prft::magnitudes(x);
    for (auto _ : state) benchmark::DoNotOptimize(prft::restore_amplitudes(amps, prft::spectral_phases(x)));
}
BENCHMARK(BM_PhaseRoundTrip)->Arg(8760)->Arg(87648);

void BM_AcfDirect(benchmark::State& state) {
    const auto x = noise(8760);
    for (auto _ : state) benchmark::DoNotOptimize(prft::acf(x, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_AcfDirect)->Arg(100)->Arg(1000);

void BM_AcfWienerKhinchin(benchmark::State& state) {
    const auto x = noise(8760);
    for (auto _ : state) benchmark::DoNotOptimize(prft::acf_wiener_khinchin(x, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_AcfWienerKhinchin)->Arg(100)->Arg(1000);

} // namespace
