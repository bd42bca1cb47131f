#include "prft/spectral.hpp"

#include "fft.hpp"
#include "prft/error.hpp"
#include "prft/rng.hpp"
#include "prft/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace prft {

using detail::FftDirection;

std::vector<Complex> dft(std::span<const Complex> x) {
    std::vector<Complex> out(x.size());
    detail::fft(x, out, FftDirection::Forward);
    return out;
}

std::vector<Complex> dft(std::span<const double> x) {
    std::vector<Complex> in(x.begin(), x.end());
    return dft(std::span<const Complex>(in));
}

std::vector<Complex> idft(std::span<const Complex> spectrum) {
    std::vector<Complex> out(spectrum.size());
    detail::fft(spectrum, out, FftDirection::Backward);
    const double scale = 1.0 / static_cast<double>(spectrum.size());
    for (auto& v : out) v *= scale;
    return out;
}

std::vector<double> idft_real(std::span<const Complex> spectrum) {
    const auto z = idft(spectrum);
    std::vector<double> out(z.size());
    std::transform(z.begin(), z.end(), out.begin(), [](const Complex& c) { return c.real(); });
    return out;
}

std::vector<double> magnitudes(std::span<const double> x) {
    const auto X = dft(x);
    std::vector<double> out(X.size());
    std::transform(X.begin(), X.end(), out.begin(), [](const Complex& c) { return std::abs(c); });
    return out;
}

double AmplitudeSpectrum::max() const noexcept {
    return mags.empty() ? 0.0 : *std::max_element(mags.begin(), mags.end());
}

void AmplitudeSpectrum::validate() const {
    if (mags.size() != n)
        throw ContractViolation("amplitude spectrum holds " + std::to_string(mags.size()) + " bins for n=" +
                                std::to_string(n));
    for (double m : mags)
        if (!(m >= 0.0) || !std::isfinite(m)) throw ContractViolation("amplitude spectrum has a negative or non-finite bin");
}

bool AmplitudeSpectrum::is_half_band() const noexcept {
    for (std::size_t k = 0; k < mags.size(); ++k)
        if (!in_half_band(k, n) && mags[k] != 0.0) return false;
    return true;
}

AmplitudeSpectrum target_amplitudes(const TimeSeries& ts) {
    ts.validate();
    const std::size_t n = ts.size();
    AmplitudeSpectrum out;
    out.n = n;
    out.df = 1.0 / (static_cast<double>(n) * ts.dt);
    out.mags = magnitudes(ts.values);
    for (std::size_t k = 0; k < n; ++k)
        if (!in_half_band(k, n)) out.mags[k] = 0.0;
    return out;
}

std::vector<Complex> multisine_spectrum(const AmplitudeSpectrum& amps, std::uint64_t seed) {
    amps.validate();
    if (!amps.is_half_band()) throw ContractViolation("multisine synthesis needs a zero-mean half-band spectrum");
    const std::size_t n = amps.n;
    std::vector<Complex> spectrum(n);
    Rng rng(seed);
    for (std::size_t k = 1; in_half_band(k, n); ++k) {
        const double phi = 2.0 * std::numbers::pi * rng.uniform01();
        spectrum[k] = std::polar(amps.mags[k], phi);
        spectrum[n - k] = std::conj(spectrum[k]);
    }
    return spectrum;
}

std::vector<double> random_phase_multisine(const AmplitudeSpectrum& amps, std::uint64_t seed) {
    return idft_real(multisine_spectrum(amps, seed));
}

PhaseVector spectral_phases(std::span<const double> x) {
    if (x.empty()) throw ContractViolation("phases of an empty sequence");
    const auto X = dft(x);
    double peak = 0.0;
    for (const auto& c : X) peak = std::max(peak, std::abs(c));
    const double eps = 1e-12 * peak;
    PhaseVector out;
    out.phases.resize(X.size());
    for (std::size_t k = 0; k < X.size(); ++k) {
        double phi = std::abs(X[k]) < eps ? 0.0 : std::arg(X[k]);
        if (phi >= std::numbers::pi) phi -= 2.0 * std::numbers::pi;
        out.phases[k] = phi;
    }
    return out;
}

std::vector<double> restore_amplitudes(const AmplitudeSpectrum& amps, const PhaseVector& phases) {
    amps.validate();
    if (phases.phases.size() != amps.n)
        throw ContractViolation("phase vector length " + std::to_string(phases.phases.size()) +
                                " does not match spectrum length " + std::to_string(amps.n));
    std::vector<Complex> spectrum(amps.n);
    for (std::size_t k = 0; k < amps.n; ++k) spectrum[k] = std::polar(amps.mags[k], phases.phases[k]);
    return idft_real(spectrum);
}

namespace {

void check_acf_args(std::span<const double> x, std::size_t max_lag) {
    if (max_lag >= x.size())
        throw ContractViolation("acf lag " + std::to_string(max_lag) + " must be below the series length " +
                                std::to_string(x.size()));
    if (stats::is_constant(x)) throw DegenerateInputError("autocorrelation of a constant series");
}

} // namespace

std::vector<double> acf(std::span<const double> x, std::size_t max_lag) {
    check_acf_args(x, max_lag);
    const std::size_t n = x.size();
    const double m = stats::mean(x);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - m;
    double c0 = 0.0;
    for (double v : d) c0 += v * v;
    std::vector<double> out(max_lag + 1);
    out[0] = 1.0;
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        double c = 0.0;
        for (std::size_t t = 0; t + lag < n; ++t) c += d[t] * d[t + lag];
        out[lag] = c / c0;
    }
    return out;
}

std::vector<double> acf_wiener_khinchin(std::span<const double> x, std::size_t max_lag) {
    check_acf_args(x, max_lag);
    const std::size_t n = x.size();
    const double m = stats::mean(x);
    std::vector<Complex> padded(2 * n);
    for (std::size_t i = 0; i < n; ++i) padded[i] = x[i] - m;
    auto X = dft(std::span<const Complex>(padded));
    for (auto& c : X) c = std::norm(c);
    const auto r = idft(X);
    std::vector<double> out(max_lag + 1);
    for (std::size_t lag = 0; lag <= max_lag; ++lag) out[lag] = r[lag].real() / r[0].real();
    return out;
}

Periodogram periodogram(const TimeSeries& ts, PeriodogramUnits units) {
    ts.validate();
    const std::size_t n = ts.size();
    const auto X = dft(ts.values);
    const double nd = static_cast<double>(n);
    const double df = 1.0 / (nd * ts.dt);
    Periodogram out;
    out.units = units;
    for (std::size_t k = 1; in_half_band(k, n); ++k) {
        const double p = 2.0 * std::norm(X[k]) * ts.dt / nd;
        const double f = static_cast<double>(k) * df;
        out.bins.push_back(k);
        if (units == PeriodogramUnits::Linear) {
            out.freqs.push_back(f);
            out.values.push_back(p);
        } else {
            // density per cycle/hour: the frequency axis stretches by 3600
            const double p_cph = std::max(p / 3600.0, std::numeric_limits<double>::min());
            out.freqs.push_back(f * 3600.0);
            out.values.push_back(10.0 * std::log10(p_cph));
        }
    }
    return out;
}

std::vector<std::size_t> largest_peaks(std::span<const double> values, std::size_t count) {
    std::vector<std::size_t> peaks;
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool left = i == 0 || values[i] > values[i - 1];
        const bool right = i + 1 == n || values[i] >= values[i + 1];
        if (left && right && n > 1) peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    if (peaks.size() > count) peaks.resize(count);
    return peaks;
}

} // namespace prft
