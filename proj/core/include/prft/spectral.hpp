#pragma once

#include "prft/time_series.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace prft {

using Complex = std::complex<double>;

// Transform convention: X_k = sum_n x_n exp(-2 pi j k n / N); the inverse
// carries the 1/N factor. All lengths >= 1 are supported.
std::vector<Complex> dft(std::span<const double> x);
std::vector<Complex> dft(std::span<const Complex> x);
std::vector<Complex> idft(std::span<const Complex> spectrum);
/// Real part of idft().
std::vector<double> idft_real(std::span<const Complex> spectrum);

/// |dft(x)| at every bin.
std::vector<double> magnitudes(std::span<const double> x);

/// True when bins k and N-k of a length-N grid are both strictly inside the
/// retained half band: 0 < k and 2k < N. Excludes DC and, for even N, Nyquist.
constexpr bool in_half_band(std::size_t k, std::size_t n) noexcept { return k > 0 && 2 * k < n; }

/// Fourier magnitudes on the grid f_k = k * df.
struct AmplitudeSpectrum {
    std::vector<double> mags;
    std::size_t n = 0;
    double df = 0.0;  ///< Hz

    double dc() const noexcept { return mags.empty() ? 0.0 : mags[0]; }
    double max() const noexcept;
    /// mags.size() == n and all entries finite and nonnegative.
    void validate() const;
    /// Zero DC and zero at every k with 2k >= n.
    bool is_half_band() const noexcept;
};

/// Spectral phases in [-pi, pi).
struct PhaseVector {
    std::vector<double> phases;
};

/// Magnitudes of the zero-mean, half-band target: |X_k| for 0 < k < N/2,
/// zero at DC and at every k >= N/2.
AmplitudeSpectrum target_amplitudes(const TimeSeries& ts);

/// Full Hermitian spectrum of a random-phase multisine. Bin k of the half
/// band gets mags[k] * exp(j phi_k) with phi_k uniform on [0, 2pi) drawn in
/// order k = 1, 2, ...; bin N-k gets the conjugate; everything else is zero.
std::vector<Complex> multisine_spectrum(const AmplitudeSpectrum& amps, std::uint64_t seed);

/// z_n = 2 Re{ idft(mags e^{j phi}) } over the one-sided half band.
///
/// Computed as the inverse of the Hermitian spectrum from
/// multisine_spectrum(), which is the same sum: the mirrored bins supply the
/// second half of the cosine that the factor 2 restores in the one-sided
/// form. Consequently |dft(z)| equals mags at every retained bin (factor
/// exactly 1) and a single bin of height N/2 yields a unit cosine.
std::vector<double> random_phase_multisine(const AmplitudeSpectrum& amps, std::uint64_t seed);

/// Phase of dft(x) per bin; bins with |X_k| < 1e-12 * max|X| get 0.
PhaseVector spectral_phases(std::span<const double> x);

/// Re{ idft(mags e^{j phi}) }. With Hermitian phases (as produced from any
/// real sequence) and Hermitian magnitudes the inverse is real and its
/// magnitude spectrum reproduces `amps.mags`.
std::vector<double> restore_amplitudes(const AmplitudeSpectrum& amps, const PhaseVector& phases);

/// Biased sample autocorrelation rho(0..max_lag), normalised so rho(0) = 1.
std::vector<double> acf(std::span<const double> x, std::size_t max_lag);
/// Same estimator through the zero-padded power spectrum (Wiener-Khinchin).
std::vector<double> acf_wiener_khinchin(std::span<const double> x, std::size_t max_lag);

enum class PeriodogramUnits { Linear, DbPerCyclePerHour };

/// One-sided periodogram over the half band 0 < k < N/2.
///
/// Linear: freqs in Hz, P_k = 2 |X_k|^2 dt / N in (units^2)/Hz, so that
/// sum_k P_k df is the variance carried by the half band (all of it, except
/// the Nyquist bin for even N).
/// DbPerCyclePerHour: freqs in cycles/hour and values 10 log10(P_k / 3600),
/// i.e. dB relative to 1 unit^2 per cycle/hour. Zero power is floored at the
/// smallest normal double.
struct Periodogram {
    std::vector<double> freqs;
    std::vector<double> values;
    std::vector<std::size_t> bins;  ///< DFT bin index of each entry
    PeriodogramUnits units = PeriodogramUnits::Linear;
};
Periodogram periodogram(const TimeSeries& ts, PeriodogramUnits units = PeriodogramUnits::Linear);

/// Indices of the `count` largest local maxima of `values`, largest first.
/// End points count as maxima when they exceed their single neighbour.
std::vector<std::size_t> largest_peaks(std::span<const double> values, std::size_t count);

} // namespace prft
