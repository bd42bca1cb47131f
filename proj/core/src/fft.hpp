#pragma once

#include <complex>
#include <span>

namespace prft::detail {

enum class FftDirection { Forward, Backward };

/// Unnormalised complex transform, out-of-place. `in` and `out` must have the
/// same length and must not overlap.
void fft(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, FftDirection dir);

} // namespace prft::detail
