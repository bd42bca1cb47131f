#pragma once

#include <span>

namespace prft::stats {

double mean(std::span<const double> x);
/// Population variance (divide by N), two-pass.
double variance(std::span<const double> x, double mean);
double variance(std::span<const double> x);
double stddev(std::span<const double> x);
/// Sample standard deviation (divide by N-1); requires N >= 2.
double sample_stddev(std::span<const double> x);
bool is_constant(std::span<const double> x);

} // namespace prft::stats
