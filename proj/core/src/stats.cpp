#include "prft/stats.hpp"

#include "prft/error.hpp"

#include <algorithm>
#include <cmath>

namespace prft::stats {

double mean(std::span<const double> x) {
    if (x.empty()) throw ContractViolation("mean of an empty sequence");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x, double m) {
    if (x.empty()) throw ContractViolation("variance of an empty sequence");
    double ss = 0.0;
    double comp = 0.0;
    for (double v : x) {
        const double d = v - m;
        ss += d * d;
        comp += d;
    }
    const double n = static_cast<double>(x.size());
    // second term corrects rounding in m
    return std::max(0.0, (ss - comp * comp / n) / n);
}

double variance(std::span<const double> x) { return variance(x, mean(x)); }

double stddev(std::span<const double> x) { return std::sqrt(variance(x)); }

double sample_stddev(std::span<const double> x) {
    if (x.size() < 2) throw ContractViolation("sample standard deviation needs two values");
    const double n = static_cast<double>(x.size());
    return std::sqrt(variance(x) * n / (n - 1.0));
}

bool is_constant(std::span<const double> x) {
    return std::adjacent_find(x.begin(), x.end(), [](double a, double b) { return a != b; }) == x.end();
}

} // namespace prft::stats
