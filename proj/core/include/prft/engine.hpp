#pragma once

#include "prft/distribution.hpp"
#include "prft/rng.hpp"
#include "prft/spectral.hpp"
#include "prft/time_series.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace prft {

enum class ConvergenceMetric { SortedRmse, MaxAbs };

/// Which sequence of the final iteration is returned.
enum class OutputVariant {
    PsdExact,  ///< amplitude-restored sequence; spectrum equals the stored one
    PdfExact,  ///< rank-reordered sequence; values are exactly the target sample
};

enum class Termination {
    Tolerance,     ///< discrepancy <= tol
    FixedPoint,    ///< rank order of z stopped changing
    Increase,      ///< discrepancy rose after the second iteration
    IterationCap,  ///< max_iter reached
};

struct PrftOptions {
    std::uint64_t seed = 0;
    double tol = 1e-4;
    std::size_t max_iter = 1000;
    ConvergenceMetric metric = ConvergenceMetric::SortedRmse;
    OutputVariant variant = OutputVariant::PsdExact;

    void validate() const;
};

struct SurrogateResult {
    TimeSeries surrogate;
    std::size_t iterations_used = 0;
    std::vector<double> trace;  ///< discrepancy of the restored sequence, per iteration
    bool converged = false;
    Termination termination = Termination::IterationCap;
    std::uint64_t seed = 0;
    AmplitudeSpectrum stored_amps;
    double discrepancy = 0.0;  ///< of the returned iterate's restored sequence
};

/// a z + b with a = std(y)/std(z), b = mean(y) - a mean(z).
std::vector<double> impose_moments(std::span<const double> z, std::span<const double> y);

/// Permutation of `y_sorted` with the rank order of `z`: the i-th smallest
/// element of y lands where the i-th smallest element of z sits. Ties in z
/// are ranked by position.
std::vector<double> rank_reorder(std::span<const double> y_sorted, std::span<const double> z);

/// Scale-free distance between the value distribution of `z` and the sorted
/// target sample: rmse or max of sorted(z) - y_sorted, divided by std(y).
double discrepancy(std::span<const double> z, std::span<const double> y_sorted,
                   ConvergenceMetric metric = ConvergenceMetric::SortedRmse);

struct Initialization {
    std::vector<double> z0;          ///< moment-matched random-phase multisine
    std::vector<double> y;           ///< ascending target sample
    AmplitudeSpectrum stored;        ///< |dft(z0)|, DC included
};

Initialization initialize(const TimeSeries& ts, const TargetDistribution& dist, std::uint64_t seed);

/// Runs the rank-reorder / phase extraction / amplitude restoration loop.
///
/// Each iteration reorders the target sample to the rank order of the
/// current sequence, takes the phases of the reordered sequence and
/// combines them with the stored magnitudes. The loop ends when the
/// restored sequence's discrepancy reaches opts.tol, when the rank order
/// repeats, when the discrepancy rises after iteration 2 (the previous
/// iterate is returned) or at opts.max_iter. Not converging is reported
/// through `converged`, never thrown.
SurrogateResult generate(const TimeSeries& ts, const TargetDistribution& dist, const PrftOptions& opts);

/// One slot of an ensemble run; `result` is empty iff generation threw.
struct EnsembleMember {
    std::uint64_t seed = 0;
    std::optional<SurrogateResult> result;
    std::string error;
};

/// `count` independent generate() runs seeded by successive draws of
/// `seeds`; opts.seed is ignored. Slots are ordered by draw index whatever
/// the execution order. `threads` = 0 uses the hardware concurrency.
std::vector<EnsembleMember> generate_ensemble(const TimeSeries& ts, const TargetDistribution& dist,
                                              const PrftOptions& opts, std::size_t count,
                                              SeedStream seeds, std::size_t threads = 0);

const char* to_string(Termination t) noexcept;
const char* to_string(ConvergenceMetric m) noexcept;
const char* to_string(OutputVariant v) noexcept;

} // namespace prft
