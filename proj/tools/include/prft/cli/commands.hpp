#pragma once

#include "prft/engine.hpp"
#include "prft/ingest.hpp"
#include "prft/validate.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

namespace prft::cli {

enum class DistKind { Empirical, Weibull, Table };

/// Everything one `prft` invocation needs, after flags and config file are merged.
struct RunConfig {
    std::filesystem::path input;
    IngestConfig ingest;

    DistKind dist = DistKind::Empirical;
    std::filesystem::path table;  ///< for DistKind::Table

    PrftOptions prft;
    std::optional<std::uint64_t> seed;  ///< drawn from OS entropy when absent
    std::size_t ensemble = 1;
    std::size_t threads = 0;

    std::filesystem::path out = ".";
    bool write_json = true;
    bool write_csv = true;

    std::vector<std::filesystem::path> surrogates;  ///< validate: --syn
    ValidationOptions validation;

    /// Throws ContractViolation on a bad combination.
    void validate() const;
};

/// Schema version of manifest.json and report.json.
inline constexpr int kSchemaVersion = 1;

/// Writes surrogate CSV(s), trace.csv and manifest.json into cfg.out.
/// Returns 0 when every member succeeded, 1 when some failed (their errors
/// are in the manifest). Library errors propagate as exceptions.
int cmd_generate(const RunConfig& cfg, std::ostream& log);

/// Writes report.json and the plot CSVs into cfg.out and records the run
/// in manifest.json (created if absent).
int cmd_validate(const RunConfig& cfg, std::ostream& log);

/// Prints the metrics table of one run directory, or two side by side.
int cmd_report(const std::filesystem::path& dir, const std::optional<std::filesystem::path>& compare,
               std::ostream& out);

/// Full command line entry point; never throws. Errors go to `err` as a
/// single JSON line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace prft::cli
