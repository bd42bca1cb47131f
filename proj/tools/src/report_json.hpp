#pragma once

#include "prft/engine.hpp"
#include "prft/validate.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace prft::cli {

using Json = nlohmann::ordered_json;

/// Non-finite values serialize as null.
Json number_or_null(double v);
Json optional_number(const std::optional<double>& v);

Json series_info(const TimeSeries& ts, const std::filesystem::path& path);
Json asv_to_json(const AsvTable& t);
Json report_to_json(const ValidationReport& r, const std::filesystem::path& syn_path);

/// Mean of each scalar metric over the surrogates in `reports` (a
/// `surrogates` array as produced by report_to_json).
Json summarize(const Json& reports);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

std::string utc_now_iso8601();

} // namespace prft::cli
