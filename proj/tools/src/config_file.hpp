#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace prft::cli {

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Flat `key = value` file. Blank lines and lines starting with `#` or `;`
/// are skipped; values may be quoted; repeated keys are kept in order.
/// Underscores in keys read as dashes so `max_iter` and `max-iter` agree.
ConfigEntries read_config_file(const std::filesystem::path& path);

/// Replaces `--config FILE` (or `--config=FILE`) in `args` with the file's
/// entries as `--key value` pairs, skipping keys already given on the
/// command line so that explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

} // namespace prft::cli
