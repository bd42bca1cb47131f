#include "config_file.hpp"

#include "prft/error.hpp"

#include <fstream>
#include <optional>
#include <set>

namespace prft::cli {

namespace {

std::string strip(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string flag_name(std::string_view arg) {
    auto name = arg.substr(2);
    if (const auto eq = name.find('='); eq != std::string_view::npos) name = name.substr(0, eq);
    return std::string(name);
}

} // namespace

ConfigEntries read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open config file " + path.string());
    ConfigEntries entries;
    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        const auto text = strip(line);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
        auto key = strip(std::string_view(text).substr(0, eq));
        auto value = strip(std::string_view(text).substr(eq + 1));
        if (key.empty()) throw FormatError(path.string() + ":" + std::to_string(line_no) + ": empty key");
        for (auto& c : key)
            if (c == '_') c = '-';
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
            value = value.substr(1, value.size() - 2);
        entries.emplace_back(std::move(key), std::move(value));
    }
    return entries;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> kept;
    std::optional<std::string> file;
    std::size_t config_at = 0;
    std::set<std::string> given;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& a = args[i];
        if (a == "--config" && i + 1 < args.size()) {
            file = args[++i];
            config_at = kept.size();
            continue;
        }
        if (a.rfind("--config=", 0) == 0) {
            file = a.substr(9);
            config_at = kept.size();
            continue;
        }
        if (a.rfind("--", 0) == 0 && a.size() > 2) given.insert(flag_name(a));
        kept.push_back(a);
    }
    if (!file) return args;

    std::vector<std::string> from_file;
    for (const auto& [key, value] : read_config_file(*file)) {
        if (given.contains(key)) continue;
        from_file.push_back("--" + key);
        from_file.push_back(value);
    }
    kept.insert(kept.begin() + static_cast<std::ptrdiff_t>(config_at), from_file.begin(), from_file.end());
    return kept;
}

} // namespace prft::cli
