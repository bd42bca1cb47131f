#pragma once

#include "prft/spectral.hpp"
#include "prft/validate.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prft::cli {

/// Shortest round-trip decimal, `.` separator regardless of locale;
/// non-finite values become an empty field.
std::string format_number(double v);

/// Minimal CSV sink. Fields are never quoted, so callers only pass names
/// and numbers.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);
    CsvWriter& operator<<(double v);
    CsvWriter& operator<<(std::string_view s);
    CsvWriter& operator<<(std::size_t v);
    void end_row();
    void close();

private:
    void sep();
    std::filesystem::path path_;
    std::ofstream out_;
    bool fresh_ = true;
};

struct AsvBand {
    std::array<double, 12> lo{};
    std::array<double, 12> hi{};
};

// Column orders here are the contract documented in docs/csv-schemas.md.
void write_pdf_csv(const std::filesystem::path& path, const PdfOverlay& pdf);
void write_acf_csv(const std::filesystem::path& path, double dt, const std::vector<double>& obs,
                   const std::vector<double>& syn);
void write_periodogram_csv(const std::filesystem::path& path, const Periodogram& obs_lin, const Periodogram& syn_lin,
                           const Periodogram& obs_db, const Periodogram& syn_db);
void write_qq_csv(const std::filesystem::path& path, const std::vector<QuantilePair>& qq);
void write_asv_csv(const std::filesystem::path& path, const AsvTable& obs, const std::optional<AsvTable>& syn,
                   const std::optional<AsvTable>& ensemble, const std::optional<AsvBand>& band);

} // namespace prft::cli
