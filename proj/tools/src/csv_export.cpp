#include "csv_export.hpp"

#include "prft/error.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace prft::cli {

std::string format_number(double v) {
    if (!std::isfinite(v)) return {};
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
    : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw FormatError("cannot write " + path.string());
    for (auto h : header) *this << h;
    end_row();
}

void CsvWriter::sep() {
    if (!fresh_) out_ << ',';
    fresh_ = false;
}

CsvWriter& CsvWriter::operator<<(double v) {
    sep();
    out_ << format_number(v);
    return *this;
}

CsvWriter& CsvWriter::operator<<(std::string_view s) {
    sep();
    out_ << s;
    return *this;
}

CsvWriter& CsvWriter::operator<<(std::size_t v) {
    sep();
    out_ << v;
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    fresh_ = true;
}

void CsvWriter::close() {
    out_.close();
    if (!out_) throw FormatError("write failed for " + path_.string());
}

void write_pdf_csv(const std::filesystem::path& path, const PdfOverlay& pdf) {
    CsvWriter csv(path, {"center", "obs_density", "syn_density"});
    for (std::size_t i = 0; i < pdf.centers.size(); ++i) {
        csv << pdf.centers[i] << pdf.obs_density[i] << pdf.syn_density[i];
        csv.end_row();
    }
    csv.close();
}

void write_acf_csv(const std::filesystem::path& path, double dt, const std::vector<double>& obs,
                   const std::vector<double>& syn) {
    CsvWriter csv(path, {"lag", "lag_hours", "obs", "syn"});
    for (std::size_t k = 0; k < obs.size(); ++k) {
        csv << k << static_cast<double>(k) * dt / 3600.0 << obs[k] << syn[k];
        csv.end_row();
    }
    csv.close();
}

void write_periodogram_csv(const std::filesystem::path& path, const Periodogram& obs_lin, const Periodogram& syn_lin,
                           const Periodogram& obs_db, const Periodogram& syn_db) {
    CsvWriter csv(path, {"bin", "freq_hz", "freq_cph", "obs_psd", "syn_psd", "obs_sqrt_psd", "syn_sqrt_psd", "obs_db",
                         "syn_db"});
    for (std::size_t i = 0; i < obs_lin.values.size(); ++i) {
        csv << obs_lin.bins[i] << obs_lin.freqs[i] << obs_db.freqs[i] << obs_lin.values[i] << syn_lin.values[i]
            << std::sqrt(obs_lin.values[i]) << std::sqrt(syn_lin.values[i]) << obs_db.values[i] << syn_db.values[i];
        csv.end_row();
    }
    csv.close();
}

void write_qq_csv(const std::filesystem::path& path, const std::vector<QuantilePair>& qq) {
    CsvWriter csv(path, {"probability", "observed", "surrogate"});
    for (const auto& p : qq) {
        csv << p.probability << p.observed << p.surrogate;
        csv.end_row();
    }
    csv.close();
}

void write_asv_csv(const std::filesystem::path& path, const AsvTable& obs, const std::optional<AsvTable>& syn,
                   const std::optional<AsvTable>& ensemble, const std::optional<AsvBand>& band) {
    CsvWriter csv(path, {"month", "obs_mean", "obs_std", "syn_mean", "syn_std", "ensemble_mean", "ensemble_std",
                         "ensemble_min", "ensemble_max"});
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t m = 0; m < 12; ++m) {
        const auto& o = obs.months[m];
        csv << m + 1 << o.mean << o.interannual_std.value_or(nan);
        if (syn) csv << syn->months[m].mean << syn->months[m].interannual_std.value_or(nan);
        else csv << nan << nan;
        if (ensemble) csv << ensemble->months[m].ensemble_mean.value_or(nan) << ensemble->months[m].ensemble_std.value_or(nan);
        else csv << nan << nan;
        if (band) csv << band->lo[m] << band->hi[m];
        else csv << nan << nan;
        csv.end_row();
    }
    csv.close();
}

} // namespace prft::cli
