#include "report_json.hpp"

#include "prft/calendar.hpp"
#include "prft/error.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

namespace prft::cli {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json optional_number(const std::optional<double>& v) { return v ? number_or_null(*v) : Json(nullptr); }

Json series_info(const TimeSeries& ts, const std::filesystem::path& path) {
    Json j;
    j["path"] = path.string();
    j["n"] = ts.size();
    j["dt"] = ts.dt;
    j["start"] = ts.start ? Json(calendar::format_iso8601(*ts.start)) : Json(nullptr);
    j["gaps"] = ts.meta.gaps;
    j["filled"] = ts.meta.filled;
    j["dropped"] = ts.meta.dropped;
    j["trimmed"] = ts.meta.trimmed;
    return j;
}

Json asv_to_json(const AsvTable& t) {
    Json rows = Json::array();
    for (std::size_t m = 0; m < 12; ++m) {
        const auto& r = t.months[m];
        rows.push_back({{"month", m + 1},
                        {"mean", number_or_null(r.mean)},
                        {"interannual_std", optional_number(r.interannual_std)},
                        {"years", r.years},
                        {"ensemble_mean", optional_number(r.ensemble_mean)},
                        {"ensemble_std", optional_number(r.ensemble_std)}});
    }
    return rows;
}

Json report_to_json(const ValidationReport& r, const std::filesystem::path& syn_path) {
    Json j;
    j["path"] = syn_path.string();
    j["r2_cdf"] = number_or_null(r.r2_cdf);
    j["rmse_cdf"] = number_or_null(r.rmse_cdf);
    Json acf = Json::array();
    for (const auto& [lag, err] : r.rmse_acf_at) acf.push_back({{"lag_hours", lag}, {"value", number_or_null(err)}});
    j["rmse_acf"] = acf;
    j["acf_mode"] = r.acf_mode == AcfErrorMode::Window ? "window" : "pointwise";
    j["rmse_psd"] = number_or_null(r.rmse_psd);
    j["rmse_per"] = number_or_null(r.rmse_per);
    j["peaks"] = {{"observed_hz", r.obs_peak_freqs}, {"surrogate_hz", r.syn_peak_freqs}};
    Json qq = Json::array();
    for (const auto& p : r.qq)
        qq.push_back({{"probability", p.probability}, {"observed", p.observed}, {"surrogate", p.surrogate}});
    j["qq"] = qq;
    j["asv"] = r.asv_syn ? asv_to_json(*r.asv_syn) : Json(nullptr);
    return j;
}

Json summarize(const Json& reports) {
    Json s;
    if (reports.empty()) return s;
    const double n = static_cast<double>(reports.size());
    auto mean_of = [&](auto get) {
        double acc = 0.0;
        for (const auto& r : reports) {
            const Json& v = get(r);
            if (!v.is_number()) return Json(nullptr);
            acc += v.template get<double>();
        }
        return Json(acc / n);
    };
    for (const char* key : {"r2_cdf", "rmse_cdf", "rmse_psd", "rmse_per"})
        s[key] = mean_of([&](const Json& r) -> const Json& { return r.at(key); });
    Json acf = Json::array();
    const auto& first = reports.front().at("rmse_acf");
    for (std::size_t i = 0; i < first.size(); ++i)
        acf.push_back({{"lag_hours", first[i].at("lag_hours")},
                       {"value", mean_of([&](const Json& r) -> const Json& { return r.at("rmse_acf").at(i).at("value"); })}});
    s["rmse_acf"] = acf;
    s["count"] = reports.size();
    return s;
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    out.close();
    if (!out) throw FormatError("write failed for " + path.string());
}

std::string utc_now_iso8601() {
    return calendar::format_iso8601(std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now()));
}

} // namespace prft::cli
