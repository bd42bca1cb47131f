#include "prft/cli/commands.hpp"

#include "csv_export.hpp"
#include "report_json.hpp"

#include "prft/calendar.hpp"
#include "prft/distribution.hpp"
#include "prft/error.hpp"
#include "prft/rng.hpp"
#include "prft/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace fs = std::filesystem;

namespace prft::cli {

void RunConfig::validate() const {
    if (ensemble < 1) throw ContractViolation("--ensemble must be at least 1");
    for (double lag : validation.lags_hours)
        if (!(lag > 0.0)) throw ContractViolation("lags must be positive");
    if (!write_json && !write_csv) throw ContractViolation("--format selects no output");
    prft.validate();
}

namespace {

// Creates the directory and proves it is writable before any work starts.
void prepare_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw FormatError("cannot create output directory " + dir.string() + ": " + ec.message());
    const auto probe = dir / ".prft-write-test";
    {
        std::ofstream f(probe);
        if (!f) throw FormatError("output directory " + dir.string() + " is not writable");
    }
    fs::remove(probe, ec);
}

TargetDistribution make_distribution(const RunConfig& cfg, const TimeSeries& ts) {
    switch (cfg.dist) {
        case DistKind::Empirical: return fit_empirical(ts);
        case DistKind::Weibull: return fit_weibull(ts);
        case DistKind::Table: return load_custom_table(cfg.table);
    }
    throw ContractViolation("unknown distribution kind");
}

Json distribution_json(const RunConfig& cfg, const TargetDistribution& d) {
    Json j;
    switch (d.kind()) {
        case TargetDistribution::Kind::Empirical:
            j["kind"] = "empirical";
            j["samples"] = d.as_empirical()->sorted.size();
            break;
        case TargetDistribution::Kind::Weibull:
            j["kind"] = "weibull";
            j["shape"] = d.as_weibull()->shape;
            j["scale"] = d.as_weibull()->scale;
            break;
        case TargetDistribution::Kind::CustomTable:
            j["kind"] = "table";
            j["path"] = cfg.table.string();
            j["rows"] = d.as_custom_table()->u.size();
            break;
    }
    return j;
}

std::string member_file(std::size_t i, std::size_t count) {
    if (count == 1) return "surrogate.csv";
    char buf[32];
    std::snprintf(buf, sizeof buf, "surrogate_%03zu.csv", i);
    return buf;
}

std::string seed_text(std::uint64_t s) { return std::to_string(s); }

Json load_or_new_manifest(const fs::path& path) {
    if (fs::exists(path)) return read_json(path);
    Json m;
    m["schema_version"] = kSchemaVersion;
    m["tool"] = "prft";
    return m;
}

} // namespace

int cmd_generate(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    prepare_out_dir(cfg.out);
    const auto started = std::chrono::steady_clock::now();

    const auto ts = load_series(cfg.input, cfg.ingest);
    const auto dist = make_distribution(cfg, ts);
    const std::uint64_t master = cfg.seed.value_or(entropy_seed());

    // A single run uses the seed as given, so `--seed S` reproduces
    // generate() with opts.seed = S. Ensembles expand it into a stream.
    std::vector<EnsembleMember> members;
    if (cfg.ensemble == 1) {
        PrftOptions o = cfg.prft;
        o.seed = master;
        members.resize(1);
        members[0].seed = master;
        try {
            members[0].result = generate(ts, dist, o);
        } catch (const std::exception& e) {
            members[0].error = e.what();
        }
    } else {
        members = generate_ensemble(ts, dist, cfg.prft, cfg.ensemble, SeedStream(master), cfg.threads);
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    // single writer: all files are produced here, after the workers are done
    CsvWriter trace(cfg.out / "trace.csv", {"member", "iteration", "discrepancy"});
    Json list = Json::array();
    std::size_t failed = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& m = members[i];
        Json entry;
        entry["index"] = i;
        entry["seed"] = seed_text(m.seed);
        if (!m.result) {
            ++failed;
            entry["error"] = m.error;
            list.push_back(entry);
            log << "member " << i << " failed: " << m.error << '\n';
            continue;
        }
        const auto& r = *m.result;
        const auto file = member_file(i, members.size());
        write_series(r.surrogate, cfg.out / file);
        for (std::size_t it = 0; it < r.trace.size(); ++it) {
            trace << i << it + 1 << r.trace[it];
            trace.end_row();
        }
        entry["file"] = file;
        entry["iterations"] = r.iterations_used;
        entry["converged"] = r.converged;
        entry["termination"] = to_string(r.termination);
        entry["discrepancy"] = number_or_null(r.discrepancy);
        list.push_back(entry);
    }
    trace.close();

    const auto manifest_path = cfg.out / "manifest.json";
    Json manifest = load_or_new_manifest(manifest_path);
    manifest["schema_version"] = kSchemaVersion;
    Json g;
    g["created"] = utc_now_iso8601();
    g["input"] = series_info(ts, cfg.input);
    g["distribution"] = distribution_json(cfg, dist);
    g["seed"] = seed_text(master);
    g["seed_source"] = cfg.seed ? "flag" : "entropy";
    g["tol"] = cfg.prft.tol;
    g["max_iter"] = cfg.prft.max_iter;
    g["metric"] = to_string(cfg.prft.metric);
    g["variant"] = to_string(cfg.prft.variant);
    g["ensemble"] = cfg.ensemble;
    g["threads"] = cfg.threads;
    g["elapsed_seconds"] = elapsed;
    g["members"] = list;
    g["trace"] = "trace.csv";
    manifest["generate"] = g;
    write_json(manifest_path, manifest);

    const std::size_t ok = members.size() - failed;
    std::size_t converged = 0;
    for (const auto& m : members)
        if (m.result && m.result->converged) ++converged;
    log << "generated " << ok << " of " << members.size() << " surrogate(s), " << converged
        << " converged, seed " << master << ", " << std::fixed << std::setprecision(2) << elapsed << " s\n";
    return failed == 0 ? 0 : 1;
}

int cmd_validate(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    if (cfg.surrogates.empty()) throw ContractViolation("validate needs at least one --syn file");
    prepare_out_dir(cfg.out);

    const auto obs = load_series(cfg.input, cfg.ingest);
    IngestConfig syn_cfg;  // surrogates are written by this tool: timestamp,speed and no gaps
    syn_cfg.missing = MissingPolicy::Fail;
    std::vector<TimeSeries> syn;
    for (const auto& p : cfg.surrogates) {
        auto s = load_series(p, syn_cfg);
        if (std::abs(s.dt - obs.dt) > 1e-9 * obs.dt)
            throw ContractViolation("incompatible sampling intervals: " + p.string() + " has dt " +
                                    format_number(s.dt) + " s, observed record " + format_number(obs.dt) + " s");
        if (s.size() != obs.size())
            throw ContractViolation("length mismatch: " + p.string() + " has " + std::to_string(s.size()) +
                                    " samples, observed record " + std::to_string(obs.size()));
        syn.push_back(std::move(s));
    }

    std::vector<ValidationReport> reports;
    for (const auto& s : syn) reports.push_back(validate_pair(obs, s, cfg.validation));

    std::optional<AsvTable> obs_asv = reports.front().asv_obs;
    std::optional<AsvTable> ens_asv;
    std::optional<AsvBand> band;
    if (obs_asv) {
        ens_asv = asv_ensemble(std::span<const TimeSeries>(syn), *obs.start);
        AsvBand b;
        b.lo.fill(std::numeric_limits<double>::infinity());
        b.hi.fill(-std::numeric_limits<double>::infinity());
        for (auto s : syn) {
            s.start = obs.start;
            const auto t = asv(s);
            for (std::size_t m = 0; m < 12; ++m) {
                b.lo[m] = std::min(b.lo[m], t.months[m].mean);
                b.hi[m] = std::max(b.hi[m], t.months[m].mean);
            }
        }
        band = b;
    }

    std::vector<std::string> written;
    if (cfg.write_json) {
        Json rep;
        rep["schema_version"] = kSchemaVersion;
        rep["created"] = utc_now_iso8601();
        rep["observed"] = series_info(obs, cfg.input);
        rep["options"] = {{"lags_hours", cfg.validation.lags_hours},
                          {"acf_mode", cfg.validation.acf_mode == AcfErrorMode::Window ? "window" : "pointwise"},
                          {"n_quantiles", cfg.validation.n_quantiles},
                          {"peaks", cfg.validation.peaks}};
        Json list = Json::array();
        for (std::size_t i = 0; i < reports.size(); ++i) list.push_back(report_to_json(reports[i], cfg.surrogates[i]));
        rep["summary"] = summarize(list);
        rep["surrogates"] = list;
        rep["asv_observed"] = obs_asv ? asv_to_json(*obs_asv) : Json(nullptr);
        rep["asv_ensemble"] = ens_asv ? asv_to_json(*ens_asv) : Json(nullptr);
        write_json(cfg.out / "report.json", rep);
        written.push_back("report.json");
    }

    if (cfg.write_csv) {
        // plot data describe the first surrogate; asv.csv also carries the ensemble
        const auto& s0 = syn.front();
        write_pdf_csv(cfg.out / "pdf.csv", pdf_overlay(obs.values, s0.values));
        const double max_hours = *std::max_element(cfg.validation.lags_hours.begin(), cfg.validation.lags_hours.end());
        const auto max_lag = std::min(static_cast<std::size_t>(std::llround(max_hours * 3600.0 / obs.dt)), obs.size() - 1);
        write_acf_csv(cfg.out / "acf.csv", obs.dt, acf(obs.values, max_lag), acf(s0.values, max_lag));
        write_periodogram_csv(cfg.out / "periodogram.csv", periodogram(obs), periodogram(s0),
                              periodogram(obs, PeriodogramUnits::DbPerCyclePerHour),
                              periodogram(s0, PeriodogramUnits::DbPerCyclePerHour));
        write_qq_csv(cfg.out / "qq.csv", reports.front().qq);
        written.insert(written.end(), {"pdf.csv", "acf.csv", "periodogram.csv", "qq.csv"});
        if (obs_asv) {
            write_asv_csv(cfg.out / "asv.csv", *obs_asv, reports.front().asv_syn, ens_asv, band);
            written.push_back("asv.csv");
        }

        CsvWriter metrics(cfg.out / "metrics.csv", {"surrogate", "metric", "value"});
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& r = reports[i];
            const auto name = cfg.surrogates[i].filename().string();
            auto row = [&](std::string_view metric, double v) {
                metrics << std::string_view(name) << metric << v;
                metrics.end_row();
            };
            row("r2_cdf", r.r2_cdf);
            row("rmse_cdf", r.rmse_cdf);
            for (const auto& [lag, err] : r.rmse_acf_at) row("rmse_acf_" + format_number(lag) + "h", err);
            row("rmse_psd", r.rmse_psd);
            row("rmse_per", r.rmse_per);
        }
        metrics.close();
        written.push_back("metrics.csv");
    }

    const auto manifest_path = cfg.out / "manifest.json";
    Json manifest = load_or_new_manifest(manifest_path);
    Json v;
    v["created"] = utc_now_iso8601();
    v["observed"] = cfg.input.string();
    Json files = Json::array();
    for (const auto& p : cfg.surrogates) files.push_back(p.string());
    v["surrogates"] = files;
    v["artifacts"] = written;
    manifest["validate"] = v;
    write_json(manifest_path, manifest);

    log << "validated " << reports.size() << " surrogate(s) against " << cfg.input.string() << '\n';
    return 0;
}

namespace {

struct RunSummary {
    std::string name;
    std::vector<std::pair<std::string, std::string>> rows;
};

std::string cell(const Json& v, int precision = 6) {
    if (!v.is_number()) return "-";
    std::ostringstream s;
    const double x = v.get<double>();
    if (x != 0.0 && (std::abs(x) < 1e-3 || std::abs(x) >= 1e6)) s << std::scientific << std::setprecision(precision - 1) << x;
    else s << std::fixed << std::setprecision(precision) << x;
    return s.str();
}

RunSummary summarize_run(const fs::path& dir) {
    const auto manifest_path = dir / "manifest.json";
    if (!fs::exists(manifest_path)) throw FormatError("no manifest.json in " + dir.string());
    const auto manifest = read_json(manifest_path);

    RunSummary out;
    out.name = dir.filename().empty() ? dir.parent_path().filename().string() : dir.filename().string();
    Json summary;
    if (fs::exists(dir / "report.json")) summary = read_json(dir / "report.json").value("summary", Json());

    auto metric = [&](const char* key) { return summary.is_object() && summary.contains(key) ? summary[key] : Json(); };
    out.rows.emplace_back("R2_CDF", cell(metric("r2_cdf"), 8));
    out.rows.emplace_back("RMSE_CDF", cell(metric("rmse_cdf")));
    // lag rows follow the report's own lag list; the default list fills the table when no report exists
    std::vector<std::pair<std::string, Json>> acf_rows;
    if (summary.is_object() && summary.contains("rmse_acf"))
        for (const auto& e : summary["rmse_acf"]) acf_rows.emplace_back(format_number(e["lag_hours"].get<double>()), e["value"]);
    else
        for (const char* lag : {"12", "24", "48", "100"}) acf_rows.emplace_back(lag, Json());
    for (auto& [lag, v] : acf_rows) out.rows.emplace_back("RMSE_ACF(" + lag + "h)", cell(v));
    out.rows.emplace_back("RMSE_PSD", cell(metric("rmse_psd")));
    out.rows.emplace_back("RMSE_PER(dB)", cell(metric("rmse_per")));

    if (manifest.contains("generate")) {
        const auto& g = manifest["generate"];
        std::size_t n = 0, conv = 0, iters = 0;
        for (const auto& m : g.value("members", Json::array())) {
            if (!m.contains("iterations")) continue;
            ++n;
            iters += m["iterations"].get<std::size_t>();
            if (m.value("converged", false)) ++conv;
        }
        out.rows.emplace_back("members", std::to_string(n));
        out.rows.emplace_back("converged", std::to_string(conv) + "/" + std::to_string(n));
        out.rows.emplace_back("mean iterations", n ? cell(Json(static_cast<double>(iters) / static_cast<double>(n)), 1) : "-");
        out.rows.emplace_back("seed", g.value("seed", std::string("-")));
    } else {
        for (const char* k : {"members", "converged", "mean iterations", "seed"}) out.rows.emplace_back(k, "-");
    }
    return out;
}

} // namespace

int cmd_report(const fs::path& dir, const std::optional<fs::path>& compare, std::ostream& out) {
    std::vector<RunSummary> runs{summarize_run(dir)};
    if (compare) runs.push_back(summarize_run(*compare));

    std::size_t label_w = 6;
    for (const auto& [k, v] : runs.front().rows) label_w = std::max(label_w, k.size());
    std::vector<std::size_t> col_w;
    for (const auto& r : runs) {
        std::size_t w = r.name.size();
        for (const auto& [k, v] : r.rows) w = std::max(w, v.size());
        col_w.push_back(w);
    }

    out << std::left << std::setw(static_cast<int>(label_w)) << "metric";
    for (std::size_t c = 0; c < runs.size(); ++c) out << "  " << std::right << std::setw(static_cast<int>(col_w[c])) << runs[c].name;
    out << '\n';
    auto lookup = [](const RunSummary& r, const std::string& label) -> std::string {
        for (const auto& [k, v] : r.rows)
            if (k == label) return v;
        return "-";
    };
    for (const auto& [label, first] : runs.front().rows) {
        out << std::left << std::setw(static_cast<int>(label_w)) << label;
        for (std::size_t c = 0; c < runs.size(); ++c)
            out << "  " << std::right << std::setw(static_cast<int>(col_w[c])) << lookup(runs[c], label);
        out << '\n';
    }
    return 0;
}

} // namespace prft::cli
