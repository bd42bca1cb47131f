#include "prft/cli/commands.hpp"

#include "config_file.hpp"
#include "report_json.hpp"

#include "prft/error.hpp"

#include <CLI11.hpp>

#include <map>

namespace prft::cli {

namespace {

const char* error_kind(const std::exception& e) {
    if (dynamic_cast<const FormatError*>(&e)) return "format";
    if (dynamic_cast<const DataQualityError*>(&e)) return "data-quality";
    if (dynamic_cast<const InsufficientDataError*>(&e)) return "insufficient-data";
    if (dynamic_cast<const DegenerateInputError*>(&e)) return "degenerate-input";
    if (dynamic_cast<const DomainError*>(&e)) return "domain";
    if (dynamic_cast<const FitError*>(&e)) return "fit";
    if (dynamic_cast<const ContractViolation*>(&e)) return "contract-violation";
    return "internal";
}

void report_error(std::ostream& err, const char* kind, const std::string& message) {
    err << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

void add_ingest_options(CLI::App* sub, IngestConfig& ing, std::optional<int>& utc_offset) {
    static const std::map<std::string, MissingPolicy> missing{
        {"drop", MissingPolicy::Drop}, {"interpolate", MissingPolicy::Interpolate}, {"fail", MissingPolicy::Fail}};
    static const std::map<std::string, TrimPolicy> trim{
        {"none", TrimPolicy::None}, {"days", TrimPolicy::IntegerDays}, {"years", TrimPolicy::IntegerYears}};
    sub->add_option("--timestamp-column", ing.timestamp_column, "Timestamp column name")->capture_default_str();
    sub->add_option("--value-column", ing.value_column, "Wind speed column name")->capture_default_str();
    sub->add_option("--missing", ing.missing, "Missing-value policy")
        ->transform(CLI::CheckedTransformer(missing, CLI::ignore_case))
        ->default_str("interpolate");
    sub->add_option("--max-gap", ing.max_interp_gap, "Longest gap (samples) the interpolate policy fills")
        ->capture_default_str();
    sub->add_option("--max-drop-fraction", ing.max_drop_fraction, "Largest missing fraction the drop policy accepts")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sub->add_option("--trim", ing.trim, "Trim to whole days or calendar years")
        ->transform(CLI::CheckedTransformer(trim, CLI::ignore_case))
        ->default_str("none");
    sub->add_option("--utc-offset", utc_offset,
                    "Offset in minutes of naive timestamps (e.g. -360 for CST); default assumes UTC");
}

void apply_offset(IngestConfig& ing, const std::optional<int>& utc_offset) {
    if (!utc_offset) return;
    ing.timezone = TimezonePolicy::ExplicitOffset;
    ing.offset_minutes = *utc_offset;
}

void parse_dist(const std::string& text, RunConfig& cfg) {
    if (text == "empirical") cfg.dist = DistKind::Empirical;
    else if (text == "weibull") cfg.dist = DistKind::Weibull;
    else if (text.rfind("table:", 0) == 0 && text.size() > 6) {
        cfg.dist = DistKind::Table;
        cfg.table = text.substr(6);
    } else {
        throw CLI::ValidationError("--dist", "expected empirical, weibull or table:<path>, got '" + text + "'");
    }
}

void parse_formats(const std::vector<std::string>& formats, RunConfig& cfg) {
    cfg.write_json = cfg.write_csv = false;
    for (const auto& f : formats) {
        if (f == "json") cfg.write_json = true;
        else if (f == "csv") cfg.write_csv = true;
        else throw CLI::ValidationError("--format", "expected json and/or csv, got '" + f + "'");
    }
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
    try {
        args = expand_config(args);
    } catch (const std::exception& e) {
        report_error(err, error_kind(e), e.what());
        return 2;
    }

    CLI::App app{"prft: phase-randomised Fourier transform surrogates for wind speed records", "prft"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "prft 0.1.0");

    RunConfig cfg;
    std::optional<int> utc_offset;
    std::string dist_text = "empirical";
    std::uint64_t seed = 0;
    std::vector<std::string> formats{"json", "csv"};
    std::string report_dir;
    std::string compare_dir;

    static const std::map<std::string, OutputVariant> variants{{"psd-exact", OutputVariant::PsdExact},
                                                               {"pdf-exact", OutputVariant::PdfExact}};
    static const std::map<std::string, ConvergenceMetric> metrics{{"sorted-rmse", ConvergenceMetric::SortedRmse},
                                                                  {"max-abs", ConvergenceMetric::MaxAbs}};
    static const std::map<std::string, AcfErrorMode> acf_modes{{"window", AcfErrorMode::Window},
                                                               {"pointwise", AcfErrorMode::Pointwise}};

    auto* gen = app.add_subcommand("generate", "Generate surrogate series from a measured record");
    gen->add_option("--config", "Flat key = value file mirroring these flags (flags win)");
    gen->add_option("--input", cfg.input, "Measured record, timestamp,speed CSV")->required();
    gen->add_option("--dist", dist_text, "Target distribution: empirical, weibull or table:<path>")
        ->capture_default_str();
    gen->add_option("--tol", cfg.prft.tol, "Convergence tolerance on the discrepancy")->capture_default_str();
    gen->add_option("--max-iter", cfg.prft.max_iter, "Iteration cap")->capture_default_str();
    auto* seed_opt = gen->add_option("--seed", seed, "Master seed (default: OS entropy, recorded in the manifest)");
    gen->add_option("--ensemble", cfg.ensemble, "Number of surrogates")->check(CLI::PositiveNumber)->capture_default_str();
    gen->add_option("--threads", cfg.threads, "Worker threads for ensembles (0 = all cores)")->capture_default_str();
    gen->add_option("--variant", cfg.prft.variant, "Returned sequence")
        ->transform(CLI::CheckedTransformer(variants))
        ->default_str("psd-exact");
    gen->add_option("--metric", cfg.prft.metric, "Convergence metric")
        ->transform(CLI::CheckedTransformer(metrics))
        ->default_str("sorted-rmse");
    gen->add_option("--out", cfg.out, "Output directory")->capture_default_str();
    add_ingest_options(gen, cfg.ingest, utc_offset);

    auto* val = app.add_subcommand("validate", "Compare surrogates with the measured record");
    val->add_option("--config", "Flat key = value file mirroring these flags (flags win)");
    val->add_option("--input", cfg.input, "Measured record, timestamp,speed CSV")->required();
    val->add_option("--syn", cfg.surrogates, "Surrogate CSV (repeatable)")->required()->check(CLI::ExistingFile);
    val->add_option("--lags", cfg.validation.lags_hours, "ACF lags in hours")->delimiter(',')->default_str("12,24,48,100");
    val->add_option("--acf-mode", cfg.validation.acf_mode, "ACF error: rmse over the window or at the lag only")
        ->transform(CLI::CheckedTransformer(acf_modes))
        ->default_str("window");
    val->add_option("--quantiles", cfg.validation.n_quantiles, "Q-Q points")->check(CLI::Range(2, 100000))->capture_default_str();
    val->add_option("--format", formats, "Outputs: json, csv or both")->delimiter(',')->default_str("json,csv");
    val->add_option("--out", cfg.out, "Output directory")->capture_default_str();
    add_ingest_options(val, cfg.ingest, utc_offset);

    auto* rep = app.add_subcommand("report", "Print the metrics table of a run directory");
    rep->add_option("dir", report_dir, "Run directory holding manifest.json")->required();
    rep->add_option("--compare", compare_dir, "Second run directory, printed side by side");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        parse_dist(dist_text, cfg);
        if (val->parsed()) parse_formats(formats, cfg);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        report_error(err, "usage", e.what());
        return 2;
    }
    apply_offset(cfg.ingest, utc_offset);
    if (*seed_opt) cfg.seed = seed;

    try {
        if (gen->parsed()) return cmd_generate(cfg, err);
        if (val->parsed()) return cmd_validate(cfg, err);
        std::optional<std::filesystem::path> cmp;
        if (!compare_dir.empty()) cmp = compare_dir;
        return cmd_report(report_dir, cmp, out);
    } catch (const std::exception& e) {
        report_error(err, error_kind(e), e.what());
        return 1;
    }
}

} // namespace prft::cli
