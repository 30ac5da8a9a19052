#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pvperf/pvperf.hpp"

namespace pvperf::cli {
namespace {

using ojson = nlohmann::ordered_json;

struct Globals {
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    bool lenient = false;
};

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::usage: return 1;
        case ErrorKind::data: return 2;
        case ErrorKind::config: return 3;
    }
    return 2;
}

void write_error(std::ostream& err, ErrorKind kind, const std::string& module, const std::string& message,
                 const std::string& file = {}, std::size_t line = 0) {
    ojson e;
    e["kind"] = to_string(kind);
    e["module"] = module;
    e["message"] = message;
    e["file"] = file.empty() ? ojson(nullptr) : ojson(file);
    e["line"] = line == 0 ? ojson(nullptr) : ojson(line);
    err << ojson{{"error", e}}.dump() << '\n';
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cli_report", "cannot open '" + path + "'", 0, path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw DataError("cli_report", "cannot write '" + tmp.string() + "'");
        f << text;
        f.flush();
        if (!f) throw DataError("cli_report", "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw DataError("cli_report", "cannot rename onto '" + path.string() + "'");
    }
}

template <class Series>
Series parse_file(const std::string& path, Series (*parser)(std::istream&)) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("ingestion", "cannot open '" + path + "'", 0, path);
    try {
        return parser(in);
    } catch (const Error& e) {
        e.rethrow_with_file(path);
    }
}

LocalDate parse_date(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3)
        throw UsageError("--start expects YYYY-MM-DD, got '" + text + "'");
    LocalDate date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) throw UsageError("--start is not a calendar date: '" + text + "'");
    return date;
}

class App {
public:
    App(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(const std::vector<std::string>& args);

private:
    Config load_config() const {
        return g_.config_path.empty() ? Config{} : load_config_file(g_.config_path, g_.lenient);
    }

    Config load_valid_config() const {
        Config cfg = load_config();
        if (auto report = validate_config(cfg); !report.ok()) {
            const auto& v = report.violations.front();
            throw ConfigError("core_model", v.field + ": " + v.message);
        }
        return cfg;
    }

    ReportFormat format() const {
        auto f = parse_report_format(g_.format);
        if (!f) throw UsageError("--format must be json, csv or md");
        return *f;
    }

    void emit(const std::string& text) const {
        if (g_.out_path.empty()) {
            out_ << text;
        } else {
            write_atomic(g_.out_path, text);
        }
    }

    void emit_document(const std::string& json, const char* title) const {
        emit(render_document(json, format(), title));
    }

    void cmd_validate();
    void cmd_transpose();
    void cmd_analyze();
    void cmd_correlate();
    void cmd_impact();
    void cmd_synth();
    void cmd_benchmark();

    std::ostream& out_;
    std::ostream& err_;
    Globals g_;
    int status_ = 0;

    std::string generation_path_;
    std::string weather_path_;
    std::string year_basis_ = "generic";
    std::string table_csv_;
    std::string plot_data_;
    std::string report_path_;
    std::optional<double> energy_, export_, rate_, tariff_, degradation_;
    std::optional<double> pr_, cuf_, eta_sys_;
    std::uint64_t seed_ = 42;
    int days_ = 365;
    std::string start_ = "2021-01-01";
    std::string out_dir_;
};

void App::cmd_validate() {
    ojson doc;
    Config cfg = load_config();
    const ValidationReport report = validate_config(cfg);
    doc["config"] = ojson::parse(to_json(report));
    if (!generation_path_.empty()) {
        const auto gen = parse_file(generation_path_, &parse_generation_csv);
        doc["generation"] = {{"records", gen.records.size()}, {"gaps", gen.gaps.size()}};
    }
    if (!weather_path_.empty()) {
        const auto wx = parse_file(weather_path_, &parse_weather_csv);
        doc["weather"] = {{"records", wx.records.size()}, {"gaps", wx.gaps.size()}};
    }
    emit_document(doc.dump(), "Validation");
    if (!report.ok()) {
        const auto& v = report.violations.front();
        throw ConfigError("core_model", v.field + ": " + v.message);
    }
}

void App::cmd_transpose() {
    const Config cfg = load_valid_config();
    const auto wx = parse_file(weather_path_, &parse_weather_csv);
    emit(serialize_weather_csv(fill_poa(wx.records, cfg.system)));
}

YearBasis parse_basis(const std::string& text) {
    if (text == "generic") return YearBasis::generic;
    if (text == "calendar") return YearBasis::calendar;
    throw UsageError("--year-basis must be generic or calendar");
}

void App::cmd_analyze() {
    const Config cfg = load_valid_config();
    const ReportFormat fmt = format();
    AnalyzeOptions options;
    options.year_basis = parse_basis(year_basis_);
    const Report report = analyze_files(cfg, generation_path_, weather_path_, options);
    if (!table_csv_.empty()) write_atomic(table_csv_, monthly_table_csv(report.monthly));
    emit(render_report(report, fmt));
}

void App::cmd_correlate() {
    const Config cfg = load_valid_config();
    const auto gen = parse_file(generation_path_, &parse_generation_csv);
    const auto wx = parse_file(weather_path_, &parse_weather_csv);
    const CorrelationReport report = correlation_report(align(gen, wx, cfg.system));
    if (!plot_data_.empty()) write_atomic(plot_data_, plot_data_csv(report));
    emit_document(correlation_to_json(report), "Weather-class correlation");
}

void App::cmd_impact() {
    Config cfg = load_config();
    if (rate_) cfg.finance.discount_rate = *rate_;
    if (tariff_) cfg.finance.tariff_per_kwh = *tariff_;
    if (degradation_) cfg.finance.degradation_rate = *degradation_;
    if (auto report = validate_config(cfg); !report.ok()) {
        const auto& v = report.violations.front();
        throw ConfigError("impact", v.field + ": " + v.message);
    }
    double energy = kReferenceImpact.annual_energy_kwh;
    double exported = kReferenceImpact.annual_export_kwh;
    if (!report_path_.empty()) {
        try {
            std::tie(energy, exported) = annual_energy_from_report_json(read_file(report_path_));
        } catch (const Error& e) {
            e.rethrow_with_file(report_path_);
        }
    } else if (energy_) {
        energy = *energy_;
        exported = export_ ? *export_ : energy * cfg.finance.grid_export_fraction;
    } else if (export_) {
        throw UsageError("--export requires --energy");
    }
    if (energy < 0 || exported < 0 || exported > energy * (1.0 + kMeterTolerance))
        throw DataError("impact", "annual energy and export must satisfy 0 <= export <= energy");
    const ImpactResult r = evaluate_impact(cfg.finance, cfg.emissions, cfg.system.p_rated_kwp, energy, exported);
    emit_document(impact_to_json(r, cfg.finance.currency_label), "Economic and environmental impact");
}

void App::cmd_synth() {
    const Config cfg = load_valid_config();
    SynthConfig scfg;
    scfg.seed = seed_;
    scfg.n_days = days_;
    scfg.start_date = parse_date(start_);
    if (auto report = validate_synth_config(scfg); !report.ok()) {
        const auto& v = report.violations.front();
        throw ConfigError("synth", v.field + ": " + v.message);
    }
    const SynthCsv csv = generate(cfg.system, scfg);
    const std::filesystem::path dir = out_dir_.empty() ? (g_.out_path.empty() ? "." : g_.out_path) : out_dir_;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw DataError("synth", "cannot create directory '" + dir.string() + "'");
    write_atomic(dir / "generation.csv", csv.generation_csv);
    write_atomic(dir / "weather.csv", csv.weather_csv);
}

void App::cmd_benchmark() {
    BenchmarkComparison c;
    if (!report_path_.empty()) {
        try {
            c = benchmark_from_report_json(read_file(report_path_));
        } catch (const Error& e) {
            e.rethrow_with_file(report_path_);
        }
    } else if (pr_) {
        c = benchmark_compare(*pr_, cuf_, eta_sys_);
    } else {
        throw UsageError("benchmark needs --report or --pr");
    }
    emit_document(benchmark_to_json(c), "Cross-study benchmark");
}

int App::run(const std::vector<std::string>& args) {
    CLI::App app{"Rooftop PV performance analysis toolkit", args.empty() ? "pvperf" : args.front()};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", g_.config_path, "Configuration JSON");
    app.add_option("--out", g_.out_path, "Output file (stdout when omitted); output directory for synth");
    app.add_option("--format", g_.format, "Output format")->check(CLI::IsMember({"json", "csv", "md"}));
    app.add_flag("--lenient", g_.lenient, "Ignore unknown configuration keys");

    std::function<void()> action;
    auto bind = [&](CLI::App* sub, void (App::*fn)()) { sub->callback([&action, this, fn] { action = [this, fn] { (this->*fn)(); }; }); };

    auto* validate = app.add_subcommand("validate", "Check a configuration and optional input files");
    validate->add_option("--generation", generation_path_, "Generation CSV");
    validate->add_option("--weather", weather_path_, "Weather CSV");
    bind(validate, &App::cmd_validate);

    auto* transpose = app.add_subcommand("transpose", "Fill gpoa_w_m2 by transposition");
    transpose->add_option("weather", weather_path_, "Weather CSV")->required();
    bind(transpose, &App::cmd_transpose);

    auto* analyze = app.add_subcommand("analyze", "Full performance report");
    analyze->add_option("generation", generation_path_, "Generation CSV")->required();
    analyze->add_option("weather", weather_path_, "Weather CSV")->required();
    analyze->add_option("--year-basis", year_basis_, "generic or calendar")
        ->check(CLI::IsMember({"generic", "calendar"}));
    analyze->add_option("--table-csv", table_csv_, "Also write the monthly table as CSV");
    bind(analyze, &App::cmd_analyze);

    auto* correlate = app.add_subcommand("correlate", "Weather-class statistics and plot data");
    correlate->add_option("generation", generation_path_, "Generation CSV")->required();
    correlate->add_option("weather", weather_path_, "Weather CSV")->required();
    correlate->add_option("--plot-data", plot_data_, "Write hourly class profiles as CSV");
    bind(correlate, &App::cmd_correlate);

    auto* impact = app.add_subcommand("impact", "Economics and avoided emissions");
    auto* report_opt = impact->add_option("--report", report_path_, "Analyze JSON report to read annual energy from");
    impact->add_option("--energy", energy_, "Annual AC energy, kWh")->excludes(report_opt);
    impact->add_option("--export", export_, "Annual grid export, kWh")->excludes(report_opt);
    impact->add_option("--rate", rate_, "Discount rate override");
    impact->add_option("--tariff", tariff_, "Tariff override, currency/kWh");
    impact->add_option("--degradation", degradation_, "Yearly degradation override");
    bind(impact, &App::cmd_impact);

    auto* synth = app.add_subcommand("synth", "Generate synthetic generation and weather CSVs");
    synth->add_option("--seed", seed_, "RNG seed");
    synth->add_option("--days", days_, "Number of days")->check(CLI::PositiveNumber);
    synth->add_option("--start", start_, "First date, YYYY-MM-DD");
    synth->add_option("--out-dir", out_dir_, "Directory for generation.csv and weather.csv");
    bind(synth, &App::cmd_synth);

    auto* bench = app.add_subcommand("benchmark", "Place PR, CUF and efficiency among surveyed systems");
    auto* bench_report = bench->add_option("--report", report_path_, "Analyze JSON report");
    bench->add_option("--pr", pr_, "Annual PR, %")->excludes(bench_report);
    bench->add_option("--cuf", cuf_, "Annual CUF, %")->excludes(bench_report);
    bench->add_option("--eta-sys", eta_sys_, "Annual system efficiency, %")->excludes(bench_report);
    bind(bench, &App::cmd_benchmark);

    std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::Success& e) {
        return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
        write_error(err_, ErrorKind::usage, "cli", e.what());
        return 1;
    }

    try {
        action();
        return status_;
    } catch (const Error& e) {
        write_error(err_, e.kind(), e.module(), e.message(), e.file(), e.line());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        write_error(err_, ErrorKind::data, "cli", e.what());
        return 2;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    App app(out, err);
    return app.run(args);
}

}  // namespace pvperf::cli
