#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "pvperf/benchmark_data.hpp"
#include "pvperf/config.hpp"
#include "pvperf/impact.hpp"
#include "pvperf/ingestion.hpp"
#include "pvperf/metrics.hpp"
#include "pvperf/weather_stats.hpp"

namespace pvperf {

const char* version() noexcept;

inline constexpr const char* kReportSchemaVersion = "1.0";

enum class ReportFormat { json, csv, md };
std::optional<ReportFormat> parse_report_format(std::string_view text) noexcept;

struct AnalyzeOptions {
    ValidityPolicy policy;
    YearBasis year_basis = YearBasis::generic;
    ClassificationOptions classification;
};

struct DataQuality {
    std::size_t generation_records = 0;
    std::size_t weather_records = 0;
    std::size_t joined_records = 0;
    std::size_t hours_missing_weather = 0;
    std::size_t hours_missing_generation = 0;
    std::size_t gaps = 0;
    std::int64_t gap_hours = 0;
    std::size_t days = 0;
    std::size_t valid_days = 0;
    std::size_t months = 0;
    std::size_t valid_months = 0;
    std::size_t transposed_hours = 0;
    InsolationSource insolation_source = InsolationSource::measured;
    std::vector<std::string> invariant_violations;
};

struct Report {
    Config config;
    AnalyzeOptions options;
    std::vector<MonthlyMetrics> monthly;
    std::optional<AnnualMetrics> annual;
    CorrelationReport correlation;
    std::optional<ImpactResult> impact;
    std::optional<BenchmarkComparison> benchmark;
    DataQuality quality;
};

/// ingest -> align (transposing where POA is absent) -> metrics ->
/// weather classes -> impact -> benchmark placement. Errors carry the
/// module and, for parse errors, the file name and line.
Report analyze(const Config& cfg, std::istream& generation, std::istream& weather,
               const AnalyzeOptions& options = {}, const std::string& generation_name = "generation.csv",
               const std::string& weather_name = "weather.csv");
Report analyze_files(const Config& cfg, const std::string& generation_path, const std::string& weather_path,
                     const AnalyzeOptions& options = {});

/// Metric identities and bounds every computed month and the annual block
/// must satisfy; one message per violation.
std::vector<std::string> check_invariants(const std::vector<MonthlyMetrics>& monthly,
                                          const std::optional<AnnualMetrics>& annual,
                                          const CorrelationReport& correlation);

/// Deterministic output: stable key order, numbers rounded to four decimals.
std::string render_report(const Report& report, ReportFormat format);

/// Monthly rows, yield-table columns first, then efficiency-table columns.
std::string monthly_table_csv(const std::vector<MonthlyMetrics>& monthly);
std::string monthly_tables_markdown(const std::vector<MonthlyMetrics>& monthly,
                                    const std::optional<AnnualMetrics>& annual);

std::string impact_to_json(const ImpactResult& impact, const std::string& currency);
std::string correlation_to_json(const CorrelationReport& report);
std::string benchmark_to_json(const BenchmarkComparison& comparison);

/// Re-renders any JSON document in `format`: JSON is pretty-printed, CSV
/// is `path,value` long form, Markdown is one key/value table per object.
std::string render_document(std::string_view json, ReportFormat format, std::string_view title);

/// Reads `annual.e_ac_total_kwh` and `annual.e_grid_total_kwh` from an
/// analyze JSON report.
std::pair<double, double> annual_energy_from_report_json(std::string_view text);
/// Reads annual PR, CUF and system efficiency from an analyze JSON report.
BenchmarkComparison benchmark_from_report_json(std::string_view text);

}  // namespace pvperf
