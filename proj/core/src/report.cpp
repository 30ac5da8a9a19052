#include "pvperf/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "csv.hpp"
#include "json.hpp"
#include "pvperf/error.hpp"
#include "pvperf/format.hpp"

#ifndef PVPERF_VERSION
#define PVPERF_VERSION "0.0.0"
#endif

namespace pvperf {
namespace {

using ojson = nlohmann::ordered_json;

ojson num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round_fixed(v, kReportDecimals);
}

ojson num(const std::optional<double>& v) { return v ? num(*v) : ojson(nullptr); }

std::string month_label(int year, unsigned month) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u", year, month);
    return buf;
}

ojson flags_json(unsigned flags) {
    ojson arr = ojson::array();
    for (const char* name : flag_names(flags)) arr.push_back(name);
    return arr;
}

ojson units_json() {
    return {
        {"e_dc_kwh", "kWh/day (daily mean)"},
        {"e_ac_kwh", "kWh/day (daily mean)"},
        {"h_poa_kwh_m2", "kWh/m2/day (daily mean)"},
        {"cell_temp_c", "degC"},
        {"y_a", "kWh/kWp/day"},
        {"y_r", "h/day (kWh/m2/day at 1 kW/m2)"},
        {"y_f", "kWh/kWp/day"},
        {"l_c", "kWh/kWp/day"},
        {"l_s", "kWh/kWp/day"},
        {"e_grid_kwh", "kWh/month"},
        {"*_pct", "percent"},
        {"*_kwh", "kWh"},
        {"*_kwp", "kWp"},
        {"*_t_per_yr", "tCO2/yr"},
        {"*_t_per_kwp_yr", "tCO2/kWp/yr"},
        {"*_years", "years"},
        {"*_r / pearson_*", "dimensionless"},
        {"currency", "finance.currency_label"},
        {"lcoe", "currency/kWh"},
    };
}

ojson config_json(const Config& cfg) {
    ojson doc = ojson::parse(config_to_json(cfg));
    // Echo numbers with report precision.
    for (auto& [_, section] : doc.items())
        for (auto& [__, value] : section.items())
            if (value.is_number_float()) value = num(value.get<double>());
    return doc;
}

ojson monthly_json(const MonthlyMetrics& m) {
    ojson row;
    row["month"] = month_label(m.year, m.month);
    row["valid_days"] = m.valid_days;
    row["valid"] = m.values.has_value();
    row["flags"] = flags_json(m.flags);
    if (!m.values) return row;
    const MetricValues& v = *m.values;
    row["cell_temp_c"] = num(v.cell_temp_c);
    row["e_ac_kwh"] = num(v.e_ac_kwh);
    row["e_dc_kwh"] = num(v.e_dc_kwh);
    row["y_a"] = num(v.y_a);
    row["y_r"] = num(v.y_r);
    row["y_f"] = num(v.y_f);
    row["l_c"] = num(v.l_c);
    row["l_s"] = num(v.l_s);
    row["e_grid_kwh"] = num(v.e_grid_kwh);
    row["eta_array_pct"] = num(v.eta_array_pct);
    row["eta_inv_pct"] = num(v.eta_inv_pct);
    row["monthly_capacity_factor_pct"] = num(v.monthly_capacity_factor_pct);
    row["pr_pct"] = num(v.pr_pct);
    row["eta_sys_pct"] = num(v.eta_sys_pct);
    row["h_poa_kwh_m2"] = num(v.h_poa_kwh_m2);
    return row;
}

ojson annual_json(const AnnualMetrics& a) {
    return {
        {"first_year", a.first_year},
        {"last_year", a.last_year},
        {"months_used", a.months_used},
        {"complete_year", a.complete_year},
        {"year_basis", to_string(a.basis)},
        {"hours_in_year", num(a.hours_in_year)},
        {"e_ac_total_kwh", num(a.e_ac_total_kwh)},
        {"e_grid_total_kwh", num(a.e_grid_total_kwh)},
        {"cuf_pct", num(a.cuf_pct)},
        {"cell_temp_c", num(a.cell_temp_c)},
        {"e_ac_kwh", num(a.e_ac_kwh)},
        {"e_dc_kwh", num(a.e_dc_kwh)},
        {"y_a", num(a.y_a)},
        {"y_r", num(a.y_r)},
        {"y_f", num(a.y_f)},
        {"l_c", num(a.l_c)},
        {"l_s", num(a.l_s)},
        {"pr_pct", num(a.pr_pct)},
        {"eta_array_pct", num(a.eta_array_pct)},
        {"eta_inv_pct", num(a.eta_inv_pct)},
        {"eta_sys_pct", num(a.eta_sys_pct)},
    };
}

ojson correlation_json(const CorrelationReport& r) {
    ojson doc;
    doc["overall_daily_r"] = num(r.overall_daily_r);
    doc["reference_overall_daily_r"] = num(kReferenceOverallDailyR);
    doc["n_valid_days"] = r.n_valid_days;
    doc["unclassifiable_days"] = r.unclassifiable_days;
    doc["classes"] = ojson::array();
    for (const auto& c : r.classes) {
        const auto& ref = kReferenceClassFigures[static_cast<std::size_t>(c.label)];
        doc["classes"].push_back({
            {"class", to_string(c.label)},
            {"n_days", c.n_days},
            {"mean_daily_e_ac_kwh", num(c.mean_daily_e_ac_kwh)},
            {"pearson_r_hourly", num(c.pearson_r_hourly)},
            {"n_hour_pairs", c.n_hour_pairs},
            {"reference_mean_daily_e_ac_kwh", num(ref.mean_daily_e_ac_kwh)},
            {"reference_pearson_r", num(ref.pearson_r)},
        });
    }
    return doc;
}

ojson impact_json(const ImpactResult& r, const std::string& currency) {
    const auto& ref = kReferenceImpact;
    ojson schedule = ojson::array();
    for (const auto& y : r.schedule.years)
        schedule.push_back({{"year", y.year},
                            {"energy_kwh", num(y.energy_kwh)},
                            {"export_kwh", num(y.export_kwh)},
                            {"outflow", num(y.outflow)},
                            {"inflow", num(y.inflow)},
                            {"net", num(y.net)}});
    return {
        {"currency", currency},
        {"discount_rate", num(r.discount_rate)},
        {"tariff_per_kwh", num(r.tariff_per_kwh)},
        {"annual_energy_kwh", num(r.annual_energy_kwh)},
        {"annual_export_kwh", num(r.annual_export_kwh)},
        {"annual_revenue", num(r.annual_revenue)},
        {"npv_benefits", num(r.npv_benefits)},
        {"lcoe", num(r.lcoe)},
        {"roi_pct", num(r.roi_pct)},
        {"payback_simple_years", num(r.payback_simple_years)},
        {"payback_discounted_years", num(r.payback_discounted_years)},
        {"payback_beyond_lifetime", !r.payback_discounted_years.has_value()},
        {"monthly_export_kwh", num(r.monthly_export_kwh)},
        {"monthly_savings", num(r.monthly_savings)},
        {"gross_co2_avoided_t_per_yr", num(r.gross_co2_avoided_t_per_yr)},
        {"net_co2_avoided_t_per_kwp_yr", num(r.net_co2_avoided_t_per_kwp_yr)},
        {"reference",
         {{"annual_energy_kwh", num(ref.annual_energy_kwh)},
          {"annual_export_kwh", num(ref.annual_export_kwh)},
          {"annual_revenue", num(ref.annual_revenue)},
          {"npv_benefits", num(ref.npv)},
          {"lcoe", num(ref.lcoe)},
          {"roi_pct", num(ref.roi_pct)},
          {"payback_years", num(ref.payback_years)},
          {"monthly_savings", num(ref.monthly_savings)},
          {"net_co2_avoided_t_per_kwp_yr", num(ref.net_co2_t_per_kwp_yr)}}},
        {"schedule", schedule},
    };
}

ojson placement_json(const MetricPlacement& p) {
    return {{"value", num(p.value)},
            {"rank", p.rank},
            {"entries", p.entries},
            {"min", num(p.min)},
            {"median", num(p.median)},
            {"max", num(p.max)},
            {"median_point_values", num(p.median_point_values)}};
}

ojson benchmark_json(const BenchmarkComparison& c) {
    ojson doc;
    doc["pr_pct"] = placement_json(c.pr_pct);
    doc["cuf_pct"] = c.cuf_pct ? placement_json(*c.cuf_pct) : ojson(nullptr);
    doc["eta_sys_pct"] = c.eta_sys_pct ? placement_json(*c.eta_sys_pct) : ojson(nullptr);
    return doc;
}

ojson quality_json(const DataQuality& q) {
    ojson violations = ojson::array();
    for (const auto& v : q.invariant_violations) violations.push_back(v);
    return {
        {"generation_records", q.generation_records},
        {"weather_records", q.weather_records},
        {"joined_records", q.joined_records},
        {"hours_missing_weather", q.hours_missing_weather},
        {"hours_missing_generation", q.hours_missing_generation},
        {"gaps", q.gaps},
        {"gap_hours", q.gap_hours},
        {"days", q.days},
        {"valid_days", q.valid_days},
        {"months", q.months},
        {"valid_months", q.valid_months},
        {"transposed_hours", q.transposed_hours},
        {"insolation_source", to_string(q.insolation_source)},
        {"poa_provenance", q.insolation_source == InsolationSource::measured ? "measured POA"
                           : q.insolation_source == InsolationSource::transposed
                               ? "transposed POA"
                               : "measured and transposed POA"},
        {"invariants_ok", q.invariant_violations.empty()},
        {"invariant_violations", violations},
    };
}

ojson report_json(const Report& r) {
    ojson doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["toolkit_version"] = version();
    doc["units"] = units_json();
    doc["config"] = config_json(r.config);
    doc["analysis"] = {{"year_basis", to_string(r.options.year_basis)},
                       {"min_daylight_coverage", num(r.options.policy.min_daylight_coverage)},
                       {"min_valid_days", r.options.policy.min_valid_days}};
    doc["monthly"] = ojson::array();
    for (const auto& m : r.monthly) doc["monthly"].push_back(monthly_json(m));
    doc["annual"] = r.annual ? annual_json(*r.annual) : ojson(nullptr);
    doc["correlation"] = correlation_json(r.correlation);
    doc["impact"] = r.impact ? impact_json(*r.impact, r.config.finance.currency_label) : ojson(nullptr);
    doc["benchmark"] = r.benchmark ? benchmark_json(*r.benchmark) : ojson(nullptr);
    doc["data_quality"] = quality_json(r.quality);
    return doc;
}

std::string leaf_text(const ojson& v) {
    if (v.is_null()) return {};
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number_float()) return format_fixed(v.get<double>(), kReportDecimals);
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void flatten(const ojson& v, const std::string& path, std::string& out) {
    if (v.is_object()) {
        for (const auto& [key, child] : v.items()) flatten(child, path.empty() ? key : path + "." + key, out);
    } else if (v.is_array() && !v.empty()) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "." + std::to_string(i), out);
    } else if (v.is_array()) {
        out += csv::escape(path) + ",\n";
    } else {
        out += csv::escape(path) + ',' + csv::escape(leaf_text(v)) + '\n';
    }
}

std::string cell(const ojson& v) {
    const std::string t = leaf_text(v);
    return t.empty() ? "-" : t;
}

std::string md_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::string out = "|";
    for (const auto& h : header) out += " " + h + " |";
    out += "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) out += i ? "---:|" : "---|";
    out += "\n";
    for (const auto& row : rows) {
        out += "|";
        for (const auto& c : row) out += " " + c + " |";
        out += "\n";
    }
    return out;
}

const std::vector<std::pair<const char*, const char*>> kYieldColumns{
    {"cell_temp_c", "Cell temp (C)"}, {"e_ac_kwh", "E_AC (kWh)"},     {"e_dc_kwh", "E_DC (kWh)"},
    {"y_a", "Y_A (kWh/kWp)"},         {"y_r", "Y_R (kWh/m2)"},        {"y_f", "Y_F (kWh/kWp)"},
    {"l_c", "L_C (kWh/kWp)"},         {"l_s", "L_S (kWh/kWp)"},
};
const std::vector<std::pair<const char*, const char*>> kEfficiencyColumns{
    {"e_grid_kwh", "Grid export (kWh)"},
    {"eta_array_pct", "eta_array (%)"},
    {"eta_inv_pct", "eta_inv (%)"},
    {"monthly_capacity_factor_pct", "Monthly CF (%)"},
    {"pr_pct", "PR (%)"},
    {"eta_sys_pct", "eta_sys (%)"},
};

std::string tables_markdown(const ojson& monthly, const ojson& annual) {
    auto build = [&](const std::vector<std::pair<const char*, const char*>>& cols, bool with_average) {
        std::vector<std::string> header{"Month"};
        for (const auto& c : cols) header.push_back(c.second);
        std::vector<std::vector<std::string>> rows;
        for (const auto& m : monthly) {
            std::vector<std::string> row{m["month"].get<std::string>()};
            for (const auto& c : cols) row.push_back(m.contains(c.first) ? cell(m[c.first]) : "-");
            rows.push_back(row);
        }
        if (with_average && annual.is_object()) {
            std::vector<std::string> row{"Average"};
            for (const auto& c : cols) row.push_back(annual.contains(c.first) ? cell(annual[c.first]) : "-");
            rows.push_back(row);
        }
        return md_table(header, rows);
    };
    std::string out = "### Monthly average energy yield and losses\n\n";
    out += build(kYieldColumns, true);
    out += "\n### Monthly grid export, efficiencies, capacity factor and PR\n\n";
    out += build(kEfficiencyColumns, false);
    return out;
}

std::string kv_markdown(const ojson& obj, const std::string& prefix = {}) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [key, value] : obj.items()) {
        if (value.is_structured()) continue;
        rows.push_back({prefix + key, cell(value)});
    }
    return md_table({"Field", "Value"}, rows);
}

std::string report_markdown(const ojson& doc) {
    std::string out = "# PV performance report\n\n";
    out += "Schema " + doc["schema_version"].get<std::string>() + ", toolkit " +
           doc["toolkit_version"].get<std::string>() + ".\n\n";
    out += "## Monthly metrics\n\n" + tables_markdown(doc["monthly"], doc["annual"]);
    if (doc["annual"].is_object()) out += "\n## Annual\n\n" + kv_markdown(doc["annual"]);

    const ojson& corr = doc["correlation"];
    out += "\n## Weather classes\n\n" + kv_markdown(corr);
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : corr["classes"])
        rows.push_back({c["class"].get<std::string>(), cell(c["n_days"]), cell(c["mean_daily_e_ac_kwh"]),
                        cell(c["reference_mean_daily_e_ac_kwh"]), cell(c["pearson_r_hourly"]),
                        cell(c["reference_pearson_r"]), cell(c["n_hour_pairs"])});
    out += "\n" + md_table({"Class", "Days", "Mean daily E_AC (kWh)", "Reference E_AC (kWh)", "Hourly r",
                            "Reference r", "Hour pairs"},
                           rows);

    if (doc["impact"].is_object()) {
        const ojson& imp = doc["impact"];
        out += "\n## Economic and environmental impact\n\n" + kv_markdown(imp);
        out += "\nReference figures:\n\n" + kv_markdown(imp["reference"], "reference.");
    }
    if (doc["benchmark"].is_object()) {
        out += "\n## Cross-study benchmark\n\n";
        std::vector<std::vector<std::string>> brow;
        for (const auto& [metric, p] : doc["benchmark"].items()) {
            if (p.is_null()) continue;
            brow.push_back({metric, cell(p["value"]), cell(p["rank"]) + "/" + cell(p["entries"]), cell(p["min"]),
                            cell(p["median"]), cell(p["max"]), cell(p["median_point_values"])});
        }
        out += md_table({"Metric", "Value", "Rank", "Min", "Median", "Max", "Median (point values)"}, brow);
    }
    out += "\n## Data quality\n\n" + kv_markdown(doc["data_quality"]);
    for (const auto& v : doc["data_quality"]["invariant_violations"])
        out += "- " + v.get<std::string>() + "\n";
    return out;
}

template <class F>
auto with_file_context(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        e.rethrow_with_file(name);
    }
}

ojson parse_report(std::string_view text) {
    try {
        return ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        throw DataError("cli_report", std::string("malformed report JSON: ") + e.what());
    }
}

}  // namespace

const char* version() noexcept { return PVPERF_VERSION; }

std::optional<ReportFormat> parse_report_format(std::string_view text) noexcept {
    if (text == "json") return ReportFormat::json;
    if (text == "csv") return ReportFormat::csv;
    if (text == "md") return ReportFormat::md;
    return std::nullopt;
}

std::vector<std::string> check_invariants(const std::vector<MonthlyMetrics>& monthly,
                                          const std::optional<AnnualMetrics>& annual,
                                          const CorrelationReport& correlation) {
    std::vector<std::string> out;
    for (const auto& m : monthly) {
        if (!m.values) continue;
        const MetricValues& v = *m.values;
        const std::string id = month_label(m.year, m.month) + ": ";
        if (v.y_a < 0 || v.y_r < 0 || v.y_f < 0) out.push_back(id + "negative yield");
        if (v.l_s < -kMeterTolerance * v.y_a) out.push_back(id + "system loss below metering tolerance");
        if (v.y_a - v.y_f != v.l_s || v.y_r - v.y_a != v.l_c) out.push_back(id + "loss identity broken");
        if (v.pr_pct && !(*v.pr_pct > 0.0 && *v.pr_pct <= 120.0)) out.push_back(id + "PR outside (0, 120]");
        if (v.pr_pct && std::abs(*v.pr_pct * v.y_r - 100.0 * v.y_f) > 1e-9 * std::max(1.0, v.y_f * 100.0))
            out.push_back(id + "PR * Y_R != 100 * Y_F");
        if (v.eta_inv_pct && *v.eta_inv_pct > 100.0 * (1.0 + kMeterTolerance))
            out.push_back(id + "inverter efficiency above 100 %");
        if (v.eta_inv_pct && *v.eta_inv_pct <= 100.0 && v.eta_sys_pct && v.eta_array_pct &&
            *v.eta_sys_pct > *v.eta_array_pct * (1.0 + 1e-12))
            out.push_back(id + "system efficiency above array efficiency");
    }
    if (annual && !(annual->cuf_pct > 0.0 && annual->cuf_pct < 100.0)) out.push_back("annual: CUF outside (0, 100)");
    for (const auto& c : correlation.classes) {
        if (c.pearson_r_hourly && (*c.pearson_r_hourly < -1.0 || *c.pearson_r_hourly > 1.0))
            out.push_back(std::string("correlation: r outside [-1, 1] for ") + to_string(c.label));
        if (c.pearson_r_hourly && c.n_hour_pairs < 2)
            out.push_back(std::string("correlation: r with fewer than two pairs for ") + to_string(c.label));
    }
    return out;
}

Report analyze(const Config& cfg, std::istream& generation, std::istream& weather, const AnalyzeOptions& options,
               const std::string& generation_name, const std::string& weather_name) {
    if (auto v = validate_config(cfg); !v.ok())
        throw ConfigError("core_model", "invalid config: " + v.violations.front().field + " " +
                                            v.violations.front().message);
    Report report;
    report.config = cfg;
    report.options = options;

    const auto gen = with_file_context(generation_name, [&] { return parse_generation_csv(generation); });
    const auto wx = with_file_context(weather_name, [&] { return parse_weather_csv(weather); });
    const AlignedSeries series = align(gen, wx, cfg.system, options.policy);

    const auto summaries = aggregate_monthly(series);
    MetricsOptions mopts;
    mopts.grid_export_fraction = cfg.finance.grid_export_fraction;
    report.monthly = compute_monthly(summaries, cfg.system, mopts);
    report.annual = compute_annual(report.monthly, cfg.system, options.year_basis, cfg.finance.grid_export_fraction);
    report.correlation = correlation_report(series, options.classification);
    if (report.annual) {
        report.impact = evaluate_impact(cfg.finance, cfg.emissions, cfg.system.p_rated_kwp,
                                        report.annual->e_ac_total_kwh, report.annual->e_grid_total_kwh);
        report.benchmark = benchmark_compare(*report.annual);
    }

    DataQuality& q = report.quality;
    q.generation_records = gen.records.size();
    q.weather_records = wx.records.size();
    q.joined_records = series.records.size();
    for (const auto& u : series.unmatched)
        ++(u.missing == MissingHalf::weather ? q.hours_missing_weather : q.hours_missing_generation);
    q.gaps = series.gaps.size();
    for (const auto& g : series.gaps) q.gap_hours += g.missing_hours;
    q.days = series.days.size();
    for (const auto& d : series.days) q.valid_days += d.valid;
    q.months = series.months.size();
    for (const auto& m : series.months) q.valid_months += m.valid;
    bool measured = false;
    for (const auto& r : series.records) {
        if (r.poa_transposed) {
            ++q.transposed_hours;
        } else {
            measured = true;
        }
    }
    q.insolation_source = q.transposed_hours == 0 ? InsolationSource::measured
                          : measured              ? InsolationSource::mixed
                                                  : InsolationSource::transposed;
    q.invariant_violations = check_invariants(report.monthly, report.annual, report.correlation);
    return report;
}

Report analyze_files(const Config& cfg, const std::string& generation_path, const std::string& weather_path,
                     const AnalyzeOptions& options) {
    std::ifstream gen(generation_path, std::ios::binary);
    if (!gen) throw DataError("ingestion", "cannot open '" + generation_path + "'", 0, generation_path);
    std::ifstream wx(weather_path, std::ios::binary);
    if (!wx) throw DataError("ingestion", "cannot open '" + weather_path + "'", 0, weather_path);
    return analyze(cfg, gen, wx, options, generation_path, weather_path);
}

std::string render_report(const Report& report, ReportFormat format) {
    const ojson doc = report_json(report);
    switch (format) {
        case ReportFormat::json: return doc.dump(2) + "\n";
        case ReportFormat::csv: {
            std::string out = "path,value\n";
            flatten(doc, "", out);
            return out;
        }
        case ReportFormat::md: return report_markdown(doc);
    }
    return {};
}

std::string monthly_table_csv(const std::vector<MonthlyMetrics>& monthly) {
    std::string out = "month,valid_days";
    for (const auto& c : kYieldColumns) out += std::string(",") + c.first;
    for (const auto& c : kEfficiencyColumns) out += std::string(",") + c.first;
    out += ",flags\n";
    for (const auto& m : monthly) {
        const ojson row = monthly_json(m);
        out += row["month"].get<std::string>() + "," + std::to_string(m.valid_days);
        for (const auto* cols : {&kYieldColumns, &kEfficiencyColumns})
            for (const auto& c : *cols) out += "," + (row.contains(c.first) ? leaf_text(row[c.first]) : "");
        std::string flags;
        for (const char* f : flag_names(m.flags)) flags += flags.empty() ? f : std::string(";") + f;
        out += "," + csv::escape(flags) + "\n";
    }
    return out;
}

std::string monthly_tables_markdown(const std::vector<MonthlyMetrics>& monthly,
                                    const std::optional<AnnualMetrics>& annual) {
    ojson rows = ojson::array();
    for (const auto& m : monthly) rows.push_back(monthly_json(m));
    return tables_markdown(rows, annual ? annual_json(*annual) : ojson(nullptr));
}

std::string impact_to_json(const ImpactResult& impact, const std::string& currency) {
    return impact_json(impact, currency).dump(2) + "\n";
}

std::string correlation_to_json(const CorrelationReport& report) {
    return correlation_json(report).dump(2) + "\n";
}

std::string benchmark_to_json(const BenchmarkComparison& comparison) {
    return benchmark_json(comparison).dump(2) + "\n";
}

std::string render_document(std::string_view json, ReportFormat format, std::string_view title) {
    const ojson doc = parse_report(json);
    switch (format) {
        case ReportFormat::json: return doc.dump(2) + "\n";
        case ReportFormat::csv: {
            std::string out = "path,value\n";
            flatten(doc, "", out);
            return out;
        }
        case ReportFormat::md: {
            std::string out = "# " + std::string(title) + "\n\n" + kv_markdown(doc);
            for (const auto& [key, value] : doc.items()) {
                if (value.is_object()) {
                    out += "\n## " + key + "\n\n" + kv_markdown(value);
                } else if (value.is_array() && !value.empty() && value.front().is_object()) {
                    std::vector<std::string> header;
                    for (const auto& [k, _] : value.front().items()) header.push_back(k);
                    std::vector<std::vector<std::string>> rows;
                    for (const auto& item : value) {
                        std::vector<std::string> row;
                        for (const auto& h : header) row.push_back(item.contains(h) ? cell(item[h]) : "-");
                        rows.push_back(row);
                    }
                    out += "\n## " + key + "\n\n" + md_table(header, rows);
                }
            }
            return out;
        }
    }
    return {};
}

std::pair<double, double> annual_energy_from_report_json(std::string_view text) {
    const ojson doc = parse_report(text);
    if (!doc.contains("annual") || !doc["annual"].is_object())
        throw DataError("cli_report", "report has no annual block");
    const ojson& a = doc["annual"];
    if (!a["e_ac_total_kwh"].is_number() || !a["e_grid_total_kwh"].is_number())
        throw DataError("cli_report", "report annual block lacks energy totals");
    return {a["e_ac_total_kwh"].get<double>(), a["e_grid_total_kwh"].get<double>()};
}

BenchmarkComparison benchmark_from_report_json(std::string_view text) {
    const ojson doc = parse_report(text);
    if (!doc.contains("annual") || !doc["annual"].is_object() || !doc["annual"]["pr_pct"].is_number())
        throw DataError("cli_report", "report has no annual PR");
    const ojson& a = doc["annual"];
    auto opt = [&](const char* key) -> std::optional<double> {
        return a[key].is_number() ? std::optional<double>(a[key].get<double>()) : std::nullopt;
    };
    return benchmark_compare(a["pr_pct"].get<double>(), opt("cuf_pct"), opt("eta_sys_pct"));
}

}  // namespace pvperf
