#include <algorithm>
#include <map>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pvperf/error.hpp"
#include "pvperf/format.hpp"
#include "pvperf/report.hpp"
#include "pvperf/synth.hpp"

using namespace pvperf;
using ojson = nlohmann::ordered_json;

namespace {

const SynthCsv& dataset() {
    static const SynthCsv csv = [] {
        SynthConfig s;
        s.seed = 42;
        s.n_days = 365;
        return generate(SystemConfig{}, s);
    }();
    return csv;
}

Report run(const std::string& gen, const std::string& wx, const Config& cfg = {}) {
    std::istringstream g(gen), w(wx);
    return analyze(cfg, g, w);
}

void collect(const ojson& v, const std::string& path, std::map<std::string, std::string>& out) {
    if (v.is_object()) {
        for (const auto& [k, c] : v.items()) collect(c, path.empty() ? k : path + "." + k, out);
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) collect(v[i], path + "." + std::to_string(i), out);
    } else if (v.is_number_float()) {
        out[path] = format_fixed(v.get<double>(), kReportDecimals);
    } else if (v.is_number()) {
        out[path] = v.dump();
    }
}

}  // namespace

TEST_SUITE("cli_report.analyze") {
    TEST_CASE("synthetic year populates every block with invariants green") {
        const Report r = run(dataset().generation_csv, dataset().weather_csv);
        CHECK(r.monthly.size() == 12);
        for (const auto& m : r.monthly) {
            REQUIRE(m.values);
            CHECK(m.values->l_c >= 0);
            CHECK(m.values->l_s >= 0);
            CHECK(*m.values->pr_pct > 0);
            CHECK(*m.values->pr_pct < 100);
            CHECK(*m.values->eta_inv_pct <= 100);
        }
        REQUIRE(r.annual);
        REQUIRE(r.impact);
        REQUIRE(r.benchmark);
        CHECK(r.correlation.classes.size() == 4);
        CHECK(r.quality.invariant_violations.empty());
        CHECK(r.quality.insolation_source == InsolationSource::measured);
        CHECK(r.quality.valid_months == 12);
    }

    TEST_CASE("weather without POA reports transposed provenance") {
        SynthConfig s;
        s.n_days = 31;
        s.write_poa = false;
        const auto csv = generate(SystemConfig{}, s);
        const Report r = run(csv.generation_csv, csv.weather_csv);
        CHECK(r.quality.insolation_source == InsolationSource::transposed);
        CHECK(r.quality.transposed_hours == 31 * 24);
        CHECK(render_report(r, ReportFormat::json).find("\"transposed POA\"") != std::string::npos);
    }

    TEST_CASE("empty generation file fails with module and file context") {
        try {
            run("", dataset().weather_csv);
            FAIL("expected an error");
        } catch (const DataError& e) {
            CHECK(e.module() == "ingestion");
            CHECK(e.file() == "generation.csv");
        }
        CHECK_THROWS_WITH_AS(run("timestamp,e_dc_kwh,e_ac_kwh\n", dataset().weather_csv),
                             doctest::Contains("no overlap"), DataError);
    }

    TEST_CASE("parse errors carry file and line") {
        const std::string bad = "timestamp,e_dc_kwh,e_ac_kwh\n2021-01-01T01:00:00+08:00,x,0\n";
        try {
            run(bad, dataset().weather_csv);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.file() == "generation.csv");
            CHECK(e.line() == 2);
        }
    }

    TEST_CASE("invalid configuration is a config error") {
        Config cfg;
        cfg.system.albedo = 3;
        CHECK_THROWS_AS(run(dataset().generation_csv, dataset().weather_csv, cfg), ConfigError);
    }
}

TEST_SUITE("cli_report.render") {
    TEST_CASE("rendering is deterministic") {
        const Report a = run(dataset().generation_csv, dataset().weather_csv);
        const Report b = run(dataset().generation_csv, dataset().weather_csv);
        for (auto f : {ReportFormat::json, ReportFormat::csv, ReportFormat::md})
            CHECK(render_report(a, f) == render_report(b, f));
    }

    TEST_CASE("json carries schema, version and units") {
        const Report r = run(dataset().generation_csv, dataset().weather_csv);
        const ojson doc = ojson::parse(render_report(r, ReportFormat::json));
        CHECK(doc["schema_version"] == kReportSchemaVersion);
        CHECK(doc["toolkit_version"] == version());
        CHECK(doc["units"].contains("y_a"));
        const auto& keys = doc["monthly"][0];
        std::vector<std::string> order;
        for (const auto& [k, _] : keys.items()) order.push_back(k);
        const auto pos = [&](const char* k) { return std::find(order.begin(), order.end(), k) - order.begin(); };
        CHECK(pos("cell_temp_c") < pos("y_a"));
        CHECK(pos("l_s") < pos("e_grid_kwh"));
        CHECK(pos("pr_pct") < pos("eta_sys_pct"));
        for (const char* block : {"config", "monthly", "annual", "correlation", "impact", "benchmark", "data_quality"})
            CHECK(doc.contains(block));
    }

    TEST_CASE("csv and markdown carry the same numbers as json") {
        const Report r = run(dataset().generation_csv, dataset().weather_csv);
        std::map<std::string, std::string> json_numbers;
        collect(ojson::parse(render_report(r, ReportFormat::json)), "", json_numbers);
        REQUIRE(json_numbers.size() > 100);

        std::map<std::string, std::string> csv_values;
        std::istringstream csv(render_report(r, ReportFormat::csv));
        std::string line;
        std::getline(csv, line);
        CHECK(line == "path,value");
        while (std::getline(csv, line)) {
            const auto comma = line.rfind(',');
            csv_values[line.substr(0, comma)] = line.substr(comma + 1);
        }
        for (const auto& [path, value] : json_numbers) {
            INFO(path);
            REQUIRE(csv_values.count(path));
            CHECK(csv_values[path] == value);
        }

        const std::string md = render_report(r, ReportFormat::md);
        for (const auto& [path, value] : json_numbers) {
            const bool tabled = path.rfind("monthly.", 0) == 0 || path.rfind("annual.", 0) == 0 ||
                                (path.rfind("impact.", 0) == 0 && path.find("schedule") == std::string::npos);
            if (tabled) {
                INFO(path);
                CHECK(md.find(value) != std::string::npos);
            }
        }
    }

    TEST_CASE("monthly tables") {
        const Report r = run(dataset().generation_csv, dataset().weather_csv);
        const std::string csv = monthly_table_csv(r.monthly);
        CHECK(csv.rfind("month,valid_days,cell_temp_c,e_ac_kwh,e_dc_kwh,y_a,y_r,y_f,l_c,l_s,e_grid_kwh,", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
        const std::string md = monthly_tables_markdown(r.monthly, r.annual);
        CHECK(md.find("| Average |") != std::string::npos);
        CHECK(md.find("| 2021-04 |") != std::string::npos);
    }

    TEST_CASE("formats parse and round trip report helpers") {
        CHECK(parse_report_format("json") == ReportFormat::json);
        CHECK(parse_report_format("md") == ReportFormat::md);
        CHECK_FALSE(parse_report_format("xml"));
        const Report r = run(dataset().generation_csv, dataset().weather_csv);
        const std::string json = render_report(r, ReportFormat::json);
        const auto [e, x] = annual_energy_from_report_json(json);
        CHECK(e == round_fixed(r.annual->e_ac_total_kwh, 4));
        CHECK(x == round_fixed(r.annual->e_grid_total_kwh, 4));
        CHECK(benchmark_from_report_json(json).pr_pct.rank == r.benchmark->pr_pct.rank);
        CHECK_THROWS_AS(annual_energy_from_report_json("{}"), DataError);
        CHECK_THROWS_AS(annual_energy_from_report_json("not json"), DataError);
        const std::string doc = render_document(impact_to_json(*r.impact, "USD"), ReportFormat::md, "Impact");
        CHECK(doc.rfind("# Impact", 0) == 0);
    }

    TEST_CASE("invariant checker reports broken identities") {
        MonthlyMetrics m;
        m.year = 2021;
        m.month = 1;
        m.values = MetricValues{};
        m.values->y_a = 3.0;
        m.values->y_f = 2.0;
        m.values->y_r = 4.0;
        m.values->l_s = 0.5;  // should be 1.0
        m.values->l_c = 1.0;
        m.values->pr_pct = 50.0;
        const auto v = check_invariants({m}, std::nullopt, CorrelationReport{});
        CHECK_FALSE(v.empty());
    }
}
