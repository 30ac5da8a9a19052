#include "pvperf/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"
#include "pvperf/error.hpp"

namespace pvperf {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

void require(ValidationReport& r, bool ok, std::string field, std::string message) {
    if (!ok) r.violations.push_back({std::move(field), std::move(message)});
}

bool finite(double v) { return std::isfinite(v); }

void prefix(ValidationReport& into, const ValidationReport& from, const std::string& section) {
    for (const auto& v : from.violations)
        into.violations.push_back({section + "." + v.field, v.message});
}

// Field binding for the strict JSON reader.
template <class T>
using Setter = std::function<void(T&, const json&)>;

template <class T, class F>
Setter<T> bind_number(F T::*member) {
    return [member](T& obj, const json& v) {
        if (!v.is_number()) throw ConfigError("core_model", "expected a number");
        obj.*member = v.get<F>();
    };
}

template <class T>
Setter<T> bind_int(int T::*member) {
    return [member](T& obj, const json& v) {
        if (!v.is_number_integer()) throw ConfigError("core_model", "expected an integer");
        obj.*member = v.get<int>();
    };
}

template <class T>
void read_section(const json& doc, const char* name, T& target,
                  const std::map<std::string, Setter<T>>& fields, bool lenient) {
    if (!doc.contains(name)) return;
    const json& section = doc.at(name);
    if (!section.is_object())
        throw ConfigError("core_model", std::string("section '") + name + "' must be an object");
    for (const auto& [key, value] : section.items()) {
        auto it = fields.find(key);
        if (it == fields.end()) {
            if (lenient) continue;
            throw ConfigError("core_model", std::string("unknown key '") + name + "." + key + "'");
        }
        try {
            it->second(target, value);
        } catch (const ConfigError& e) {
            throw ConfigError("core_model", std::string(name) + "." + key + ": " + e.message());
        } catch (const json::exception& e) {
            throw ConfigError("core_model", std::string(name) + "." + key + ": " + e.what());
        }
    }
}

}  // namespace

int SystemConfig::utc_offset_minutes() const noexcept {
    return static_cast<int>(std::lround(utc_offset_h * 60.0));
}

ValidationReport validate_config(const SystemConfig& c) {
    ValidationReport r;
    require(r, finite(c.latitude_deg) && c.latitude_deg >= -90 && c.latitude_deg <= 90,
            "latitude_deg", "must lie in [-90, 90]");
    require(r, finite(c.longitude_deg) && c.longitude_deg >= -180 && c.longitude_deg <= 180,
            "longitude_deg", "must lie in [-180, 180]");
    require(r, finite(c.utc_offset_h) && c.utc_offset_h >= -14 && c.utc_offset_h <= 14,
            "utc_offset_h", "must lie in [-14, 14]");
    require(r, finite(c.tilt_deg) && c.tilt_deg >= 0 && c.tilt_deg <= 90, "tilt_deg",
            "must lie in [0, 90]");
    require(r, finite(c.surface_azimuth_deg) && c.surface_azimuth_deg >= 0 && c.surface_azimuth_deg < 360,
            "surface_azimuth_deg", "must lie in [0, 360)");
    require(r, finite(c.albedo) && c.albedo > 0 && c.albedo < 1, "albedo", "must lie in (0, 1)");
    require(r, finite(c.p_rated_kwp) && c.p_rated_kwp > 0, "p_rated_kwp", "must be positive");
    require(r, finite(c.inverter_rating_kw) && c.inverter_rating_kw > 0, "inverter_rating_kw",
            "must be positive");
    require(r, finite(c.array_area_m2) && c.array_area_m2 > 0, "array_area_m2", "must be positive");
    require(r, c.module_count > 0, "module_count", "must be positive");
    require(r, finite(c.module_power_wp) && c.module_power_wp > 0, "module_power_wp", "must be positive");
    require(r, finite(c.module_eff) && c.module_eff > 0 && c.module_eff <= 1, "module_eff",
            "must lie in (0, 1]");
    require(r, c.g_o_kw_m2 == 1.0, "g_o_kw_m2", "reference irradiance must be exactly 1.0 kW/m2");
    require(r, finite(c.noct_c), "noct_c", "must be finite");
    const double expected = c.module_count * c.module_power_wp / 1000.0;
    require(r, std::abs(c.p_rated_kwp - expected) <= kRatingConsistencyTol, "p_rated_kwp",
            "must equal module_count * module_power_wp / 1000 (" + std::to_string(expected) + ")");
    return r;
}

ValidationReport validate_config(const FinanceConfig& c) {
    ValidationReport r;
    require(r, finite(c.capital_cost) && c.capital_cost >= 0, "capital_cost", "must be >= 0");
    require(r, finite(c.annual_om_cost) && c.annual_om_cost >= 0, "annual_om_cost", "must be >= 0");
    require(r, finite(c.tariff_per_kwh) && c.tariff_per_kwh >= 0, "tariff_per_kwh", "must be >= 0");
    require(r, finite(c.discount_rate) && c.discount_rate >= 0 && c.discount_rate < 1, "discount_rate",
            "must lie in [0, 1)");
    require(r, c.lifetime_years >= 1, "lifetime_years", "must be >= 1");
    require(r, finite(c.grid_export_fraction) && c.grid_export_fraction >= 0 && c.grid_export_fraction <= 1,
            "grid_export_fraction", "must lie in [0, 1]");
    require(r, finite(c.degradation_rate) && c.degradation_rate >= 0 && c.degradation_rate <= 1,
            "degradation_rate", "must lie in [0, 1]");
    return r;
}

ValidationReport validate_config(const EmissionConfig& c) {
    ValidationReport r;
    require(r, finite(c.grid_emission_factor_g_per_kwh) && c.grid_emission_factor_g_per_kwh > 0,
            "grid_emission_factor_g_per_kwh", "must be positive");
    require(r, finite(c.lce_system_tco2) && c.lce_system_tco2 > 0, "lce_system_tco2", "must be positive");
    require(r, c.lifetime_years > 0, "lifetime_years", "must be positive");
    return r;
}

ValidationReport validate_config(const Config& c) {
    ValidationReport r;
    prefix(r, validate_config(c.system), "system");
    prefix(r, validate_config(c.finance), "finance");
    prefix(r, validate_config(c.emissions), "emissions");
    return r;
}

Config parse_config_json(std::string_view text, bool lenient) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("core_model", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("core_model", "config must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "system" && key != "finance" && key != "emissions" && !lenient)
            throw ConfigError("core_model", "unknown top-level key '" + key + "'");
    }

    Config cfg;
    using S = SystemConfig;
    read_section<S>(doc, "system", cfg.system,
                    {{"latitude_deg", bind_number(&S::latitude_deg)},
                     {"longitude_deg", bind_number(&S::longitude_deg)},
                     {"elevation_m", bind_number(&S::elevation_m)},
                     {"utc_offset_h", bind_number(&S::utc_offset_h)},
                     {"tilt_deg", bind_number(&S::tilt_deg)},
                     {"surface_azimuth_deg", bind_number(&S::surface_azimuth_deg)},
                     {"albedo", bind_number(&S::albedo)},
                     {"p_rated_kwp", bind_number(&S::p_rated_kwp)},
                     {"inverter_rating_kw", bind_number(&S::inverter_rating_kw)},
                     {"array_area_m2", bind_number(&S::array_area_m2)},
                     {"module_count", bind_int(&S::module_count)},
                     {"module_power_wp", bind_number(&S::module_power_wp)},
                     {"module_eff", bind_number(&S::module_eff)},
                     {"g_o_kw_m2", bind_number(&S::g_o_kw_m2)},
                     {"noct_c", bind_number(&S::noct_c)}},
                    lenient);
    using F = FinanceConfig;
    read_section<F>(doc, "finance", cfg.finance,
                    {{"capital_cost", bind_number(&F::capital_cost)},
                     {"annual_om_cost", bind_number(&F::annual_om_cost)},
                     {"tariff_per_kwh", bind_number(&F::tariff_per_kwh)},
                     {"discount_rate", bind_number(&F::discount_rate)},
                     {"lifetime_years", bind_int(&F::lifetime_years)},
                     {"currency_label",
                      [](F& f, const json& v) {
                          if (!v.is_string()) throw ConfigError("core_model", "expected a string");
                          f.currency_label = v.get<std::string>();
                      }},
                     {"grid_export_fraction", bind_number(&F::grid_export_fraction)},
                     {"degradation_rate", bind_number(&F::degradation_rate)}},
                    lenient);
    using E = EmissionConfig;
    read_section<E>(doc, "emissions", cfg.emissions,
                    {{"grid_emission_factor_g_per_kwh", bind_number(&E::grid_emission_factor_g_per_kwh)},
                     {"lce_system_tco2", bind_number(&E::lce_system_tco2)},
                     {"lifetime_years", bind_int(&E::lifetime_years)}},
                    lenient);
    return cfg;
}

Config load_config_file(const std::string& path, bool lenient) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("core_model", "cannot open config file '" + path + "'", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config_json(ss.str(), lenient);
    } catch (const Error& e) {
        throw ConfigError("core_model", path + ": " + e.message());
    }
}

std::string config_to_json(const Config& cfg) {
    const auto& s = cfg.system;
    const auto& f = cfg.finance;
    const auto& e = cfg.emissions;
    ojson doc;
    doc["system"] = {{"latitude_deg", s.latitude_deg},
                     {"longitude_deg", s.longitude_deg},
                     {"elevation_m", s.elevation_m},
                     {"utc_offset_h", s.utc_offset_h},
                     {"tilt_deg", s.tilt_deg},
                     {"surface_azimuth_deg", s.surface_azimuth_deg},
                     {"albedo", s.albedo},
                     {"p_rated_kwp", s.p_rated_kwp},
                     {"inverter_rating_kw", s.inverter_rating_kw},
                     {"array_area_m2", s.array_area_m2},
                     {"module_count", s.module_count},
                     {"module_power_wp", s.module_power_wp},
                     {"module_eff", s.module_eff},
                     {"g_o_kw_m2", s.g_o_kw_m2},
                     {"noct_c", s.noct_c}};
    doc["finance"] = {{"capital_cost", f.capital_cost},
                      {"annual_om_cost", f.annual_om_cost},
                      {"tariff_per_kwh", f.tariff_per_kwh},
                      {"discount_rate", f.discount_rate},
                      {"lifetime_years", f.lifetime_years},
                      {"currency_label", f.currency_label},
                      {"grid_export_fraction", f.grid_export_fraction},
                      {"degradation_rate", f.degradation_rate}};
    doc["emissions"] = {{"grid_emission_factor_g_per_kwh", e.grid_emission_factor_g_per_kwh},
                        {"lce_system_tco2", e.lce_system_tco2},
                        {"lifetime_years", e.lifetime_years}};
    return doc.dump(2) + "\n";
}

std::string to_json(const ValidationReport& report) {
    ojson doc;
    doc["valid"] = report.ok();
    doc["violations"] = ojson::array();
    for (const auto& v : report.violations)
        doc["violations"].push_back({{"field", v.field}, {"message", v.message}});
    return doc.dump(2) + "\n";
}

}  // namespace pvperf
