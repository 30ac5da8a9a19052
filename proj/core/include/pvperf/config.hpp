#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pvperf {

/// Site geometry and array ratings. Defaults describe the 2.72 kWp
/// Tarlac City rooftop array.
///
/// Azimuths are degrees clockwise from true north (180 = due south).
struct SystemConfig {
    double latitude_deg = 15.48;
    double longitude_deg = 120.65;
    double elevation_m = 10.0;
    double utc_offset_h = 8.0;

    double tilt_deg = 26.0;
    double surface_azimuth_deg = 165.0;
    double albedo = 0.2;

    double p_rated_kwp = 2.72;
    double inverter_rating_kw = 3.0;
    double array_area_m2 = 16.1;
    int module_count = 8;
    double module_power_wp = 340.0;
    double module_eff = 0.1941;

    double g_o_kw_m2 = 1.0;
    double noct_c = 45.0;  // synthetic data only

    int utc_offset_minutes() const noexcept;
};

struct FinanceConfig {
    double capital_cost = 1762.12;
    double annual_om_cost = 176.21;
    /// Annual revenue over annual grid export, 690.59 / 2380.
    double tariff_per_kwh = 0.29016;
    /// Fitted so the 20-year benefit stream has NPV 4197.26.
    double discount_rate = 0.05877;
    int lifetime_years = 20;
    std::string currency_label = "USD";
    /// Share of AC energy exported under net metering (2380 / 3699).
    double grid_export_fraction = 2380.0 / 3699.0;
    /// Fractional yearly loss of output; energy in year t scales by (1-d)^(t-1).
    double degradation_rate = 0.0;
};

struct EmissionConfig {
    double grid_emission_factor_g_per_kwh = 480.0;
    double lce_system_tco2 = 5.4;
    int lifetime_years = 20;
};

struct Config {
    SystemConfig system;
    FinanceConfig finance;
    EmissionConfig emissions;
};

struct Violation {
    std::string field;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

inline constexpr double kRatingConsistencyTol = 1e-9;

ValidationReport validate_config(const SystemConfig& cfg);
ValidationReport validate_config(const FinanceConfig& cfg);
ValidationReport validate_config(const EmissionConfig& cfg);
/// All three blocks; field names are prefixed with their section ("system.albedo").
ValidationReport validate_config(const Config& cfg);

/// Parses the JSON document `{"system": {...}, "finance": {...}, "emissions": {...}}`.
/// Missing keys keep their defaults. Unknown keys throw ConfigError unless
/// `lenient` is set. Does not run validate_config.
Config parse_config_json(std::string_view text, bool lenient = false);
Config load_config_file(const std::string& path, bool lenient = false);

std::string config_to_json(const Config& cfg);
std::string to_json(const ValidationReport& report);

}  // namespace pvperf
