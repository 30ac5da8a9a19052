#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pvperf/config.hpp"
#include "pvperf/ingestion.hpp"

namespace pvperf {

// Yield and loss metrics, all per day and normalised to nameplate power.
//
//   Y_A = E_DC / P_rated         array yield         kWh/kWp
//   Y_F = E_AC / P_rated         final yield         kWh/kWp
//   Y_R = H_poa / G_o            reference yield     h (kWh/m2 at G_o = 1 kW/m2)
//   L_C = Y_R - Y_A              capture loss
//   L_S = Y_A - Y_F              system loss
//   PR  = Y_F / Y_R * 100
//
// Note the orientation of PR: final over reference yield. The inverse
// ratio exceeds 100 % for any lossy system.

/// Throws ConfigError when p_rated_kwp <= 0.
double array_yield(double e_dc_kwh, double p_rated_kwp);
double final_yield(double e_ac_kwh, double p_rated_kwp);
/// Throws ConfigError when g_o_kw_m2 <= 0.
double reference_yield(double h_poa_kwh_m2, double g_o_kw_m2 = 1.0);
/// Empty when y_r <= 0.
std::optional<double> performance_ratio(double y_f, double y_r);
double capture_loss(double y_r, double y_a);
double system_loss(double y_a, double y_f);

inline constexpr double kHoursGenericYear = 8760.0;
inline constexpr double kHoursLeapYear = 8784.0;

/// E_AC / (P_rated * hours) * 100.
double cuf(double e_ac_kwh, double p_rated_kwp, double hours = kHoursGenericYear);

/// E_DC / (H_poa * A) * 100; empty when insolation or area is zero.
std::optional<double> array_efficiency(double e_dc_kwh, double h_poa_kwh_m2, double area_m2);
/// E_AC / E_DC * 100. Empty when both are zero; DataError when only E_DC is.
std::optional<double> inverter_efficiency(double e_ac_kwh, double e_dc_kwh);
std::optional<double> system_efficiency(double e_ac_kwh, double h_poa_kwh_m2, double area_m2);

/// NOCT model: T_amb + G_poa * (NOCT - 20) / 800.
double estimate_cell_temperature(double temp_c, double gpoa_w_m2, double noct_c);

/// Relative metering tolerance before E_AC > E_DC is flagged.
inline constexpr double kMeterTolerance = 0.005;

enum MetricFlag : unsigned {
    flag_none = 0,
    flag_invalid_month = 1u << 0,
    flag_negative_capture_loss = 1u << 1,
    flag_negative_system_loss = 1u << 2,
    flag_pr_above_100 = 1u << 3,
    flag_inverter_above_100 = 1u << 4,
    flag_zero_insolation = 1u << 5,
};

std::vector<const char*> flag_names(unsigned flags);

struct MetricValues {
    double e_dc_kwh = 0.0;      // daily mean
    double e_ac_kwh = 0.0;      // daily mean
    double h_poa_kwh_m2 = 0.0;  // daily mean
    double y_a = 0.0;
    double y_r = 0.0;
    double y_f = 0.0;
    double l_c = 0.0;
    double l_s = 0.0;
    std::optional<double> pr_pct;
    std::optional<double> eta_array_pct;
    std::optional<double> eta_inv_pct;
    std::optional<double> eta_sys_pct;
    double e_grid_kwh = 0.0;           // per calendar month
    double monthly_capacity_factor_pct = 0.0;
    std::optional<double> cell_temp_c;
};

struct MonthlyMetrics {
    int year = 0;
    unsigned month = 0;
    int valid_days = 0;
    unsigned flags = flag_none;
    std::optional<MetricValues> values;  // absent for invalid months
};

struct MetricsOptions {
    double grid_export_fraction = 2380.0 / 3699.0;
    double meter_tolerance = kMeterTolerance;
};

/// Evaluates every metric for one month from its daily means.
MetricValues compute_month_values(const MonthlySummary& summary, const SystemConfig& cfg,
                                  const MetricsOptions& options, unsigned& flags);

std::vector<MonthlyMetrics> compute_monthly(std::span<const MonthlySummary> summaries, const SystemConfig& cfg,
                                            const MetricsOptions& options = {});

/// generic: 8760 h and a 28-day February. calendar: the real lengths of
/// the years covered (8784 h for a single leap year).
enum class YearBasis { generic, calendar };
const char* to_string(YearBasis basis) noexcept;

struct AnnualMetrics {
    int first_year = 0;
    int last_year = 0;
    int months_used = 0;
    bool complete_year = false;   // all twelve calendar months present
    YearBasis basis = YearBasis::generic;
    double hours_in_year = kHoursGenericYear;
    double e_ac_total_kwh = 0.0;  // typical year from calendar-month daily means
    double e_grid_total_kwh = 0.0;
    double cuf_pct = 0.0;

    // Unweighted means of the monthly values.
    double e_dc_kwh = 0.0;
    double e_ac_kwh = 0.0;
    double y_a = 0.0;
    double y_r = 0.0;
    double y_f = 0.0;
    double l_c = 0.0;
    double l_s = 0.0;
    std::optional<double> cell_temp_c;
    // Ratios of the means above (so PR = Y_F/Y_R of the mean row).
    std::optional<double> pr_pct;
    std::optional<double> eta_array_pct;
    std::optional<double> eta_inv_pct;
    std::optional<double> eta_sys_pct;
};

/// Empty when no month carries metrics.
std::optional<AnnualMetrics> compute_annual(std::span<const MonthlyMetrics> months, const SystemConfig& cfg,
                                            YearBasis basis = YearBasis::generic,
                                            double grid_export_fraction = 2380.0 / 3699.0);

}  // namespace pvperf
