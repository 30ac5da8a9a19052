#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pvperf/config.hpp"

namespace pvperf {

struct CashFlowYear {
    int year = 0;
    double energy_kwh = 0.0;
    double export_kwh = 0.0;
    double outflow = 0.0;  // capital in year 0, O&M afterwards
    double inflow = 0.0;   // net-metering credit: export * tariff
    double net = 0.0;
};

/// Years 0..lifetime. Year 0 carries only the capital outflow.
struct CashFlowSchedule {
    std::vector<CashFlowYear> years;

    std::vector<double> net() const;
};

/// Energy and export in year t >= 1 scale by (1 - degradation_rate)^(t-1).
CashFlowSchedule build_schedule(const FinanceConfig& fin, double annual_energy_kwh, double annual_grid_export_kwh);

/// Sum of net_t / (1 + rate)^t. Throws DataError when rate <= -1.
double npv(std::span<const double> net, double rate);
double npv(const CashFlowSchedule& schedule, double rate);

/// (capital + PV of O&M) / PV of energy. Throws DataError when the
/// discounted energy is zero.
double lcoe(const FinanceConfig& fin, double annual_energy_kwh, double rate);

/// NPV of the benefit stream over capital, in percent. Throws when
/// capital <= 0.
double roi(double npv_benefits, double capital);

/// First time the cumulative discounted net turns non-negative, linearly
/// interpolated inside the crossing year. Empty when it never does.
std::optional<double> payback(std::span<const double> net, double rate);
std::optional<double> payback(const CashFlowSchedule& schedule, double rate);

double monthly_savings(double monthly_export_kwh, double tariff_per_kwh);

struct Co2Balance {
    double gross_t_per_yr = 0.0;
    double net_t_per_kwp_yr = 0.0;
};

/// gross = E * EF / 1e6; net = (gross - LCE / lifetime) / P_rated.
Co2Balance co2_balance(const EmissionConfig& em, double annual_energy_kwh, double p_rated_kwp);

/// Rate in [lo, hi] at which the schedule's NPV equals `target_npv`, by
/// bisection. Requires NPV to bracket the target over the interval.
double fit_discount_rate(const CashFlowSchedule& schedule, double target_npv, double lo = 0.0, double hi = 0.99,
                         double tolerance = 1e-12);

struct ImpactResult {
    double discount_rate = 0.0;
    double tariff_per_kwh = 0.0;
    double annual_energy_kwh = 0.0;
    double annual_export_kwh = 0.0;
    double annual_revenue = 0.0;
    double npv_benefits = 0.0;
    std::optional<double> lcoe;     // empty without energy
    std::optional<double> roi_pct;  // empty without capital
    std::optional<double> payback_simple_years;
    std::optional<double> payback_discounted_years;
    double monthly_export_kwh = 0.0;
    double monthly_savings = 0.0;
    double gross_co2_avoided_t_per_yr = 0.0;
    double net_co2_avoided_t_per_kwp_yr = 0.0;
    CashFlowSchedule schedule;
};

ImpactResult evaluate_impact(const FinanceConfig& fin, const EmissionConfig& em, double p_rated_kwp,
                             double annual_energy_kwh, double annual_export_kwh);

/// Published outcomes of the 2.72 kWp Tarlac City system, for display
/// next to computed values.
struct ReferenceImpact {
    double annual_energy_kwh = 3699.0;
    double annual_export_kwh = 2380.0;
    double annual_revenue = 690.59;
    double npv = 4197.26;
    double lcoe = 0.088;
    double roi_pct = 238.2;
    double payback_years = 6.0;
    double monthly_export_kwh = 198.33;
    double monthly_savings = 57.55;
    double net_co2_t_per_kwp_yr = 0.379;
};
inline constexpr ReferenceImpact kReferenceImpact{};

}  // namespace pvperf
