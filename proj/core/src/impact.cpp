#include "pvperf/impact.hpp"

#include <algorithm>
#include <cmath>

#include "pvperf/error.hpp"

namespace pvperf {
namespace {

constexpr const char* kModule = "impact";

void check_rate(double rate) {
    if (!(rate > -1.0) || !std::isfinite(rate))
        throw DataError(kModule, "discount rate must be finite and greater than -1");
}

}  // namespace

std::vector<double> CashFlowSchedule::net() const {
    std::vector<double> out;
    out.reserve(years.size());
    for (const auto& y : years) out.push_back(y.net);
    return out;
}

CashFlowSchedule build_schedule(const FinanceConfig& fin, double annual_energy_kwh, double annual_grid_export_kwh) {
    if (fin.lifetime_years < 1) throw ConfigError(kModule, "lifetime_years must be >= 1");
    CashFlowSchedule s;
    s.years.reserve(static_cast<std::size_t>(fin.lifetime_years) + 1);
    s.years.push_back({0, 0.0, 0.0, fin.capital_cost, 0.0, -fin.capital_cost});
    for (int t = 1; t <= fin.lifetime_years; ++t) {
        const double factor = std::pow(1.0 - fin.degradation_rate, t - 1);
        CashFlowYear y;
        y.year = t;
        y.energy_kwh = annual_energy_kwh * factor;
        y.export_kwh = annual_grid_export_kwh * factor;
        y.outflow = fin.annual_om_cost;
        y.inflow = y.export_kwh * fin.tariff_per_kwh;
        y.net = y.inflow - y.outflow;
        s.years.push_back(y);
    }
    return s;
}

double npv(std::span<const double> net, double rate) {
    check_rate(rate);
    double sum = 0.0;
    double discount = 1.0;
    for (double v : net) {
        sum += v / discount;
        discount *= 1.0 + rate;
    }
    return sum;
}

double npv(const CashFlowSchedule& schedule, double rate) { return npv(schedule.net(), rate); }

double lcoe(const FinanceConfig& fin, double annual_energy_kwh, double rate) {
    check_rate(rate);
    double costs = fin.capital_cost;
    double energy = 0.0;
    double discount = 1.0;
    for (int t = 1; t <= fin.lifetime_years; ++t) {
        discount *= 1.0 + rate;
        costs += fin.annual_om_cost / discount;
        energy += annual_energy_kwh * std::pow(1.0 - fin.degradation_rate, t - 1) / discount;
    }
    if (!(energy > 0.0)) throw DataError(kModule, "LCOE undefined: zero discounted energy");
    return costs / energy;
}

double roi(double npv_benefits, double capital) {
    if (!(capital > 0.0)) throw DataError(kModule, "ROI undefined: capital must be positive");
    return npv_benefits / capital * 100.0;
}

std::optional<double> payback(std::span<const double> net, double rate) {
    check_rate(rate);
    if (net.empty()) return std::nullopt;
    double cumulative = net[0];
    if (cumulative >= 0.0) return 0.0;
    const double slack = 1e-12 * -cumulative;  // absorbs round-off in the discount factors
    double discount = 1.0;
    for (std::size_t t = 1; t < net.size(); ++t) {
        discount *= 1.0 + rate;
        const double step = net[t] / discount;
        const double before = cumulative;
        cumulative += step;
        if (cumulative >= -slack) return static_cast<double>(t - 1) + std::min(1.0, -before / step);
    }
    return std::nullopt;
}

std::optional<double> payback(const CashFlowSchedule& schedule, double rate) {
    return payback(schedule.net(), rate);
}

double monthly_savings(double monthly_export_kwh, double tariff_per_kwh) {
    return monthly_export_kwh * tariff_per_kwh;
}

Co2Balance co2_balance(const EmissionConfig& em, double annual_energy_kwh, double p_rated_kwp) {
    if (em.lifetime_years <= 0) throw ConfigError(kModule, "emission lifetime_years must be positive");
    if (!(p_rated_kwp > 0.0)) throw ConfigError(kModule, "p_rated_kwp must be positive");
    Co2Balance b;
    b.gross_t_per_yr = annual_energy_kwh * em.grid_emission_factor_g_per_kwh / 1e6;
    b.net_t_per_kwp_yr = (b.gross_t_per_yr - em.lce_system_tco2 / em.lifetime_years) / p_rated_kwp;
    return b;
}

double fit_discount_rate(const CashFlowSchedule& schedule, double target_npv, double lo, double hi,
                         double tolerance) {
    const auto net = schedule.net();
    double f_lo = npv(net, lo) - target_npv;
    const double f_hi = npv(net, hi) - target_npv;
    if (f_lo * f_hi > 0.0) throw DataError(kModule, "target NPV is not bracketed by the rate interval");
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = npv(net, mid) - target_npv;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ImpactResult evaluate_impact(const FinanceConfig& fin, const EmissionConfig& em, double p_rated_kwp,
                             double annual_energy_kwh, double annual_export_kwh) {
    ImpactResult r;
    r.discount_rate = fin.discount_rate;
    r.tariff_per_kwh = fin.tariff_per_kwh;
    r.annual_energy_kwh = annual_energy_kwh;
    r.annual_export_kwh = annual_export_kwh;
    r.schedule = build_schedule(fin, annual_energy_kwh, annual_export_kwh);
    r.annual_revenue = r.schedule.years.size() > 1 ? r.schedule.years[1].inflow : 0.0;
    r.npv_benefits = npv(r.schedule, fin.discount_rate);
    if (annual_energy_kwh > 0.0) r.lcoe = lcoe(fin, annual_energy_kwh, fin.discount_rate);
    if (fin.capital_cost > 0.0) r.roi_pct = roi(r.npv_benefits, fin.capital_cost);
    r.payback_simple_years = payback(r.schedule, 0.0);
    r.payback_discounted_years = payback(r.schedule, fin.discount_rate);
    r.monthly_export_kwh = annual_export_kwh / 12.0;
    r.monthly_savings = monthly_savings(r.monthly_export_kwh, fin.tariff_per_kwh);
    const Co2Balance co2 = co2_balance(em, annual_energy_kwh, p_rated_kwp);
    r.gross_co2_avoided_t_per_yr = co2.gross_t_per_yr;
    r.net_co2_avoided_t_per_kwp_yr = co2.net_t_per_kwp_yr;
    return r;
}

}  // namespace pvperf
