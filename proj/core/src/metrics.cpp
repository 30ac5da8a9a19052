#include "pvperf/metrics.hpp"

#include <array>
#include <map>
#include <set>

#include "pvperf/error.hpp"

namespace pvperf {
namespace {

constexpr const char* kModule = "metrics";

void require_rating(double p_rated_kwp) {
    if (!(p_rated_kwp > 0.0)) throw ConfigError(kModule, "p_rated_kwp must be positive");
}

std::optional<double> insolation_ratio(double energy_kwh, double h_poa_kwh_m2, double area_m2) {
    const double denom = h_poa_kwh_m2 * area_m2;
    if (!(denom > 0.0)) return std::nullopt;
    return energy_kwh / denom * 100.0;
}

}  // namespace

double array_yield(double e_dc_kwh, double p_rated_kwp) {
    require_rating(p_rated_kwp);
    return e_dc_kwh / p_rated_kwp;
}

double final_yield(double e_ac_kwh, double p_rated_kwp) {
    require_rating(p_rated_kwp);
    return e_ac_kwh / p_rated_kwp;
}

double reference_yield(double h_poa_kwh_m2, double g_o_kw_m2) {
    if (!(g_o_kw_m2 > 0.0)) throw ConfigError(kModule, "g_o_kw_m2 must be positive");
    return h_poa_kwh_m2 / g_o_kw_m2;
}

std::optional<double> performance_ratio(double y_f, double y_r) {
    if (!(y_r > 0.0)) return std::nullopt;
    return y_f / y_r * 100.0;
}

double capture_loss(double y_r, double y_a) { return y_r - y_a; }

double system_loss(double y_a, double y_f) { return y_a - y_f; }

double cuf(double e_ac_kwh, double p_rated_kwp, double hours) {
    require_rating(p_rated_kwp);
    if (!(hours > 0.0)) throw ConfigError(kModule, "CUF window must be positive");
    return e_ac_kwh / (p_rated_kwp * hours) * 100.0;
}

std::optional<double> array_efficiency(double e_dc_kwh, double h_poa_kwh_m2, double area_m2) {
    return insolation_ratio(e_dc_kwh, h_poa_kwh_m2, area_m2);
}

std::optional<double> inverter_efficiency(double e_ac_kwh, double e_dc_kwh) {
    if (e_dc_kwh > 0.0) return e_ac_kwh / e_dc_kwh * 100.0;
    if (e_ac_kwh > 0.0) throw DataError(kModule, "AC energy reported with zero DC energy");
    return std::nullopt;
}

std::optional<double> system_efficiency(double e_ac_kwh, double h_poa_kwh_m2, double area_m2) {
    return insolation_ratio(e_ac_kwh, h_poa_kwh_m2, area_m2);
}

double estimate_cell_temperature(double temp_c, double gpoa_w_m2, double noct_c) {
    return temp_c + gpoa_w_m2 * (noct_c - 20.0) / 800.0;
}

std::vector<const char*> flag_names(unsigned flags) {
    static constexpr std::array<std::pair<unsigned, const char*>, 6> names{{
        {flag_invalid_month, "invalid_month"},
        {flag_negative_capture_loss, "negative_capture_loss"},
        {flag_negative_system_loss, "negative_system_loss"},
        {flag_pr_above_100, "pr_above_100"},
        {flag_inverter_above_100, "inverter_above_100"},
        {flag_zero_insolation, "zero_insolation"},
    }};
    std::vector<const char*> out;
    for (const auto& [bit, name] : names)
        if (flags & bit) out.push_back(name);
    return out;
}

MetricValues compute_month_values(const MonthlySummary& s, const SystemConfig& cfg, const MetricsOptions& options,
                                  unsigned& flags) {
    MetricValues v;
    v.e_dc_kwh = s.e_dc_kwh;
    v.e_ac_kwh = s.e_ac_kwh;
    v.h_poa_kwh_m2 = s.h_poa_kwh_m2;
    v.cell_temp_c = s.cell_temp_c;
    v.y_a = array_yield(s.e_dc_kwh, cfg.p_rated_kwp);
    v.y_f = final_yield(s.e_ac_kwh, cfg.p_rated_kwp);
    v.y_r = reference_yield(s.h_poa_kwh_m2, cfg.g_o_kw_m2);
    v.l_c = capture_loss(v.y_r, v.y_a);
    v.l_s = system_loss(v.y_a, v.y_f);
    v.pr_pct = performance_ratio(v.y_f, v.y_r);
    v.eta_array_pct = array_efficiency(s.e_dc_kwh, s.h_poa_kwh_m2, cfg.array_area_m2);
    v.eta_inv_pct = inverter_efficiency(s.e_ac_kwh, s.e_dc_kwh);
    v.eta_sys_pct = system_efficiency(s.e_ac_kwh, s.h_poa_kwh_m2, cfg.array_area_m2);

    const int days = days_in_month(s.year, s.month);
    v.e_grid_kwh = options.grid_export_fraction * s.e_ac_kwh * days;
    v.monthly_capacity_factor_pct = cuf(s.e_ac_kwh * days, cfg.p_rated_kwp, 24.0 * days);

    if (v.l_c < 0.0) flags |= flag_negative_capture_loss;
    if (v.l_s < -options.meter_tolerance * v.y_a) flags |= flag_negative_system_loss;
    if (v.pr_pct && *v.pr_pct > 100.0) flags |= flag_pr_above_100;
    if (v.eta_inv_pct && *v.eta_inv_pct > 100.0 * (1.0 + options.meter_tolerance))
        flags |= flag_inverter_above_100;
    if (!(s.h_poa_kwh_m2 > 0.0)) flags |= flag_zero_insolation;
    return v;
}

std::vector<MonthlyMetrics> compute_monthly(std::span<const MonthlySummary> summaries, const SystemConfig& cfg,
                                            const MetricsOptions& options) {
    std::vector<MonthlyMetrics> out;
    out.reserve(summaries.size());
    for (const auto& s : summaries) {
        MonthlyMetrics m;
        m.year = s.year;
        m.month = s.month;
        m.valid_days = s.valid_days;
        if (s.valid) {
            m.values = compute_month_values(s, cfg, options, m.flags);
        } else {
            m.flags |= flag_invalid_month;
        }
        out.push_back(m);
    }
    return out;
}

const char* to_string(YearBasis basis) noexcept {
    return basis == YearBasis::generic ? "generic" : "calendar";
}

std::optional<AnnualMetrics> compute_annual(std::span<const MonthlyMetrics> months, const SystemConfig& cfg,
                                            YearBasis basis, double grid_export_fraction) {
    AnnualMetrics a;
    a.basis = basis;

    struct Acc {
        double e_ac_weighted = 0.0;
        int days = 0;
    };
    std::map<unsigned, Acc> by_month;
    std::set<int> years;
    double h_poa = 0.0, cell = 0.0;
    int cell_n = 0;
    for (const auto& m : months) {
        if (!m.values) continue;
        const MetricValues& v = *m.values;
        if (a.months_used == 0) a.first_year = m.year;
        a.last_year = m.year;
        ++a.months_used;
        years.insert(m.year);
        auto& acc = by_month[m.month];
        acc.e_ac_weighted += v.e_ac_kwh * m.valid_days;
        acc.days += m.valid_days;

        a.e_dc_kwh += v.e_dc_kwh;
        a.e_ac_kwh += v.e_ac_kwh;
        h_poa += v.h_poa_kwh_m2;
        a.y_a += v.y_a;
        a.y_r += v.y_r;
        a.y_f += v.y_f;
        a.l_c += v.l_c;
        a.l_s += v.l_s;
        if (v.cell_temp_c) {
            cell += *v.cell_temp_c;
            ++cell_n;
        }
    }
    if (a.months_used == 0) return std::nullopt;

    const double n = a.months_used;
    for (double* f : {&a.e_dc_kwh, &a.e_ac_kwh, &h_poa, &a.y_a, &a.y_r, &a.y_f, &a.l_c, &a.l_s}) *f /= n;
    if (cell_n) a.cell_temp_c = cell / cell_n;
    a.pr_pct = performance_ratio(a.y_f, a.y_r);
    a.eta_array_pct = array_efficiency(a.e_dc_kwh, h_poa, cfg.array_area_m2);
    a.eta_inv_pct = inverter_efficiency(a.e_ac_kwh, a.e_dc_kwh);
    a.eta_sys_pct = system_efficiency(a.e_ac_kwh, h_poa, cfg.array_area_m2);

    auto month_days = [&](unsigned month) {
        if (basis == YearBasis::generic) return static_cast<double>(days_in_month(2001, month));
        double sum = 0.0;
        for (int y : years) sum += days_in_month(y, month);
        return sum / static_cast<double>(years.size());
    };
    double year_days = 0.0, covered_days = 0.0, energy = 0.0;
    for (unsigned mo = 1; mo <= 12; ++mo) year_days += month_days(mo);
    for (const auto& [mo, acc] : by_month) {
        if (acc.days == 0) continue;
        energy += acc.e_ac_weighted / acc.days * month_days(mo);
        covered_days += month_days(mo);
    }
    a.complete_year = by_month.size() == 12;
    a.hours_in_year = year_days * 24.0;
    a.e_ac_total_kwh = covered_days > 0 ? energy * year_days / covered_days : 0.0;
    a.e_grid_total_kwh = grid_export_fraction * a.e_ac_total_kwh;
    a.cuf_pct = cuf(a.e_ac_total_kwh, cfg.p_rated_kwp, a.hours_in_year);
    return a;
}

}  // namespace pvperf
