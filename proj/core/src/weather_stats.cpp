#include "pvperf/weather_stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "pvperf/error.hpp"
#include "pvperf/format.hpp"

namespace pvperf {
namespace {

constexpr const char* kModule = "weather_stats";

std::size_t index_of(WeatherLabel l) { return static_cast<std::size_t>(l); }

int local_hour(const Timestamp& ts, int offset_minutes) {
    std::int64_t local = ts.utc_seconds + offset_minutes * 60;
    local %= 86400;
    if (local < 0) local += 86400;
    return static_cast<int>(local / 3600);
}

}  // namespace

const char* to_string(ClassProvenance p) noexcept {
    return p == ClassProvenance::labeled ? "labeled" : "derived_from_clearness";
}

WeatherLabel class_from_clearness(double kt, const ClassificationOptions& o) {
    if (kt >= o.clear_min_kt) return WeatherLabel::clear;
    if (kt >= o.partly_cloudy_min_kt) return WeatherLabel::partly_cloudy;
    if (kt >= o.overcast_min_kt) return WeatherLabel::overcast;
    return WeatherLabel::rain;
}

std::optional<WeatherClass> classify_day(std::span<const JoinedRecord> hours, const ClassificationOptions& o) {
    std::array<int, 4> labels{};
    int daylight = 0, labelled = 0;
    double kt_sum = 0.0;
    int kt_n = 0;
    for (const auto& h : hours) {
        if (!h.daylight()) continue;
        ++daylight;
        if (h.weather.weather_label) {
            ++labelled;
            ++labels[index_of(*h.weather.weather_label)];
        }
        if (auto kt = clearness_index(h.weather.ghi_w_m2, h.sun)) {
            kt_sum += *kt;
            ++kt_n;
        }
    }
    if (daylight == 0) return std::nullopt;

    if (labelled >= o.min_label_coverage * daylight) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < labels.size(); ++i)
            if (labels[i] > labels[best]) best = i;
        return WeatherClass{kWeatherLabels[best], ClassProvenance::labeled};
    }
    const double mean_kt = kt_n ? kt_sum / kt_n : 0.0;
    return WeatherClass{class_from_clearness(mean_kt, o), ClassProvenance::derived_from_clearness};
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw DataError(kModule, "pearson: length mismatch (" + std::to_string(xs.size()) + " vs " +
                                     std::to_string(ys.size()) + ")");
    if (xs.size() < 2) throw DataError(kModule, "pearson: need at least two pairs");

    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    double denom = std::sqrt(sxx * syy);
    if (!std::isfinite(denom) || denom == 0.0) denom = std::sqrt(sxx) * std::sqrt(syy);
    const double r = sxy / denom;
    return std::clamp(r, -1.0, 1.0);
}

CorrelationReport correlation_report(const AlignedSeries& series, const ClassificationOptions& options) {
    CorrelationReport report;

    struct ClassAcc {
        int days = 0;
        double e_ac = 0.0;
        std::vector<double> e_hourly, g_hourly;
        std::map<int, std::pair<double, double>> by_hour;
        std::map<int, std::size_t> by_hour_n;
    };
    std::array<ClassAcc, 4> acc;
    std::vector<double> daily_e, daily_h;

    auto rec = series.records.begin();
    for (const auto& status : series.days) {
        auto first = rec;
        while (rec != series.records.end() && rec->date == status.date) ++rec;
        if (!status.valid) continue;
        const std::span<const JoinedRecord> hours(first, rec);

        ClassifiedDay day;
        day.date = status.date;
        for (const auto& h : hours) {
            day.e_ac_kwh += h.generation.e_ac_kwh;
            day.h_poa_kwh_m2 += h.poa_w_m2 / 1000.0;
        }
        day.weather_class = classify_day(hours, options);
        ++report.n_valid_days;
        daily_e.push_back(day.e_ac_kwh);
        daily_h.push_back(day.h_poa_kwh_m2);

        if (!day.weather_class) {
            ++report.unclassifiable_days;
        } else {
            auto& a = acc[index_of(day.weather_class->label)];
            ++a.days;
            a.e_ac += day.e_ac_kwh;
            for (const auto& h : hours) {
                if (!h.daylight()) continue;
                a.e_hourly.push_back(h.generation.e_ac_kwh);
                a.g_hourly.push_back(h.poa_w_m2);
                const int hr = local_hour(h.timestamp(), series.offset_minutes);
                a.by_hour[hr].first += h.generation.e_ac_kwh;
                a.by_hour[hr].second += h.poa_w_m2;
                ++a.by_hour_n[hr];
            }
        }
        report.days.push_back(day);
    }

    for (WeatherLabel label : kWeatherLabels) {
        const auto& a = acc[index_of(label)];
        if (a.days < 2) continue;
        WeatherClassStats s;
        s.label = label;
        s.n_days = a.days;
        s.mean_daily_e_ac_kwh = a.e_ac / a.days;
        s.n_hour_pairs = a.e_hourly.size();
        if (s.n_hour_pairs >= 2) s.pearson_r_hourly = pearson(a.e_hourly, a.g_hourly);
        report.classes.push_back(s);
        for (const auto& [hr, sums] : a.by_hour) {
            const auto n = a.by_hour_n.at(hr);
            report.profile.push_back({hr, sums.first / n, sums.second / n, label, n});
        }
    }
    if (daily_e.size() >= 2) report.overall_daily_r = pearson(daily_e, daily_h);
    return report;
}

std::string plot_data_csv(const CorrelationReport& report) {
    std::ostringstream out;
    out << "hour,e_ac_kwh,irradiance_w_m2,class\n";
    for (const auto& p : report.profile) {
        out << p.hour << ',' << format_fixed(p.e_ac_kwh, kReportDecimals) << ','
            << format_fixed(p.irradiance_w_m2, kReportDecimals) << ',' << to_string(p.label) << '\n';
    }
    return out.str();
}

}  // namespace pvperf
