#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pvperf/ingestion.hpp"

namespace pvperf {

enum class ClassProvenance { labeled, derived_from_clearness };
const char* to_string(ClassProvenance p) noexcept;

struct WeatherClass {
    WeatherLabel label = WeatherLabel::clear;
    ClassProvenance provenance = ClassProvenance::labeled;

    friend bool operator==(const WeatherClass&, const WeatherClass&) = default;
};

/// Mean daytime clearness thresholds (lower bounds, inclusive) and the
/// share of daylight hours that must carry a logger label for the label
/// majority to decide the class.
struct ClassificationOptions {
    double clear_min_kt = 0.65;
    double partly_cloudy_min_kt = 0.45;
    double overcast_min_kt = 0.25;
    double min_label_coverage = 0.5;
};

WeatherLabel class_from_clearness(double mean_kt, const ClassificationOptions& options = {});

/// `hours` are the joined records of one day. Empty when the day has no
/// daylight hours (unclassifiable).
std::optional<WeatherClass> classify_day(std::span<const JoinedRecord> hours,
                                         const ClassificationOptions& options = {});

/// Sample Pearson correlation. Throws DataError on length mismatch or
/// fewer than two pairs; empty when either input has zero variance.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

struct WeatherClassStats {
    WeatherLabel label = WeatherLabel::clear;
    int n_days = 0;
    double mean_daily_e_ac_kwh = 0.0;
    std::optional<double> pearson_r_hourly;  // pooled daylight (E_AC, POA) pairs
    std::size_t n_hour_pairs = 0;
};

struct ClassifiedDay {
    LocalDate date;
    std::optional<WeatherClass> weather_class;
    double e_ac_kwh = 0.0;
    double h_poa_kwh_m2 = 0.0;
};

/// Class-mean hourly profile, keyed by the local hour the interval ends.
struct ProfilePoint {
    int hour = 0;
    double e_ac_kwh = 0.0;
    double irradiance_w_m2 = 0.0;
    WeatherLabel label = WeatherLabel::clear;
    std::size_t samples = 0;
};

struct CorrelationReport {
    std::vector<WeatherClassStats> classes;  // classes with fewer than 2 days omitted
    std::optional<double> overall_daily_r;   // daily E_AC vs daily insolation
    std::size_t n_valid_days = 0;
    int unclassifiable_days = 0;
    std::vector<ClassifiedDay> days;
    std::vector<ProfilePoint> profile;
};

/// Uses valid days only; night hours never enter the hourly pairs.
CorrelationReport correlation_report(const AlignedSeries& series, const ClassificationOptions& options = {});

/// `hour,e_ac_kwh,irradiance_w_m2,class`, one row per class and hour.
std::string plot_data_csv(const CorrelationReport& report);

/// Published per-class figures of the 2.72 kWp Tarlac City system
/// (2020-2023), kept for side-by-side display only.
struct ReferenceClassFigure {
    WeatherLabel label;
    double pearson_r;
    double mean_daily_e_ac_kwh;
};
inline constexpr std::array<ReferenceClassFigure, 4> kReferenceClassFigures{{
    {WeatherLabel::clear, 0.784, 14.8},
    {WeatherLabel::partly_cloudy, 0.728, 11.9},
    {WeatherLabel::overcast, 0.636, 9.2},
    {WeatherLabel::rain, 0.445, 2.1},
}};
inline constexpr double kReferenceOverallDailyR = 0.679;

}  // namespace pvperf
