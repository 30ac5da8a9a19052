#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pvperf/config.hpp"
#include "pvperf/solar_geometry.hpp"
#include "pvperf/time.hpp"

namespace pvperf {

// Hourly values are interval energy: a record stamped T covers [T - 1 h, T).
// Irradiance values are the mean over the same interval.

struct GenerationRecord {
    Timestamp timestamp;
    double e_dc_kwh = 0.0;
    double e_ac_kwh = 0.0;
};

enum class WeatherLabel { clear, partly_cloudy, overcast, rain };

inline constexpr WeatherLabel kWeatherLabels[] = {WeatherLabel::clear, WeatherLabel::partly_cloudy,
                                                  WeatherLabel::overcast, WeatherLabel::rain};

const char* to_string(WeatherLabel label) noexcept;
std::optional<WeatherLabel> parse_weather_label(std::string_view text) noexcept;

struct WeatherRecord {
    Timestamp timestamp;
    double ghi_w_m2 = 0.0;
    double dni_w_m2 = 0.0;
    double dhi_w_m2 = 0.0;
    std::optional<double> gpoa_w_m2;
    double temp_c = 0.0;
    double wind_ms = 0.0;
    std::optional<WeatherLabel> weather_label;
};

inline constexpr double kMaxIrradiance = 1500.0;  // W/m2, GHI and POA ceiling

/// A run of missing hours between two consecutive records of one file.
struct Gap {
    std::string source;  // "generation" or "weather"
    Timestamp last_before;
    Timestamp first_after;
    std::int64_t missing_hours = 0;
    std::size_t line = 0;  // line of first_after
};

template <class Record>
struct ParsedSeries {
    std::vector<Record> records;
    std::vector<Gap> gaps;
};

inline constexpr std::string_view kGenerationHeader = "timestamp,e_dc_kwh,e_ac_kwh";
inline constexpr std::string_view kWeatherHeader =
    "timestamp,ghi_w_m2,dni_w_m2,dhi_w_m2,gpoa_w_m2,temp_c,wind_ms,weather_label";

/// Throws DataError (with line number) on malformed rows, out-of-range
/// values, duplicate or decreasing timestamps and sub-hourly steps.
/// Gaps of whole hours are reported, not rejected.
ParsedSeries<GenerationRecord> parse_generation_csv(std::istream& in);
ParsedSeries<WeatherRecord> parse_weather_csv(std::istream& in);

/// Canonical writers: LF line ends, shortest round-trip numbers, each
/// timestamp in its own offset. Well-formed canonical files round-trip
/// byte for byte.
std::string serialize_generation_csv(std::span<const GenerationRecord> records);
std::string serialize_weather_csv(std::span<const WeatherRecord> records);

struct ValidityPolicy {
    /// A day is valid when at least this share of its daylight hours joined.
    double min_daylight_coverage = 0.9;
    /// A month is valid with at least this many valid days.
    int min_valid_days = 25;
};

enum class InsolationSource { measured, transposed, mixed };
const char* to_string(InsolationSource source) noexcept;

struct JoinedRecord {
    GenerationRecord generation;
    WeatherRecord weather;
    double poa_w_m2 = 0.0;        // measured gpoa or the transposed value
    bool poa_transposed = false;
    SunPosition sun;              // at the middle of the hour
    LocalDate date;               // local civil date of the middle of the hour

    const Timestamp& timestamp() const noexcept { return generation.timestamp; }
    bool daylight() const noexcept { return sun.above_horizon(); }
};

enum class MissingHalf { weather, generation };

struct UnmatchedHour {
    Timestamp timestamp;
    MissingHalf missing;
};

struct DayStatus {
    LocalDate date;
    int daylight_hours = 0;         // on the record grid, from solar geometry
    int joined_daylight_hours = 0;
    int joined_hours = 0;
    bool valid = false;
};

struct MonthStatus {
    int year = 0;
    unsigned month = 0;
    int valid_days = 0;
    bool valid = false;
};

/// Generation joined with weather on the UTC instant.
struct AlignedSeries {
    std::vector<JoinedRecord> records;      // ascending time
    std::vector<UnmatchedHour> unmatched;   // ascending time
    std::vector<Gap> gaps;
    std::vector<DayStatus> days;            // every local date spanned by either input
    std::vector<MonthStatus> months;
    ValidityPolicy policy;
    int offset_minutes = 0;

    const DayStatus* day(LocalDate date) const;
};

/// Inner join plus validity flags. Inputs are sorted by time first, so any
/// permutation of the same records produces the same series. Throws
/// DataError("no overlap") when no instant is shared.
AlignedSeries align(std::span<const GenerationRecord> generation, std::span<const WeatherRecord> weather,
                    const SystemConfig& cfg, const ValidityPolicy& policy = {});
AlignedSeries align(const ParsedSeries<GenerationRecord>& generation,
                    const ParsedSeries<WeatherRecord>& weather, const SystemConfig& cfg,
                    const ValidityPolicy& policy = {});

struct DailySummary {
    LocalDate date;
    double e_dc_kwh = 0.0;
    double e_ac_kwh = 0.0;
    double h_poa_kwh_m2 = 0.0;
    double temp_c = 0.0;   // mean over joined hours
    double wind_ms = 0.0;
    std::optional<WeatherLabel> dominant_label;  // majority over labelled daylight hours
    InsolationSource insolation_source = InsolationSource::measured;
    int joined_hours = 0;
    bool valid = false;
};

/// Sums over valid days; the unsuffixed energy fields are daily means
/// over those valid days (the layout of a monthly yield table).
struct MonthlySummary {
    int year = 0;
    unsigned month = 0;
    int valid_days = 0;
    double e_dc_kwh_sum = 0.0;
    double e_ac_kwh_sum = 0.0;
    double h_poa_kwh_m2_sum = 0.0;
    double e_dc_kwh = 0.0;
    double e_ac_kwh = 0.0;
    double h_poa_kwh_m2 = 0.0;
    double temp_c = 0.0;
    double wind_ms = 0.0;
    std::optional<double> cell_temp_c;  // mean of the logged temp_c column
    std::optional<WeatherLabel> dominant_label;
    InsolationSource insolation_source = InsolationSource::measured;
    bool valid = false;
};

std::vector<DailySummary> aggregate_daily(const AlignedSeries& series);
std::vector<MonthlySummary> aggregate_monthly(const AlignedSeries& series);
std::vector<MonthlySummary> aggregate_monthly(std::span<const DailySummary> days, const ValidityPolicy& policy);

/// Fills absent gpoa values by transposition; measured values are kept.
std::vector<WeatherRecord> fill_poa(std::span<const WeatherRecord> weather, const SystemConfig& cfg);

}  // namespace pvperf
