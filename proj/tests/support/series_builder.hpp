#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "pvperf/ingestion.hpp"
#include "pvperf/time.hpp"

namespace pvperf::test {

inline LocalDate ymd(int y, unsigned m, unsigned d) {
    return LocalDate{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

inline Timestamp local_hour(LocalDate date, int hour, int offset_minutes = 480) {
    return make_timestamp(date, hour, 0, offset_minutes);
}

inline GenerationRecord gen_at(Timestamp ts, double dc, double ac) { return {ts, dc, ac}; }

inline WeatherRecord wx_at(Timestamp ts, double ghi, double poa, std::optional<WeatherLabel> label = {}) {
    WeatherRecord w;
    w.timestamp = ts;
    w.ghi_w_m2 = ghi;
    w.dni_w_m2 = 0.0;
    w.dhi_w_m2 = ghi;
    w.gpoa_w_m2 = poa;
    w.temp_c = 30.0;
    w.wind_ms = 1.0;
    w.weather_label = label;
    return w;
}

// Hour stamps 1..24 of each local day (stamp 24 is the next midnight),
// so every interval lies on its own date.
struct DayBuilder {
    std::vector<GenerationRecord> generation;
    std::vector<WeatherRecord> weather;

    void add_day(LocalDate date, double poa_daylight, double dc_per_hour, double ac_per_hour,
                 std::optional<WeatherLabel> label = {}) {
        const Timestamp midnight = make_timestamp(date, 0, 0, 480);
        for (int h = 1; h <= 24; ++h) {
            const Timestamp ts = midnight.plus_seconds(3600 * h);
            const bool day = h >= 7 && h <= 18;
            generation.push_back(gen_at(ts, day ? dc_per_hour : 0.0, day ? ac_per_hour : 0.0));
            weather.push_back(wx_at(ts, day ? poa_daylight : 0.0, day ? poa_daylight : 0.0, label));
        }
    }
};

}  // namespace pvperf::test
