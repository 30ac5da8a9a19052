#include "pvperf/ingestion.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "csv.hpp"
#include "pvperf/error.hpp"
#include "pvperf/format.hpp"

namespace pvperf {
namespace {

constexpr const char* kModule = "ingestion";
constexpr std::int64_t kHour = 3600;

std::string join_header(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += fields[i];
    }
    return out;
}

double parse_number(const std::string& text, const char* column, std::size_t line) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw DataError(kModule, std::string("column ") + column + ": not a finite number: '" + text + "'",
                        line);
    return value;
}

Timestamp parse_time_field(const std::string& text, std::size_t line) {
    auto ts = parse_timestamp(text);
    if (!ts) throw DataError(kModule, "invalid ISO 8601 timestamp with offset: '" + text + "'", line);
    return *ts;
}

void check_range(double value, double lo, double hi, const char* column, std::size_t line) {
    if (value < lo || value > hi) {
        std::string msg = std::string("column ") + column + ": value " + format_canonical(value) +
                          " out of range [" + format_canonical(lo) + ", " + format_canonical(hi) + "]";
        throw DataError(kModule, msg, line);
    }
}

template <class Record, class RowParser>
ParsedSeries<Record> parse_series(std::istream& in, std::string_view header, const char* source,
                                  RowParser parse_row) {
    csv::Reader reader(in, kModule);
    csv::Row row;
    ParsedSeries<Record> out;
    if (!reader.next(row)) throw DataError(kModule, std::string(source) + " file is empty (no header)", 1);
    if (join_header(row.fields) != header)
        throw DataError(kModule, "expected header '" + std::string(header) + "'", row.line);
    const std::size_t columns = row.fields.size();

    while (reader.next(row)) {
        if (row.fields.size() != columns)
            throw DataError(kModule,
                            "expected " + std::to_string(columns) + " fields, found " +
                                std::to_string(row.fields.size()),
                            row.line);
        Record rec = parse_row(row);
        if (!out.records.empty()) {
            const Timestamp& prev = out.records.back().timestamp;
            const std::int64_t step = rec.timestamp.utc_seconds - prev.utc_seconds;
            if (step == 0)
                throw DataError(kModule, "duplicate timestamp " + format_timestamp(rec.timestamp), row.line);
            if (step < 0)
                throw DataError(kModule, "timestamps not increasing at " + format_timestamp(rec.timestamp),
                                row.line);
            if (step % kHour != 0)
                throw DataError(kModule, "interval is not a whole number of hours at " +
                                             format_timestamp(rec.timestamp),
                                row.line);
            if (step > kHour)
                out.gaps.push_back({source, prev, rec.timestamp, step / kHour - 1, row.line});
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

template <class Record>
std::vector<Record> sorted_copy(std::span<const Record> in) {
    std::vector<Record> out(in.begin(), in.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const Record& a, const Record& b) { return a.timestamp < b.timestamp; });
    return out;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
    const std::int64_t r = a % b;
    return r < 0 ? r + b : r;
}

using DateKey = int;  // days since epoch

DateKey key_of(LocalDate d) { return std::chrono::sys_days{d}.time_since_epoch().count(); }
LocalDate date_of(DateKey k) { return LocalDate{std::chrono::sys_days{std::chrono::days{k}}}; }

LocalDate mid_hour_date(const Timestamp& end, int offset_minutes) {
    return local_date(end.utc_seconds - kHour / 2, offset_minutes);
}

InsolationSource combine(bool any_measured, bool any_transposed) {
    if (any_measured && any_transposed) return InsolationSource::mixed;
    return any_transposed ? InsolationSource::transposed : InsolationSource::measured;
}

std::optional<WeatherLabel> majority(const std::array<int, 4>& counts) {
    int best = 0;
    std::optional<WeatherLabel> out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > best) {
            best = counts[i];
            out = kWeatherLabels[i];
        }
    }
    return out;
}

}  // namespace

const char* to_string(WeatherLabel label) noexcept {
    switch (label) {
        case WeatherLabel::clear: return "clear";
        case WeatherLabel::partly_cloudy: return "partly_cloudy";
        case WeatherLabel::overcast: return "overcast";
        case WeatherLabel::rain: return "rain";
    }
    return "";
}

std::optional<WeatherLabel> parse_weather_label(std::string_view text) noexcept {
    for (WeatherLabel l : kWeatherLabels)
        if (text == to_string(l)) return l;
    return std::nullopt;
}

const char* to_string(InsolationSource source) noexcept {
    switch (source) {
        case InsolationSource::measured: return "measured";
        case InsolationSource::transposed: return "transposed";
        case InsolationSource::mixed: return "mixed";
    }
    return "";
}

ParsedSeries<GenerationRecord> parse_generation_csv(std::istream& in) {
    return parse_series<GenerationRecord>(in, kGenerationHeader, "generation", [](const csv::Row& row) {
        GenerationRecord r;
        r.timestamp = parse_time_field(row.fields[0], row.line);
        r.e_dc_kwh = parse_number(row.fields[1], "e_dc_kwh", row.line);
        r.e_ac_kwh = parse_number(row.fields[2], "e_ac_kwh", row.line);
        if (r.e_dc_kwh < 0) throw DataError(kModule, "column e_dc_kwh: negative energy", row.line);
        if (r.e_ac_kwh < 0) throw DataError(kModule, "column e_ac_kwh: negative energy", row.line);
        return r;
    });
}

ParsedSeries<WeatherRecord> parse_weather_csv(std::istream& in) {
    return parse_series<WeatherRecord>(in, kWeatherHeader, "weather", [](const csv::Row& row) {
        const auto& f = row.fields;
        WeatherRecord r;
        r.timestamp = parse_time_field(f[0], row.line);
        r.ghi_w_m2 = parse_number(f[1], "ghi_w_m2", row.line);
        check_range(r.ghi_w_m2, 0.0, kMaxIrradiance, "ghi_w_m2", row.line);
        r.dni_w_m2 = parse_number(f[2], "dni_w_m2", row.line);
        if (r.dni_w_m2 < 0) throw DataError(kModule, "column dni_w_m2: negative irradiance", row.line);
        r.dhi_w_m2 = parse_number(f[3], "dhi_w_m2", row.line);
        if (r.dhi_w_m2 < 0) throw DataError(kModule, "column dhi_w_m2: negative irradiance", row.line);
        if (!f[4].empty()) {
            r.gpoa_w_m2 = parse_number(f[4], "gpoa_w_m2", row.line);
            check_range(*r.gpoa_w_m2, 0.0, kMaxIrradiance, "gpoa_w_m2", row.line);
        }
        r.temp_c = parse_number(f[5], "temp_c", row.line);
        r.wind_ms = parse_number(f[6], "wind_ms", row.line);
        if (r.wind_ms < 0) throw DataError(kModule, "column wind_ms: negative wind speed", row.line);
        if (!f[7].empty()) {
            r.weather_label = parse_weather_label(f[7]);
            if (!r.weather_label)
                throw DataError(kModule, "unknown weather_label '" + f[7] + "'", row.line);
        }
        return r;
    });
}

std::string serialize_generation_csv(std::span<const GenerationRecord> records) {
    std::string out(kGenerationHeader);
    out.push_back('\n');
    for (const auto& r : records) {
        out += format_timestamp(r.timestamp) + ',' + format_canonical(r.e_dc_kwh) + ',' +
               format_canonical(r.e_ac_kwh) + '\n';
    }
    return out;
}

std::string serialize_weather_csv(std::span<const WeatherRecord> records) {
    std::string out(kWeatherHeader);
    out.push_back('\n');
    for (const auto& r : records) {
        out += format_timestamp(r.timestamp) + ',' + format_canonical(r.ghi_w_m2) + ',' +
               format_canonical(r.dni_w_m2) + ',' + format_canonical(r.dhi_w_m2) + ',' +
               (r.gpoa_w_m2 ? format_canonical(*r.gpoa_w_m2) : std::string{}) + ',' +
               format_canonical(r.temp_c) + ',' + format_canonical(r.wind_ms) + ',' +
               (r.weather_label ? to_string(*r.weather_label) : "") + '\n';
    }
    return out;
}

const DayStatus* AlignedSeries::day(LocalDate date) const {
    auto it = std::lower_bound(days.begin(), days.end(), date,
                               [](const DayStatus& d, LocalDate v) { return d.date < v; });
    return it != days.end() && it->date == date ? &*it : nullptr;
}

AlignedSeries align(std::span<const GenerationRecord> gen_in, std::span<const WeatherRecord> wx_in,
                    const SystemConfig& cfg, const ValidityPolicy& policy) {
    const auto gen = sorted_copy(gen_in);
    const auto wx = sorted_copy(wx_in);

    AlignedSeries out;
    out.policy = policy;
    out.offset_minutes = cfg.utc_offset_minutes();

    std::size_t i = 0, j = 0;
    while (i < gen.size() || j < wx.size()) {
        if (j == wx.size() || (i < gen.size() && gen[i].timestamp < wx[j].timestamp)) {
            out.unmatched.push_back({gen[i++].timestamp, MissingHalf::weather});
        } else if (i == gen.size() || wx[j].timestamp < gen[i].timestamp) {
            out.unmatched.push_back({wx[j++].timestamp, MissingHalf::generation});
        } else {
            JoinedRecord rec;
            rec.generation = gen[i++];
            rec.weather = wx[j++];
            rec.sun = sun_position_mid_hour(cfg, rec.generation.timestamp);
            rec.date = mid_hour_date(rec.generation.timestamp, out.offset_minutes);
            if (rec.weather.gpoa_w_m2) {
                rec.poa_w_m2 = *rec.weather.gpoa_w_m2;
            } else {
                rec.poa_w_m2 = transpose_poa(rec.weather.ghi_w_m2, rec.weather.dni_w_m2,
                                             rec.weather.dhi_w_m2, rec.sun, cfg);
                rec.poa_transposed = true;
            }
            out.records.push_back(std::move(rec));
        }
    }
    if (out.records.empty()) throw DataError(kModule, "no overlap between generation and weather series");

    // Daylight is counted on the hour grid the records sit on.
    const std::int64_t phase = floor_mod(out.records.front().timestamp().utc_seconds, kHour);
    const Timestamp first = std::min(gen.empty() ? wx.front().timestamp : gen.front().timestamp,
                                     wx.empty() ? gen.front().timestamp : wx.front().timestamp);
    const Timestamp last = std::max(gen.empty() ? wx.back().timestamp : gen.back().timestamp,
                                    wx.empty() ? gen.back().timestamp : wx.back().timestamp);
    const DateKey first_day = key_of(mid_hour_date(first, out.offset_minutes));
    const DateKey last_day = key_of(mid_hour_date(last, out.offset_minutes));

    std::map<DateKey, std::pair<int, int>> joined;  // joined hours, joined daylight hours
    for (const auto& r : out.records) {
        auto& [all, lit] = joined[key_of(r.date)];
        ++all;
        if (r.daylight()) ++lit;
    }

    std::map<std::pair<int, unsigned>, MonthStatus> months;
    for (DateKey k = first_day; k <= last_day; ++k) {
        DayStatus d;
        d.date = date_of(k);
        // Hour ends whose mid-hour falls on this local date.
        const std::int64_t local_midnight_utc = std::int64_t{k} * 86400 - out.offset_minutes * 60;
        std::int64_t end = local_midnight_utc + kHour / 2;
        end += floor_mod(phase - end, kHour);
        for (; end - kHour / 2 < local_midnight_utc + 86400; end += kHour) {
            if (sun_position(cfg.latitude_deg, cfg.longitude_deg, end - kHour / 2).above_horizon())
                ++d.daylight_hours;
        }
        if (auto it = joined.find(k); it != joined.end()) {
            d.joined_hours = it->second.first;
            d.joined_daylight_hours = it->second.second;
        }
        d.valid = d.daylight_hours > 0 &&
                  d.joined_daylight_hours >= policy.min_daylight_coverage * d.daylight_hours - 1e-9;

        const int y = static_cast<int>(d.date.year());
        const unsigned m = static_cast<unsigned>(d.date.month());
        auto& ms = months[{y, m}];
        ms.year = y;
        ms.month = m;
        if (d.valid) ++ms.valid_days;
        out.days.push_back(d);
    }
    for (auto& [_, ms] : months) {
        ms.valid = ms.valid_days >= policy.min_valid_days;
        out.months.push_back(ms);
    }
    return out;
}

AlignedSeries align(const ParsedSeries<GenerationRecord>& generation, const ParsedSeries<WeatherRecord>& weather,
                    const SystemConfig& cfg, const ValidityPolicy& policy) {
    AlignedSeries out = align(std::span<const GenerationRecord>(generation.records),
                              std::span<const WeatherRecord>(weather.records), cfg, policy);
    out.gaps = generation.gaps;
    out.gaps.insert(out.gaps.end(), weather.gaps.begin(), weather.gaps.end());
    std::stable_sort(out.gaps.begin(), out.gaps.end(),
                     [](const Gap& a, const Gap& b) { return a.last_before < b.last_before; });
    return out;
}

std::vector<DailySummary> aggregate_daily(const AlignedSeries& series) {
    std::vector<DailySummary> out;
    out.reserve(series.days.size());
    auto rec = series.records.begin();
    for (const auto& status : series.days) {
        DailySummary d;
        d.date = status.date;
        d.valid = status.valid;
        std::array<int, 4> labels{};
        bool measured = false, transposed = false;
        for (; rec != series.records.end() && rec->date == status.date; ++rec) {
            d.e_dc_kwh += rec->generation.e_dc_kwh;
            d.e_ac_kwh += rec->generation.e_ac_kwh;
            d.h_poa_kwh_m2 += rec->poa_w_m2 / 1000.0;
            d.temp_c += rec->weather.temp_c;
            d.wind_ms += rec->weather.wind_ms;
            ++d.joined_hours;
            (rec->poa_transposed ? transposed : measured) = true;
            if (rec->daylight() && rec->weather.weather_label)
                ++labels[static_cast<std::size_t>(*rec->weather.weather_label)];
        }
        if (d.joined_hours > 0) {
            d.temp_c /= d.joined_hours;
            d.wind_ms /= d.joined_hours;
        }
        d.dominant_label = majority(labels);
        d.insolation_source = combine(measured, transposed);
        out.push_back(d);
    }
    return out;
}

std::vector<MonthlySummary> aggregate_monthly(std::span<const DailySummary> days, const ValidityPolicy& policy) {
    std::vector<MonthlySummary> out;
    std::array<int, 4> labels{};
    bool measured = false, transposed = false;
    auto flush = [&] {
        MonthlySummary& m = out.back();
        if (m.valid_days > 0) {
            m.e_dc_kwh = m.e_dc_kwh_sum / m.valid_days;
            m.e_ac_kwh = m.e_ac_kwh_sum / m.valid_days;
            m.h_poa_kwh_m2 = m.h_poa_kwh_m2_sum / m.valid_days;
            m.temp_c /= m.valid_days;
            m.wind_ms /= m.valid_days;
            m.cell_temp_c = m.temp_c;
        }
        m.valid = m.valid_days >= policy.min_valid_days;
        m.dominant_label = majority(labels);
        m.insolation_source = combine(measured, transposed);
    };
    for (const auto& d : days) {
        const int y = static_cast<int>(d.date.year());
        const unsigned mo = static_cast<unsigned>(d.date.month());
        if (out.empty() || out.back().year != y || out.back().month != mo) {
            if (!out.empty()) flush();
            out.push_back({});
            out.back().year = y;
            out.back().month = mo;
            labels = {};
            measured = transposed = false;
        }
        if (!d.valid) continue;
        MonthlySummary& m = out.back();
        ++m.valid_days;
        m.e_dc_kwh_sum += d.e_dc_kwh;
        m.e_ac_kwh_sum += d.e_ac_kwh;
        m.h_poa_kwh_m2_sum += d.h_poa_kwh_m2;
        m.temp_c += d.temp_c;
        m.wind_ms += d.wind_ms;
        if (d.dominant_label) ++labels[static_cast<std::size_t>(*d.dominant_label)];
        if (d.insolation_source != InsolationSource::transposed) measured = true;
        if (d.insolation_source != InsolationSource::measured) transposed = true;
    }
    if (!out.empty()) flush();
    return out;
}

std::vector<MonthlySummary> aggregate_monthly(const AlignedSeries& series) {
    const auto days = aggregate_daily(series);
    return aggregate_monthly(std::span<const DailySummary>(days), series.policy);
}

std::vector<WeatherRecord> fill_poa(std::span<const WeatherRecord> weather, const SystemConfig& cfg) {
    std::vector<WeatherRecord> out(weather.begin(), weather.end());
    for (auto& r : out) {
        if (r.gpoa_w_m2) continue;
        const SunPosition sun = sun_position_mid_hour(cfg, r.timestamp);
        r.gpoa_w_m2 = std::min(transpose_poa(r.ghi_w_m2, r.dni_w_m2, r.dhi_w_m2, sun, cfg), kMaxIrradiance);
    }
    return out;
}

}  // namespace pvperf
