#include "pvperf/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "pvperf/error.hpp"
#include "pvperf/format.hpp"
#include "pvperf/metrics.hpp"
#include "pvperf/solar_geometry.hpp"

namespace pvperf {
namespace {

constexpr const char* kModule = "synth";
constexpr int kHours = 24;

// Documented stream layout so another implementation can reproduce a run:
// engine = std::mt19937_64; class chain seeded with splitmix64(seed);
// day d seeded with day_stream_seed(seed, d); uniforms take the top 53
// bits; normals come from Box-Muller, cosine branch only.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::array<double, 4> stationary(const TransitionMatrix& m) {
    std::array<double, 4> p{0.25, 0.25, 0.25, 0.25};
    for (int it = 0; it < 500; ++it) {
        std::array<double, 4> next{};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) next[j] += p[i] * m[i][j];
        p = next;
    }
    return p;
}

std::size_t sample(const std::array<double, 4>& probs, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    return 3;
}

struct HourDraw {
    Timestamp end;
    SunPosition sun;
    ClearSkyIrradiance envelope;
    double hour_noise = 1.0;  // mean-one lognormal multiplier
    double temp_c = 0.0;
    double wind_ms = 0.0;
};

struct DayDraw {
    std::size_t cls = 0;
    double day_noise = 1.0;
    std::array<HourDraw, kHours> hours;
};

struct HourOutput {
    double ghi = 0.0, dni = 0.0, dhi = 0.0, poa = 0.0;
    double e_dc = 0.0, e_ac = 0.0;
};

constexpr std::array<double, 4> kTempAmplitude{5.0, 4.0, 2.5, 1.5};
constexpr std::array<double, 4> kTempOffset{0.0, -0.5, -1.5, -3.0};
constexpr double kBaseTempC = 27.0;

HourOutput evaluate(const SystemConfig& cfg, const SynthConfig& scfg, const DayDraw& day, const HourDraw& h,
                    double clearness) {
    HourOutput o;
    if (!h.sun.above_horizon()) return o;
    const double k = std::clamp(clearness * day.day_noise * h.hour_noise, 0.0, 1.0);
    const double cos_z = std::cos(h.sun.zenith_deg * std::numbers::pi / 180.0);
    o.ghi = std::min(k * h.envelope.ghi_w_m2, kMaxIrradiance);
    o.dni = k * k * h.envelope.dni_w_m2;
    o.dhi = std::max(o.ghi - o.dni * cos_z, 0.0);
    o.poa = std::min(transpose_poa(o.ghi, o.dni, o.dhi, h.sun, cfg), kMaxIrradiance);

    const double t_cell = estimate_cell_temperature(h.temp_c, o.poa, cfg.noct_c);
    const double derate = 1.0 + kTempCoefficientPerC * std::max(t_cell - 25.0, 0.0);
    o.e_dc = o.poa / 1000.0 * cfg.array_area_m2 * cfg.module_eff * (1.0 - scfg.dc_loss_fraction) *
             std::max(derate, 0.0);
    const double load = o.e_dc / cfg.inverter_rating_kw;
    o.e_ac = std::min(o.e_dc * inverter_efficiency_curve(load), cfg.inverter_rating_kw);
    return o;
}

double day_e_ac(const SystemConfig& cfg, const SynthConfig& scfg, const DayDraw& day, double clearness) {
    double sum = 0.0;
    for (const auto& h : day.hours) sum += evaluate(cfg, scfg, day, h, clearness).e_ac;
    return sum;
}

double calibrate_class(const SystemConfig& cfg, const SynthConfig& scfg, const std::vector<DayDraw>& days,
                       std::size_t cls, double target) {
    auto mean_at = [&](double k) {
        double sum = 0.0;
        int n = 0;
        for (const auto& d : days) {
            if (d.cls != cls) continue;
            sum += day_e_ac(cfg, scfg, d, k);
            ++n;
        }
        return sum / n;
    };
    double lo = 0.0, hi = 3.0;
    if (mean_at(hi) <= target) return hi;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mean_at(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double inverter_efficiency_curve(double load) {
    if (load >= kInverterKneeLoad) return kInverterPeakEfficiency;
    const double x = std::max(load, 0.0) / kInverterKneeLoad;
    return kInverterPeakEfficiency * (0.8 + 0.2 * x);
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t day_stream_seed(std::uint64_t seed, std::uint64_t day_index) {
    std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (day_index + 1));
    return splitmix64(state);
}

ValidationReport validate_synth_config(const SynthConfig& s) {
    ValidationReport r;
    if (s.n_days < 1) r.violations.push_back({"n_days", "must be >= 1"});
    if (!s.start_date.ok()) r.violations.push_back({"start_date", "not a valid date"});
    for (std::size_t i = 0; i < 4; ++i) {
        double sum = 0.0;
        bool nonneg = true;
        for (double p : s.class_transition_matrix[i]) {
            sum += p;
            nonneg = nonneg && p >= 0.0 && std::isfinite(p);
        }
        if (!nonneg || std::abs(sum - 1.0) > 1e-9)
            r.violations.push_back({"class_transition_matrix[" + std::to_string(i) + "]",
                                    "row must be non-negative and sum to 1"});
        if (!(s.daily_e_ac_targets_kwh[i] > 0.0))
            r.violations.push_back({"daily_e_ac_targets_kwh[" + std::to_string(i) + "]", "must be positive"});
        if (!(s.clearness_means[i] >= 0.0))
            r.violations.push_back({"clearness_means[" + std::to_string(i) + "]", "must be >= 0"});
    }
    if (!(s.noise_sd >= 0.0) || !std::isfinite(s.noise_sd))
        r.violations.push_back({"noise_sd", "must be finite and >= 0"});
    if (!(s.dc_loss_fraction >= 0.0 && s.dc_loss_fraction < 1.0))
        r.violations.push_back({"dc_loss_fraction", "must lie in [0, 1)"});
    return r;
}

SynthDataset generate_dataset(const SystemConfig& cfg, const SynthConfig& scfg) {
    if (auto report = validate_synth_config(scfg); !report.ok())
        throw ConfigError(kModule, report.violations.front().field + " " + report.violations.front().message);
    if (auto report = validate_config(cfg); !report.ok())
        throw ConfigError(kModule, "system." + report.violations.front().field + " " +
                                       report.violations.front().message);

    const int offset = cfg.utc_offset_minutes();
    const double sd = scfg.noise_sd;
    const double bias = sd * sd / 2.0;

    std::vector<DayDraw> days(static_cast<std::size_t>(scfg.n_days));
    {
        std::uint64_t state = scfg.seed;
        std::mt19937_64 chain(splitmix64(state));
        std::size_t cls = sample(stationary(scfg.class_transition_matrix), uniform01(chain));
        for (auto& d : days) {
            d.cls = cls;
            cls = sample(scfg.class_transition_matrix[cls], uniform01(chain));
        }
    }
    const std::chrono::sys_days start{scfg.start_date};
    for (std::size_t di = 0; di < days.size(); ++di) {
        DayDraw& d = days[di];
        std::mt19937_64 rng(day_stream_seed(scfg.seed, di));
        d.day_noise = std::exp(sd * standard_normal(rng) - bias);
        const LocalDate date{start + std::chrono::days{static_cast<int>(di)}};
        for (int h = 0; h < kHours; ++h) {
            HourDraw& hd = d.hours[static_cast<std::size_t>(h)];
            hd.end = make_timestamp(date, 0, 0, offset).plus_seconds((h + 1) * 3600);
            hd.sun = sun_position_mid_hour(cfg, hd.end);
            hd.envelope = clear_sky(hd.sun, cfg.elevation_m);
            hd.hour_noise = std::exp(sd * standard_normal(rng) - bias);
            const double phase = 2.0 * std::numbers::pi * (h + 0.5 - 9.0) / 24.0;
            hd.temp_c = kBaseTempC + kTempOffset[d.cls] + kTempAmplitude[d.cls] * std::sin(phase) +
                        10.0 * sd * standard_normal(rng);
            hd.wind_ms = 1.5 + 0.5 * static_cast<double>(d.cls) + 10.0 * sd * std::abs(standard_normal(rng));
        }
    }

    SynthDataset out;
    for (const auto& d : days) ++out.class_days[d.cls];
    for (std::size_t c = 0; c < 4; ++c) {
        out.clearness_used[c] = scfg.clearness_means[c];
        if (scfg.calibrate && out.class_days[c] > 0)
            out.clearness_used[c] = calibrate_class(cfg, scfg, days, c, scfg.daily_e_ac_targets_kwh[c]);
    }

    out.generation.reserve(days.size() * kHours);
    out.weather.reserve(days.size() * kHours);
    std::array<double, 4> e_sum{};
    for (const auto& d : days) {
        out.day_classes.push_back(kWeatherLabels[d.cls]);
        for (const auto& h : d.hours) {
            const HourOutput o = evaluate(cfg, scfg, d, h, out.clearness_used[d.cls]);
            GenerationRecord g;
            g.timestamp = h.end;
            g.e_dc_kwh = round_fixed(o.e_dc, 4);
            g.e_ac_kwh = round_fixed(o.e_ac, 4);
            e_sum[d.cls] += g.e_ac_kwh;
            out.generation.push_back(g);

            WeatherRecord w;
            w.timestamp = h.end;
            w.ghi_w_m2 = round_fixed(o.ghi, 2);
            w.dni_w_m2 = round_fixed(o.dni, 2);
            w.dhi_w_m2 = round_fixed(o.dhi, 2);
            if (scfg.write_poa) w.gpoa_w_m2 = round_fixed(o.poa, 2);
            w.temp_c = round_fixed(h.temp_c, 2);
            w.wind_ms = round_fixed(h.wind_ms, 2);
            if (scfg.write_labels) w.weather_label = kWeatherLabels[d.cls];
            out.weather.push_back(w);
        }
    }
    for (std::size_t c = 0; c < 4; ++c)
        out.class_mean_e_ac_kwh[c] = out.class_days[c] ? e_sum[c] / out.class_days[c] : 0.0;
    return out;
}

SynthCsv generate(const SystemConfig& cfg, const SynthConfig& scfg) {
    const SynthDataset ds = generate_dataset(cfg, scfg);
    return {serialize_generation_csv(ds.generation), serialize_weather_csv(ds.weather)};
}

}  // namespace pvperf
