#include "pvperf/solar_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pvperf {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kTropicalYearDays = 365.2422;
constexpr std::int64_t kSeriesEpochUtc = -631152000;  // 1950-01-01T00:00:00Z

double wrap360(double deg) {
    double out = std::fmod(deg, 360.0);
    if (out < 0) out += 360.0;
    if (out >= 360.0) out -= 360.0;
    return out;
}

}  // namespace

SunPosition sun_position(double latitude_deg, double longitude_deg, std::int64_t utc_seconds) {
    const double utc_hour = utc_hour_of_day(utc_seconds);
    // Day angle on a continuous tropical-year clock anchored at the series epoch.
    const double years = static_cast<double>(utc_seconds - kSeriesEpochUtc) / 86400.0 / kTropicalYearDays;
    const double g = 2.0 * std::numbers::pi * (years - std::floor(years));

    const double decl = 0.006918 - 0.399912 * std::cos(g) + 0.070257 * std::sin(g) -
                        0.006758 * std::cos(2 * g) + 0.000907 * std::sin(2 * g) -
                        0.002697 * std::cos(3 * g) + 0.00148 * std::sin(3 * g);
    const double eot_min = 229.18 * (0.000075 + 0.001868 * std::cos(g) - 0.032077 * std::sin(g) -
                                     0.014615 * std::cos(2 * g) - 0.040849 * std::sin(2 * g));
    const double e0 = 1.000110 + 0.034221 * std::cos(g) + 0.001280 * std::sin(g) +
                      0.000719 * std::cos(2 * g) + 0.000077 * std::sin(2 * g);

    const double solar_time_min = utc_hour * 60.0 + eot_min + 4.0 * longitude_deg;
    double hour_angle = solar_time_min / 4.0 - 180.0;
    hour_angle = wrap360(hour_angle + 180.0) - 180.0;

    const double lat = latitude_deg * kDeg;
    const double ha = hour_angle * kDeg;
    const double cos_z = std::clamp(
        std::sin(lat) * std::sin(decl) + std::cos(lat) * std::cos(decl) * std::cos(ha), -1.0, 1.0);
    const double zenith = std::acos(cos_z);

    // atan2 form avoids the quadrant bookkeeping of the arccos form
    const double az = std::atan2(std::sin(ha), std::cos(ha) * std::sin(lat) - std::tan(decl) * std::cos(lat));

    SunPosition sun;
    sun.zenith_deg = zenith / kDeg;
    sun.azimuth_deg = wrap360(az / kDeg + 180.0);
    sun.declination_deg = decl / kDeg;
    sun.hour_angle_deg = hour_angle;
    sun.extraterrestrial_normal_w_m2 = kSolarConstant * e0;
    return sun;
}

SunPosition sun_position(const SystemConfig& cfg, const Timestamp& ts) {
    return sun_position(cfg.latitude_deg, cfg.longitude_deg, ts.utc_seconds);
}

SunPosition sun_position_mid_hour(const SystemConfig& cfg, const Timestamp& interval_end) {
    return sun_position(cfg.latitude_deg, cfg.longitude_deg, interval_end.utc_seconds - 1800);
}

namespace {

double cos_incidence(const SunPosition& sun, double tilt_deg, double surface_azimuth_deg) {
    const double z = sun.zenith_deg * kDeg;
    const double b = tilt_deg * kDeg;
    const double c = std::cos(z) * std::cos(b) +
                     std::sin(z) * std::sin(b) * std::cos((sun.azimuth_deg - surface_azimuth_deg) * kDeg);
    return std::clamp(c, -1.0, 1.0);
}

}  // namespace

double angle_of_incidence(const SunPosition& sun, double tilt_deg, double surface_azimuth_deg) {
    return std::acos(cos_incidence(sun, tilt_deg, surface_azimuth_deg)) / kDeg;
}

double transpose_poa(double ghi, double dni, double dhi, const SunPosition& sun, const SystemConfig& cfg,
                     SkyModel model) {
    if (!sun.above_horizon()) return 0.0;
    switch (model) {
        case SkyModel::isotropic: break;
    }
    const double beta = cfg.tilt_deg * kDeg;
    const double cos_aoi = cos_incidence(sun, cfg.tilt_deg, cfg.surface_azimuth_deg);
    const double beam = dni * std::max(cos_aoi, 0.0);
    const double sky = dhi * (1.0 + std::cos(beta)) / 2.0;
    const double ground = ghi * cfg.albedo * (1.0 - std::cos(beta)) / 2.0;
    return beam + sky + ground;
}

std::optional<double> clearness_index(double ghi, const SunPosition& sun) {
    if (!sun.above_horizon()) return std::nullopt;
    const double horizontal = sun.extraterrestrial_normal_w_m2 * std::cos(sun.zenith_deg * kDeg);
    if (horizontal <= 0.0) return std::nullopt;
    return std::clamp(ghi / horizontal, 0.0, kMaxClearnessIndex);
}

std::optional<double> air_mass(const SunPosition& sun) {
    if (!sun.above_horizon()) return std::nullopt;
    const double z = sun.zenith_deg;
    return 1.0 / (std::cos(z * kDeg) + 0.50572 * std::pow(96.07995 - z, -1.6364));
}

ClearSkyIrradiance clear_sky(const SunPosition& sun, double elevation_m) {
    const auto am = air_mass(sun);
    if (!am) return {};
    const double h_km = std::max(elevation_m, 0.0) / 1000.0;
    const double dni = sun.extraterrestrial_normal_w_m2 *
                       ((1.0 - 0.14 * h_km) * std::pow(0.7, std::pow(*am, 0.678)) + 0.14 * h_km);
    const double dhi = 0.1 * dni;
    const double ghi = dni * std::cos(sun.zenith_deg * kDeg) + dhi;
    return {ghi, dni, dhi};
}

}  // namespace pvperf
