#pragma once

#include <optional>

#include "pvperf/config.hpp"
#include "pvperf/time.hpp"

namespace pvperf {

/// Solar position for one instant. Angles in degrees; azimuth clockwise
/// from true north. Zenith is geometric (no refraction).
struct SunPosition {
    double zenith_deg = 0.0;
    double azimuth_deg = 0.0;
    double declination_deg = 0.0;
    double hour_angle_deg = 0.0;
    double extraterrestrial_normal_w_m2 = 0.0;

    bool above_horizon() const noexcept { return zenith_deg < 90.0; }
};

enum class SkyModel { isotropic };

struct ClearSkyIrradiance {
    double ghi_w_m2 = 0.0;
    double dni_w_m2 = 0.0;
    double dhi_w_m2 = 0.0;
};

inline constexpr double kSolarConstant = 1367.0;  // W/m2

/// Spencer (1971) Fourier series for declination, equation of time and
/// the orbital eccentricity factor. The day angle advances one turn per
/// tropical year from 1950-01-01T00:00Z.
SunPosition sun_position(double latitude_deg, double longitude_deg, std::int64_t utc_seconds);
SunPosition sun_position(const SystemConfig& cfg, const Timestamp& ts);

/// Sun position at the middle of the hour that ends at `interval_end`.
SunPosition sun_position_mid_hour(const SystemConfig& cfg, const Timestamp& interval_end);

/// Angle between the sun vector and the plane normal. May exceed 90.
double angle_of_incidence(const SunPosition& sun, double tilt_deg, double surface_azimuth_deg);

/// Plane-of-array irradiance:
///   POA = DNI*max(cos AOI, 0) + DHI*(1 + cos tilt)/2 + GHI*albedo*(1 - cos tilt)/2
/// Zero when the sun is at or below the horizon.
double transpose_poa(double ghi_w_m2, double dni_w_m2, double dhi_w_m2, const SunPosition& sun,
                     const SystemConfig& cfg, SkyModel model = SkyModel::isotropic);

/// GHI over extraterrestrial horizontal irradiance, clamped to [0, 1.2].
/// Empty when the sun is at or below the horizon.
std::optional<double> clearness_index(double ghi_w_m2, const SunPosition& sun);

inline constexpr double kMaxClearnessIndex = 1.2;

/// Kasten-Young relative air mass; empty below the horizon.
std::optional<double> air_mass(const SunPosition& sun);

/// Meinel beam attenuation with the Laue altitude term; diffuse taken as
/// 10 % of beam normal. Used for synthetic envelopes only.
ClearSkyIrradiance clear_sky(const SunPosition& sun, double elevation_m);

}  // namespace pvperf
