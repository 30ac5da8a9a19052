#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace pvperf::test {

inline constexpr double kPi = 3.14159265358979323846;
inline double rad(double d) { return d * kPi / 180.0; }
inline double deg(double r) { return r * 180.0 / kPi; }

struct NoaaSun {
    double zenith_deg;
    double azimuth_deg;
    double declination_deg;
};

// NOAA solar calculator equations (Meeus low-precision series), driven by
// the Julian century of the instant. Geometric zenith, no refraction.
inline NoaaSun noaa_sun_position(double lat_deg, double lon_deg, std::int64_t utc_seconds) {
    const double jd = 2440587.5 + static_cast<double>(utc_seconds) / 86400.0;
    const double jc = (jd - 2451545.0) / 36525.0;
    const double l0 = std::fmod(280.46646 + jc * (36000.76983 + jc * 0.0003032), 360.0);
    const double m = 357.52911 + jc * (35999.05029 - 0.0001537 * jc);
    const double e = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc);
    const double c = std::sin(rad(m)) * (1.914602 - jc * (0.004817 + 0.000014 * jc)) +
                     std::sin(rad(2 * m)) * (0.019993 - 0.000101 * jc) + std::sin(rad(3 * m)) * 0.000289;
    const double true_long = l0 + c;
    const double omega = 125.04 - 1934.136 * jc;
    const double app_long = true_long - 0.00569 - 0.00478 * std::sin(rad(omega));
    const double mean_obliq =
        23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0;
    const double obliq = mean_obliq + 0.00256 * std::cos(rad(omega));
    const double decl = deg(std::asin(std::sin(rad(obliq)) * std::sin(rad(app_long))));
    const double y = std::pow(std::tan(rad(obliq / 2.0)), 2);
    const double eot_min =
        4.0 * deg(y * std::sin(2 * rad(l0)) - 2 * e * std::sin(rad(m)) +
                  4 * e * y * std::sin(rad(m)) * std::cos(2 * rad(l0)) - 0.5 * y * y * std::sin(4 * rad(l0)) -
                  1.25 * e * e * std::sin(2 * rad(m)));
    const double minutes = std::fmod(static_cast<double>(utc_seconds), 86400.0) / 60.0;
    const double tst = std::fmod(minutes + eot_min + 4.0 * lon_deg + 1440.0 * 4, 1440.0);
    const double ha = tst / 4.0 < 0 ? tst / 4.0 + 180.0 : tst / 4.0 - 180.0;
    double cosz = std::sin(rad(lat_deg)) * std::sin(rad(decl)) +
                  std::cos(rad(lat_deg)) * std::cos(rad(decl)) * std::cos(rad(ha));
    cosz = std::fmax(-1.0, std::fmin(1.0, cosz));
    const double zen = deg(std::acos(cosz));
    double cosaz = (std::sin(rad(lat_deg)) * std::cos(rad(zen)) - std::sin(rad(decl))) /
                   (std::cos(rad(lat_deg)) * std::sin(rad(zen)));
    cosaz = std::fmax(-1.0, std::fmin(1.0, cosaz));
    const double a = deg(std::acos(cosaz));
    const double az = ha > 0 ? std::fmod(a + 180.0, 360.0) : std::fmod(540.0 - a, 360.0);
    return {zen, az, decl};
}

// Angle between two sun directions given as (zenith, azimuth) pairs.
inline double angular_separation_deg(double z1, double a1, double z2, double a2) {
    const double c = std::cos(rad(z1)) * std::cos(rad(z2)) +
                     std::sin(rad(z1)) * std::sin(rad(z2)) * std::cos(rad(a1 - a2));
    return deg(std::acos(std::fmax(-1.0, std::fmin(1.0, c))));
}

// Pearson r straight from the covariance / standard deviation definition,
// accumulated in long double.
inline double pearson_oracle(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    long double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const long double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    const long double cov = sxy / (n - 1);
    const long double sx = std::sqrt(sxx / (n - 1)), sy = std::sqrt(syy / (n - 1));
    return static_cast<double>(cov / (sx * sy));
}

// Year-by-year worksheet: one row per year with a discount factor column,
// discounted cost and discounted energy columns, and totals at the bottom.
struct Worksheet {
    double npv = 0;
    double lcoe = 0;
    double discounted_cost = 0;
    double discounted_energy = 0;
};

inline Worksheet spreadsheet(double capital, double om, double energy, double exported, double tariff,
                             double rate, int years) {
    std::vector<double> factor(years + 1), cost(years + 1), energy_col(years + 1), net(years + 1);
    for (int t = 0; t <= years; ++t) {
        factor[t] = 1.0;
        for (int k = 0; k < t; ++k) factor[t] /= (1.0 + rate);
        cost[t] = t == 0 ? capital : om;
        energy_col[t] = t == 0 ? 0.0 : energy;
        net[t] = t == 0 ? -capital : exported * tariff - om;
    }
    Worksheet w;
    for (int t = 0; t <= years; ++t) {
        w.discounted_cost += cost[t] * factor[t];
        w.discounted_energy += energy_col[t] * factor[t];
        w.npv += net[t] * factor[t];
    }
    w.lcoe = w.discounted_cost / w.discounted_energy;
    return w;
}

}  // namespace pvperf::test
