#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pvperf/solar_geometry.hpp"
#include "series_builder.hpp"

using namespace pvperf;
using namespace pvperf::test;

namespace {

SunPosition sun_at(double zenith, double azimuth) {
    SunPosition s;
    s.zenith_deg = zenith;
    s.azimuth_deg = azimuth;
    s.extraterrestrial_normal_w_m2 = kSolarConstant;
    return s;
}

// Mean solar noon; callers scan +-30 min around it for the true minimum.
std::int64_t solar_noon_utc(double lon, LocalDate date) {
    return make_timestamp(date, 12, 0, 0).utc_seconds - static_cast<std::int64_t>(lon * 240);
}

}  // namespace

TEST_SUITE("solar_geometry") {
    TEST_CASE("equator at the equinox, solar noon") {
        const auto noon = solar_noon_utc(0.0, ymd(2021, 3, 20));
        double best = 90;
        for (int m = -30; m <= 30; ++m) best = std::min(best, sun_position(0.0, 0.0, noon + 60 * m).zenith_deg);
        CHECK(best < 0.6);
    }

    TEST_CASE("site at the June solstice, solar noon") {
        const SystemConfig cfg;
        const auto noon = solar_noon_utc(cfg.longitude_deg, ymd(2021, 6, 21));
        double best = 90;
        for (int m = -30; m <= 30; ++m)
            best = std::min(best, sun_position(cfg.latitude_deg, cfg.longitude_deg, noon + 60 * m).zenith_deg);
        CHECK(std::abs(best - std::abs(15.48 - 23.45)) < 0.6);
    }

    TEST_CASE("site mid-April noon against the NOAA oracle") {
        const SystemConfig cfg;
        const auto ts = *parse_timestamp("2021-04-15T12:00:00+08:00");
        const SunPosition s = sun_position(cfg, ts);
        const NoaaSun ref = noaa_sun_position(cfg.latitude_deg, cfg.longitude_deg, ts.utc_seconds);
        CHECK(std::abs(s.zenith_deg - ref.zenith_deg) < 0.5);
        CHECK(std::abs(s.azimuth_deg - ref.azimuth_deg) < 0.5);
        CHECK(std::abs(s.declination_deg - ref.declination_deg) < 0.5);
    }

    TEST_CASE("100 random samples within half a degree of the NOAA oracle") {
        std::mt19937_64 rng(20240415);
        std::uniform_real_distribution<double> lat(-66.0, 66.0), lon(-180.0, 180.0);
        std::uniform_int_distribution<std::int64_t> when(946684800, 1924991999);  // 2000..2030
        int compared_azimuths = 0;
        for (int i = 0; i < 100; ++i) {
            const double la = lat(rng), lo = lon(rng);
            const std::int64_t t = when(rng);
            const SunPosition s = sun_position(la, lo, t);
            const NoaaSun ref = noaa_sun_position(la, lo, t);
            CHECK(std::abs(s.zenith_deg - ref.zenith_deg) < 0.5);
            CHECK(std::abs(s.declination_deg - ref.declination_deg) < 0.5);
            CHECK(angular_separation_deg(s.zenith_deg, s.azimuth_deg, ref.zenith_deg, ref.azimuth_deg) < 0.5);
            if (ref.zenith_deg > 5 && ref.zenith_deg < 175) {
                double d = std::abs(s.azimuth_deg - ref.azimuth_deg);
                d = std::min(d, 360 - d);
                CHECK(d < 0.5);
                ++compared_azimuths;
            }
            CHECK(s.zenith_deg >= 0);
            CHECK(s.zenith_deg <= 180);
            CHECK(s.azimuth_deg >= 0);
            CHECK(s.azimuth_deg < 360);
            CHECK(std::abs(s.declination_deg) <= 23.55);
        }
        CHECK(compared_azimuths > 90);
    }

    TEST_CASE("mid-hour position is half an hour before the stamp") {
        const SystemConfig cfg;
        const auto ts = *parse_timestamp("2021-04-15T10:00:00+08:00");
        const auto mid = sun_position_mid_hour(cfg, ts);
        const auto direct = sun_position(cfg.latitude_deg, cfg.longitude_deg, ts.utc_seconds - 1800);
        CHECK(mid.zenith_deg == direct.zenith_deg);
        CHECK(mid.azimuth_deg == direct.azimuth_deg);
    }

    TEST_CASE("angle of incidence") {
        const auto s = sun_at(37.0, 120.0);
        CHECK(angle_of_incidence(s, 0.0, 165.0) == doctest::Approx(37.0));
        CHECK(angle_of_incidence(sun_at(26.0, 165.0), 26.0, 165.0) == doctest::Approx(0.0).epsilon(1e-6));
        CHECK(angle_of_incidence(sun_at(30.0, 165.0), 26.0, 165.0) == doctest::Approx(4.0));
        CHECK(angle_of_incidence(sun_at(80.0, 345.0), 60.0, 165.0) > 90.0);
    }

    TEST_CASE("transposition reduces on a horizontal plane") {
        SystemConfig cfg;
        cfg.tilt_deg = 0.0;
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> z(0.0, 89.0), a(0.0, 359.0), g(0.0, 1000.0);
        for (int i = 0; i < 200; ++i) {
            const auto s = sun_at(z(rng), a(rng));
            const double ghi = g(rng), dni = g(rng), dhi = g(rng);
            const double expect = dni * std::cos(s.zenith_deg * (std::numbers::pi / 180.0)) + dhi;
            CHECK(transpose_poa(ghi, dni, dhi, s, cfg) == expect);
        }
    }

    TEST_CASE("transposition is homogeneous of degree one") {
        const SystemConfig cfg;
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> z(0.0, 89.0), a(0.0, 359.0), g(0.0, 1000.0), k(0.0, 4.0);
        const double powers[] = {0.5, 2.0, 4.0, 0.25};
        for (int i = 0; i < 200; ++i) {
            const auto s = sun_at(z(rng), a(rng));
            const double ghi = g(rng), dni = g(rng), dhi = g(rng);
            const double base = transpose_poa(ghi, dni, dhi, s, cfg);
            // Powers of two scale every term exactly.
            for (double p : powers) CHECK(transpose_poa(p * ghi, p * dni, p * dhi, s, cfg) == p * base);
            const double c = k(rng);
            CHECK(transpose_poa(c * ghi, c * dni, c * dhi, s, cfg) == doctest::Approx(c * base).epsilon(1e-13));
            CHECK(base >= dhi * (1 + std::cos(rad(cfg.tilt_deg))) / 2 - 1e-9);
        }
    }

    TEST_CASE("transposition worked example") {
        const SystemConfig cfg;
        // Place the sun so the angle of incidence is 20 degrees.
        const auto s = sun_at(20.0 + cfg.tilt_deg, cfg.surface_azimuth_deg);
        REQUIRE(angle_of_incidence(s, cfg.tilt_deg, cfg.surface_azimuth_deg) == doctest::Approx(20.0));
        const double beta = rad(26.0);
        const double expect =
            720 * std::cos(rad(20.0)) + 110 * (1 + std::cos(beta)) / 2 + 650 * 0.2 * (1 - std::cos(beta)) / 2;
        CHECK(transpose_poa(650, 720, 110, s, cfg) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(transpose_poa(650, 720, 110, s, cfg) == doctest::Approx(787.59).epsilon(0.5 / 787.59));
    }

    TEST_CASE("transposition edge cases") {
        const SystemConfig cfg;
        CHECK(transpose_poa(0, 0, 0, sun_at(30, 165), cfg) == 0.0);
        CHECK(transpose_poa(500, 700, 100, sun_at(95, 165), cfg) == 0.0);
        // Sun behind the plane: beam term suppressed, diffuse and ground remain.
        const auto behind = sun_at(85, 345);
        const double beta = rad(cfg.tilt_deg);
        CHECK(transpose_poa(50, 300, 40, behind, cfg) ==
              doctest::Approx(40 * (1 + std::cos(beta)) / 2 + 50 * 0.2 * (1 - std::cos(beta)) / 2));
    }

    TEST_CASE("clearness index") {
        auto s = sun_at(30.0, 180.0);
        s.extraterrestrial_normal_w_m2 = 1360.0;
        CHECK(*clearness_index(650, s) == doctest::Approx(650 / (1360 * std::cos(rad(30.0)))));
        CHECK(*clearness_index(650, s) == doctest::Approx(0.552).epsilon(0.001));
        CHECK(*clearness_index(1360 * std::cos(rad(30.0)), s) == doctest::Approx(1.0));
        CHECK(*clearness_index(0, s) == 0.0);
        CHECK(*clearness_index(1500, sun_at(85, 180)) == kMaxClearnessIndex);
        CHECK_FALSE(clearness_index(100, sun_at(90.0, 180)));
    }

    TEST_CASE("air mass and clear sky") {
        CHECK(*air_mass(sun_at(0, 0)) == doctest::Approx(1.0).epsilon(0.001));
        CHECK(*air_mass(sun_at(60, 0)) == doctest::Approx(2.0).epsilon(0.01));
        CHECK_FALSE(air_mass(sun_at(91, 0)));
        const auto hi = clear_sky(sun_at(10, 0), 10);
        const auto lo = clear_sky(sun_at(70, 0), 10);
        CHECK(hi.ghi_w_m2 > lo.ghi_w_m2);
        CHECK(hi.dhi_w_m2 == doctest::Approx(0.1 * hi.dni_w_m2));
        CHECK(clear_sky(sun_at(95, 0), 10).ghi_w_m2 == 0.0);
    }

    TEST_CASE("extraterrestrial normal irradiance follows the orbit") {
        const auto jan = sun_position(0, 0, make_timestamp(ymd(2021, 1, 3), 12, 0, 0).utc_seconds);
        const auto jul = sun_position(0, 0, make_timestamp(ymd(2021, 7, 4), 12, 0, 0).utc_seconds);
        CHECK(jan.extraterrestrial_normal_w_m2 > jul.extraterrestrial_normal_w_m2);
        CHECK(jan.extraterrestrial_normal_w_m2 == doctest::Approx(1367 * 1.034).epsilon(0.003));
    }
}
