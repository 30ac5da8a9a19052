#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pvperf/config.hpp"
#include "pvperf/ingestion.hpp"

namespace pvperf {

/// Rows and columns follow kWeatherLabels order: clear, partly_cloudy,
/// overcast, rain.
using TransitionMatrix = std::array<std::array<double, 4>, 4>;

inline constexpr TransitionMatrix kDefaultTransitions{{
    {0.60, 0.25, 0.10, 0.05},
    {0.30, 0.45, 0.15, 0.10},
    {0.15, 0.30, 0.40, 0.15},
    {0.10, 0.20, 0.25, 0.45},
}};

struct SynthConfig {
    std::uint64_t seed = 42;
    int n_days = 365;
    LocalDate start_date{std::chrono::year{2021}, std::chrono::January, std::chrono::day{1}};
    TransitionMatrix class_transition_matrix = kDefaultTransitions;
    std::array<double, 4> daily_e_ac_targets_kwh{14.8, 11.9, 9.2, 2.1};
    /// Attenuation of the clear-sky envelope per class. Used as-is when
    /// `calibrate` is off; otherwise replaced by the fitted values.
    std::array<double, 4> clearness_means{0.95, 0.75, 0.58, 0.13};
    /// Log-space standard deviation of the daily and hourly attenuation
    /// noise. Zero gives a fully deterministic series.
    double noise_sd = 0.10;
    bool calibrate = true;
    bool write_labels = true;
    bool write_poa = true;
    /// Soiling, mismatch and DC wiring losses ahead of the temperature derate.
    double dc_loss_fraction = 0.14;
};

inline constexpr double kTempCoefficientPerC = -0.004;
inline constexpr double kInverterPeakEfficiency = 0.96;
inline constexpr double kInverterKneeLoad = 0.10;

/// Flat at 96 % from 10 % load, falling linearly to 80 % of that at zero load.
double inverter_efficiency_curve(double load_fraction);

std::uint64_t splitmix64(std::uint64_t& state);

/// Seed of the independent stream used for day `day_index`.
std::uint64_t day_stream_seed(std::uint64_t seed, std::uint64_t day_index);

struct SynthDataset {
    std::vector<GenerationRecord> generation;
    std::vector<WeatherRecord> weather;
    std::vector<WeatherLabel> day_classes;
    std::array<double, 4> clearness_used{};
    std::array<double, 4> class_mean_e_ac_kwh{};  // over generated days, 0 for absent classes
    std::array<int, 4> class_days{};
};

/// Throws ConfigError on an invalid synth or system configuration.
SynthDataset generate_dataset(const SystemConfig& cfg, const SynthConfig& scfg);

struct SynthCsv {
    std::string generation_csv;
    std::string weather_csv;
};

SynthCsv generate(const SystemConfig& cfg, const SynthConfig& scfg);

ValidationReport validate_synth_config(const SynthConfig& scfg);

}  // namespace pvperf
