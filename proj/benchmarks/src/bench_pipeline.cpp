// Microbenchmarks for the hot paths of the analysis pipeline.

#include <benchmark/benchmark.h>

#include <map>
#include <sstream>

#include "pvperf/pvperf.hpp"

namespace {

using namespace pvperf;

const SynthCsv& dataset(int days) {
    static std::map<int, SynthCsv> cache;
    auto it = cache.find(days);
    if (it == cache.end()) {
        SynthConfig s;
        s.n_days = days;
        it = cache.emplace(days, generate(SystemConfig{}, s)).first;
    }
    return it->second;
}

void BM_ParseWeather(benchmark::State& state) {
    const auto& csv = dataset(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        std::istringstream in(csv.weather_csv);
        benchmark::DoNotOptimize(parse_weather_csv(in));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * csv.weather_csv.size()));
}
BENCHMARK(BM_ParseWeather)->Arg(30)->Arg(365);

void BM_AlignAggregate(benchmark::State& state) {
    const auto& csv = dataset(static_cast<int>(state.range(0)));
    std::istringstream g(csv.generation_csv), w(csv.weather_csv);
    const auto gen = parse_generation_csv(g);
    const auto wx = parse_weather_csv(w);
    const SystemConfig cfg;
    for (auto _ : state) {
        const auto series = align(gen, wx, cfg);
        benchmark::DoNotOptimize(aggregate_monthly(series));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * gen.records.size()));
}
BENCHMARK(BM_AlignAggregate)->Arg(30)->Arg(365);

void BM_SunPosition(benchmark::State& state) {
    const SystemConfig cfg;
    std::int64_t t = 1609459200;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sun_position(cfg.latitude_deg, cfg.longitude_deg, t));
        t += 3600;
    }
}
BENCHMARK(BM_SunPosition);

void BM_Synth(benchmark::State& state) {
    SynthConfig s;
    s.n_days = static_cast<int>(state.range(0));
    const SystemConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(generate_dataset(cfg, s));
}
BENCHMARK(BM_Synth)->Arg(365)->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& state) {
    const auto& csv = dataset(static_cast<int>(state.range(0)));
    const Config cfg;
    for (auto _ : state) {
        std::istringstream g(csv.generation_csv), w(csv.weather_csv);
        benchmark::DoNotOptimize(analyze(cfg, g, w));
    }
}
BENCHMARK(BM_Analyze)->Arg(365)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
