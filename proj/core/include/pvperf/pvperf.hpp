#pragma once

#include "pvperf/benchmark_data.hpp"
#include "pvperf/config.hpp"
#include "pvperf/error.hpp"
#include "pvperf/format.hpp"
#include "pvperf/impact.hpp"
#include "pvperf/ingestion.hpp"
#include "pvperf/metrics.hpp"
#include "pvperf/report.hpp"
#include "pvperf/solar_geometry.hpp"
#include "pvperf/synth.hpp"
#include "pvperf/time.hpp"
#include "pvperf/weather_stats.hpp"
