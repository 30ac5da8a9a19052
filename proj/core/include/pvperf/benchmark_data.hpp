#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "pvperf/metrics.hpp"

namespace pvperf {

enum class ModuleType { mono_si, poly_si, mixed };
const char* to_string(ModuleType t) noexcept;

/// A published figure: either a point (low == high) or a range.
struct ValueRange {
    double low = 0.0;
    double high = 0.0;

    constexpr bool is_point() const noexcept { return low == high; }
    constexpr double midpoint() const noexcept { return 0.5 * (low + high); }
};

struct BenchmarkEntry {
    std::string_view location;
    double capacity_kwp;
    ValueRange pr_pct;
    std::optional<ValueRange> cuf_pct;
    ModuleType module_type;
    std::optional<ValueRange> eta_sys_pct;
    std::optional<int> citation;  // reference number in the source survey
};

/// Small rooftop grid-tied systems surveyed across studies (15 rows, the
/// last one being the 2.72 kWp Tarlac City system itself).
std::span<const BenchmarkEntry> benchmark_entries();

/// Where a value sits among the entries that report the metric. Ranges
/// are represented by their midpoint; rank counts entries <= value.
struct MetricPlacement {
    double value = 0.0;
    int rank = 0;
    int entries = 0;
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
    std::optional<double> median_point_values;  // entries that report a single value
};

struct BenchmarkComparison {
    MetricPlacement pr_pct;
    std::optional<MetricPlacement> cuf_pct;
    std::optional<MetricPlacement> eta_sys_pct;
};

MetricPlacement place(double value, std::span<const BenchmarkEntry> entries,
                      std::optional<ValueRange> BenchmarkEntry::*metric);
MetricPlacement place_pr(double pr_pct, std::span<const BenchmarkEntry> entries);

BenchmarkComparison benchmark_compare(double pr_pct, std::optional<double> cuf_pct,
                                      std::optional<double> eta_sys_pct);
/// Empty when the annual block has no PR.
std::optional<BenchmarkComparison> benchmark_compare(const AnnualMetrics& annual);

}  // namespace pvperf
