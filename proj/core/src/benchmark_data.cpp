#include "pvperf/benchmark_data.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace pvperf {
namespace {

constexpr ValueRange pt(double v) { return {v, v}; }
constexpr ValueRange rg(double lo, double hi) { return {lo, hi}; }

using M = ModuleType;
constexpr std::array<BenchmarkEntry, 15> kEntries{{
    {"Kuala Terengganu, Malaysia", 7.8, pt(75.72), rg(13, 16), M::mono_si, rg(10, 12), 38},
    {"Jakarta, Indonesia", 5.0, pt(76.07), pt(11.13), M::poly_si, std::nullopt, 39},
    {"Hue, Vietnam", 1.32, pt(78.11), pt(15.07), M::poly_si, pt(12.89), 40},
    {"Cebu, Philippines", 8.36, rg(40.1, 77.8), pt(18.96), M::poly_si, std::nullopt, 41},
    {"Tak province, Thailand", 3.5, rg(59, 76.4), std::nullopt, M::poly_si, std::nullopt, 42},
    {"Northern India", 5.0, pt(76.97), pt(16.39), M::poly_si, pt(10.02), 43},
    {"Male, Maldives", 6.6, pt(81.56), pt(18.89), M::poly_si, pt(13.87), 44},
    {"Central Java, Indonesia", 30.0, pt(79.40), std::nullopt, M::poly_si, std::nullopt, 45},
    {"Mae Hong Son, Thailand", 11.0, pt(73.45), pt(14), M::mixed, pt(10.41), 46},
    {"Singapore", 142.5, pt(81.00), pt(15.70), M::poly_si, pt(11.20), 47},
    {"Norway", 2.07, pt(83.03), pt(10.58), M::mixed, pt(11.60), 48},
    {"Port Elizabeth, South Africa", 3.2, pt(64.30), pt(20.41), M::poly_si, std::nullopt, 49},
    {"Turkey", 2.73, pt(72), pt(15.69), M::poly_si, std::nullopt, 50},
    {"Ireland", 1.72, pt(81.50), pt(10.10), M::mono_si, pt(13.30), 51},
    {"Present Study (Tarlac City, Philippines)", 2.72, pt(77.10), pt(15.52), M::poly_si, pt(13.00),
     std::nullopt},
}};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

MetricPlacement place_ranges(double value, const std::vector<ValueRange>& ranges) {
    MetricPlacement p;
    p.value = value;
    p.entries = static_cast<int>(ranges.size());
    if (ranges.empty()) return p;
    std::vector<double> mids, points;
    for (const auto& r : ranges) {
        mids.push_back(r.midpoint());
        if (r.is_point()) points.push_back(r.low);
        if (r.midpoint() <= value) ++p.rank;
    }
    p.min = *std::min_element(mids.begin(), mids.end());
    p.max = *std::max_element(mids.begin(), mids.end());
    p.median = median(mids);
    if (!points.empty()) p.median_point_values = median(points);
    return p;
}

}  // namespace

const char* to_string(ModuleType t) noexcept {
    switch (t) {
        case ModuleType::mono_si: return "mono-Si";
        case ModuleType::poly_si: return "poly-Si";
        case ModuleType::mixed: return "mixed";
    }
    return "";
}

std::span<const BenchmarkEntry> benchmark_entries() { return kEntries; }

MetricPlacement place(double value, std::span<const BenchmarkEntry> entries,
                      std::optional<ValueRange> BenchmarkEntry::*metric) {
    std::vector<ValueRange> ranges;
    for (const auto& e : entries)
        if (const auto& r = e.*metric) ranges.push_back(*r);
    return place_ranges(value, ranges);
}

MetricPlacement place_pr(double pr_pct, std::span<const BenchmarkEntry> entries) {
    std::vector<ValueRange> ranges;
    for (const auto& e : entries) ranges.push_back(e.pr_pct);
    return place_ranges(pr_pct, ranges);
}

BenchmarkComparison benchmark_compare(double pr_pct, std::optional<double> cuf_pct,
                                      std::optional<double> eta_sys_pct) {
    BenchmarkComparison c;
    c.pr_pct = place_pr(pr_pct, kEntries);
    if (cuf_pct) c.cuf_pct = place(*cuf_pct, kEntries, &BenchmarkEntry::cuf_pct);
    if (eta_sys_pct) c.eta_sys_pct = place(*eta_sys_pct, kEntries, &BenchmarkEntry::eta_sys_pct);
    return c;
}

std::optional<BenchmarkComparison> benchmark_compare(const AnnualMetrics& annual) {
    if (!annual.pr_pct) return std::nullopt;
    return benchmark_compare(*annual.pr_pct, annual.cuf_pct, annual.eta_sys_pct);
}

}  // namespace pvperf
