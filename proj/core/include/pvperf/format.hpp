#pragma once

#include <string>

namespace pvperf {

/// Shortest decimal text that parses back to exactly `value`
/// ("0.41", "650", "31.2"). This is the canonical CSV number form.
std::string format_canonical(double value);

/// Fixed-point text with `decimals` places, rounded half-to-even on the
/// exact binary value.
std::string format_fixed(double value, int decimals);

/// `value` rounded as by format_fixed and parsed back.
double round_fixed(double value, int decimals);

/// Report precision: four decimal places.
inline constexpr int kReportDecimals = 4;

}  // namespace pvperf
