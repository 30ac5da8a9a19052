#include "pvperf/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace pvperf {

std::string format_canonical(double value) {
    if (value == 0.0) return "0";  // folds -0
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw std::runtime_error("format_canonical: to_chars failed");
    return std::string(buf.data(), ptr);
}

std::string format_fixed(double value, int decimals) {
    std::array<char, 400> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::fixed, decimals);
    if (ec != std::errc{}) throw std::runtime_error("format_fixed: to_chars failed");
    std::string out(buf.data(), ptr);
    // negative zero prints unsigned
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos)
        out.erase(0, 1);
    return out;
}

double round_fixed(double value, int decimals) {
    if (!std::isfinite(value)) return value;
    const std::string text = format_fixed(value, decimals);
    double out = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), out);
    return out;
}

}  // namespace pvperf
