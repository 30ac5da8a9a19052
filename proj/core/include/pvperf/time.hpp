#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pvperf {

/// An instant with the UTC offset it was written in.
///
/// Ordering and equality look at the instant only; the offset is kept so a
/// parsed file can be written back unchanged.
struct Timestamp {
    std::int64_t utc_seconds = 0;
    int offset_minutes = 0;

    friend bool operator==(const Timestamp& a, const Timestamp& b) noexcept {
        return a.utc_seconds == b.utc_seconds;
    }
    friend std::strong_ordering operator<=>(const Timestamp& a, const Timestamp& b) noexcept {
        return a.utc_seconds <=> b.utc_seconds;
    }

    Timestamp plus_seconds(std::int64_t s) const noexcept { return {utc_seconds + s, offset_minutes}; }
    Timestamp with_offset(int minutes) const noexcept { return {utc_seconds, minutes}; }
};

using LocalDate = std::chrono::year_month_day;

/// Parses `YYYY-MM-DDTHH:MM[:SS](+|-)HH:MM`. A numeric offset is mandatory.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Canonical form `YYYY-MM-DDTHH:MM:SS+HH:MM` in the timestamp's own offset.
std::string format_timestamp(const Timestamp& ts);

Timestamp make_timestamp(LocalDate date, int hour, int minute, int offset_minutes);

/// Civil date of the instant as seen at `offset_minutes`.
LocalDate local_date(std::int64_t utc_seconds, int offset_minutes);

/// Fractional hour of the UTC day in [0, 24).
double utc_hour_of_day(std::int64_t utc_seconds);

/// Day of year (1..366) of the UTC date.
int utc_day_of_year(std::int64_t utc_seconds);

bool is_leap_year(int year) noexcept;
int days_in_month(int year, unsigned month) noexcept;

std::string format_date(LocalDate date);

}  // namespace pvperf
