#include "pvperf/time.hpp"

#include <charconv>
#include <cstdio>

namespace pvperf {
namespace {

using namespace std::chrono;

constexpr std::int64_t kSecondsPerDay = 86400;

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    for (std::size_t i = pos; i < pos + len; ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
    return ec == std::errc{} && ptr == s.data() + pos + len;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view s) {
    int y, mo, d, h, mi, sec = 0;
    if (!read_int(s, 0, 4, y) || s.size() < 16 || s[4] != '-' || !read_int(s, 5, 2, mo) ||
        s[7] != '-' || !read_int(s, 8, 2, d) || s[10] != 'T' || !read_int(s, 11, 2, h) ||
        s[13] != ':' || !read_int(s, 14, 2, mi))
        return std::nullopt;
    std::size_t pos = 16;
    if (pos < s.size() && s[pos] == ':') {
        if (!read_int(s, pos + 1, 2, sec)) return std::nullopt;
        pos += 3;
    }
    if (pos + 6 != s.size() || (s[pos] != '+' && s[pos] != '-') || s[pos + 3] != ':')
        return std::nullopt;
    int oh, om;
    if (!read_int(s, pos + 1, 2, oh) || !read_int(s, pos + 4, 2, om)) return std::nullopt;
    if (h > 23 || mi > 59 || sec > 59 || oh > 14 || om > 59) return std::nullopt;

    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    const int offset = (s[pos] == '-' ? -1 : 1) * (oh * 60 + om);
    const std::int64_t local = sys_days{ymd}.time_since_epoch().count() * kSecondsPerDay +
                               h * 3600 + mi * 60 + sec;
    return Timestamp{local - offset * 60, offset};
}

std::string format_timestamp(const Timestamp& ts) {
    const std::int64_t local = ts.utc_seconds + ts.offset_minutes * 60;
    const std::int64_t days = floor_div(local, kSecondsPerDay);
    const std::int64_t sod = local - days * kSecondsPerDay;
    const year_month_day ymd{sys_days{std::chrono::days{days}}};
    const int off = ts.offset_minutes < 0 ? -ts.offset_minutes : ts.offset_minutes;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d%c%02d:%02d",
                  static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()), static_cast<int>(sod / 3600),
                  static_cast<int>(sod / 60 % 60), static_cast<int>(sod % 60),
                  ts.offset_minutes < 0 ? '-' : '+', off / 60, off % 60);
    return buf;
}

Timestamp make_timestamp(LocalDate date, int hour, int minute, int offset_minutes) {
    const std::int64_t local = sys_days{date}.time_since_epoch().count() * kSecondsPerDay +
                               hour * 3600 + minute * 60;
    return Timestamp{local - offset_minutes * 60, offset_minutes};
}

LocalDate local_date(std::int64_t utc_seconds, int offset_minutes) {
    const std::int64_t local = utc_seconds + offset_minutes * 60;
    return year_month_day{sys_days{std::chrono::days{floor_div(local, kSecondsPerDay)}}};
}

double utc_hour_of_day(std::int64_t utc_seconds) {
    const std::int64_t sod = utc_seconds - floor_div(utc_seconds, kSecondsPerDay) * kSecondsPerDay;
    return static_cast<double>(sod) / 3600.0;
}

int utc_day_of_year(std::int64_t utc_seconds) {
    const year_month_day ymd = local_date(utc_seconds, 0);
    const sys_days jan1{ymd.year() / January / 1};
    return static_cast<int>((sys_days{ymd} - jan1).count()) + 1;
}

bool is_leap_year(int y) noexcept { return year{y}.is_leap(); }

int days_in_month(int y, unsigned m) noexcept {
    return static_cast<int>(static_cast<unsigned>((year{y} / month{m} / last).day()));
}

std::string format_date(LocalDate date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

}  // namespace pvperf
