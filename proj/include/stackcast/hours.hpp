// Hourly UTC time axis: timestamps are integer hours since 1970-01-01T00:00Z.
#pragma once

#include <cstdint>
#include <string>

namespace stackcast {

using HourStamp = std::int64_t;

// Howard Hinnant's civil date algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d);
void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d);

HourStamp make_hour(int year, unsigned month, unsigned day, int hour);

// Accepts "YYYY-MM-DD HH:MM[:SS]" and "YYYY-MM-DDTHH:MM[:SS][Z]".
// Minutes and seconds must be zero; throws SchemaMismatch otherwise.
HourStamp parse_hour(const std::string& text);

std::string format_hour(HourStamp h);  // "YYYY-MM-DDTHH:00:00Z"

inline std::int64_t day_of(HourStamp h) {
    return h >= 0 ? h / 24 : -((-h + 23) / 24);
}

inline int hour_of_day(HourStamp h) {
    return static_cast<int>(h - day_of(h) * 24);
}

// 0 = Monday ... 6 = Sunday.
inline int weekday(std::int64_t day) {
    std::int64_t w = (day + 3) % 7;  // day 0 (1970-01-01) was a Thursday
    return static_cast<int>(w < 0 ? w + 7 : w);
}

}  // namespace stackcast
